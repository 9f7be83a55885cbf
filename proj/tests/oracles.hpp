// Independent numerical oracles used by the tests. Everything here is
// deliberately implemented with generic techniques (adaptive Simpson panels,
// Riemann sums, finite differences) rather than the library's own quadrature
// pipeline, so agreement is meaningful evidence.

#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracles {

using Fn = std::function<double(double)>;

inline double simpson(const Fn& f, double a, double b, double fa, double fm,
                      double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_step(const Fn& f, double a, double b, double fa,
                            double fm, double fb, double whole, double tol,
                            int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(f, a, m, fa, flm, fm);
  const double right = simpson(f, m, b, fm, frm, fb);
  if (depth <= 0) return left + right;
  if (std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_step(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         adaptive_step(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

/// Adaptive Simpson integral of f over [a, b].
inline double integrate(const Fn& f, double a, double b, double tol = 1e-12) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  return adaptive_step(f, a, b, fa, fm, fb, simpson(f, a, b, fa, fm, fb), tol,
                       40);
}

inline double normal_pdf(double s) {
  return std::exp(-0.5 * s * s) / std::sqrt(2.0 * M_PI);
}

/// E f(x + sigma z), z standard Gaussian, truncated at 12 sigma. Integrated
/// in unit panels: a single adaptive pass can terminate early when the
/// integrand vanishes at the coarse sample points.
inline double gauss_expectation(const Fn& f, double x, double sigma,
                                double tol = 1e-12) {
  if (sigma == 0.0) return f(x);
  const Fn g = [&](double s) { return f(x + sigma * s) * normal_pdf(s); };
  double acc = 0.0;
  for (int p = -12; p < 12; ++p) acc += integrate(g, p, p + 1, tol / 24.0);
  return acc;
}

/// (1/m) log E exp(m f(x + sigma z)), m = 0 meaning the plain expectation.
inline double log_moment(const Fn& f, double x, double sigma, double m,
                         double tol = 1e-12) {
  if (m == 0.0) return gauss_expectation(f, x, sigma, tol);
  const double shift = f(x);  // keeps the integrand O(1) near the mode
  const Fn g = [&](double u) { return std::exp(m * (f(u) - shift)); };
  const double e = gauss_expectation(g, x, sigma, tol);
  return shift + std::log(e) / m;
}

/// Terminal value of the two-interval recursion with breakpoint t1 and
/// exponents m0 on (0, t1], m1 on (t1, 1], evaluated at x. Fully nested
/// adaptive integration, no grid, no shared quadrature code.
inline double nested_two_step(const Fn& phi, double m0, double m1, double t1,
                              double x, double tol = 1e-11) {
  const Fn inner = [&](double y) {
    return log_moment(phi, y, std::sqrt(t1), m0, tol);
  };
  return log_moment(inner, x, std::sqrt(1.0 - t1), m1, tol * 10);
}

/// Riemann midpoint sum of f over [0, 1].
inline double riemann(const Fn& f, int n) {
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += f((i + 0.5) / n);
  return acc / n;
}

inline double central_diff(const Fn& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double second_diff(const Fn& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

/// E f(x + g) for g centered Gaussian with variance sigma^2, written through
/// the sinh kernel: 2 int_0^inf f(u) rho(u, x) sinh(u x / sigma^2) du with
/// rho(u, x) = exp(-(u^2 + x^2)/(2 sigma^2)) / (sigma sqrt(2 pi)). Valid for
/// odd f; used to cross-check the comparison arguments.
inline double sinh_representation(const Fn& f, double x, double sigma,
                                  double cutoff = 40.0) {
  const double s2 = sigma * sigma;
  const Fn g = [&](double u) {
    const double rho =
        std::exp(-(u * u + x * x) / (2.0 * s2)) / (sigma * std::sqrt(2.0 * M_PI));
    return f(u) * rho * std::sinh(u * x / s2);
  };
  // Unit panels: the mass sits near u = |x| and a single adaptive pass over
  // the whole range can mistake it for zero.
  double acc = 0.0;
  for (double a = 0.0; a < cutoff; a += 1.0)
    acc += integrate(g, a, std::min(a + 1.0, cutoff), 1e-14);
  return 2.0 * acc;
}

}  // namespace oracles
