#include "parisi/quad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace parisi {

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kSqrt2 = 1.4142135623730950488;
}  // namespace

// Golub-Welsch: nodes are the eigenvalues of the symmetric tridiagonal Jacobi
// matrix (zero diagonal, off-diagonals sqrt(j/2)), weights come from the first
// eigenvector components. Implicit-shift QL, tracking only the first row of
// the rotation product; robust at high order where Newton root-walking is not.
HermiteRule HermiteRule::make(int order) {
  if (order < 1) throw std::invalid_argument("HermiteRule: order must be >= 1");

  std::vector<double> d(order, 0.0), e(order, 0.0), q(order, 0.0);
  for (int j = 1; j < order; ++j) e[j - 1] = std::sqrt(j / 2.0);
  q[0] = 1.0;

  for (int l = 0; l < order; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < order - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-16 * dd) break;
      }
      if (m == l) break;
      if (++iter > 60)
        throw std::runtime_error("HermiteRule: eigenvalue iteration stalled");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (int i = m - 1; i >= l; --i) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        const double qi = q[i], qi1 = q[i + 1];
        q[i + 1] = s * qi + c * qi1;
        q[i] = c * qi - s * qi1;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }

  std::vector<int> idx(order);
  for (int i = 0; i < order; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return d[a] < d[b]; });

  HermiteRule rule;
  rule.order = order;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    rule.nodes[i] = d[idx[i]];
    rule.weights[i] = kSqrtPi * q[idx[i]] * q[idx[i]];
  }
  // the matrix is symmetric under sign flip; make the output exactly so
  for (int i = 0; i < order / 2; ++i) {
    const int j = order - 1 - i;
    const double z = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    rule.nodes[j] = z;
    rule.nodes[i] = -z;
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.weights[i] = rule.weights[j] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

namespace {

[[noreturn]] void throw_nonfinite(double arg, double value) {
  std::ostringstream os;
  os << "gauss_expectation: non-finite integrand value " << value
     << " at node argument " << arg;
  throw std::runtime_error(os.str());
}

}  // namespace

double gauss_expectation(const HermiteRule& rule, const RealFn& f, double x,
                         double sigma) {
  if (sigma < 0.0) throw std::invalid_argument("gauss_expectation: sigma < 0");
  if (sigma == 0.0) {
    const double v = f(x);
    if (!std::isfinite(v)) throw_nonfinite(x, v);
    return v;
  }
  const double c = kSqrt2 * sigma;
  double acc = 0.0;
  for (int i = 0; i < rule.order; ++i) {
    const double u = x + c * rule.nodes[i];
    const double v = f(u);
    if (!std::isfinite(v)) throw_nonfinite(u, v);
    acc += rule.weights[i] * v;
  }
  return acc / kSqrtPi;
}

double log_moment(const HermiteRule& rule, const RealFn& f, double x,
                  double sigma, double m) {
  if (m < 0.0 || m > 1.0) throw std::invalid_argument("log_moment: m outside [0,1]");
  if (sigma < 0.0) throw std::invalid_argument("log_moment: sigma < 0");
  if (m == 0.0) return gauss_expectation(rule, f, x, sigma);
  if (sigma == 0.0) {
    const double v = f(x);
    if (!std::isfinite(v)) throw_nonfinite(x, v);
    return v;
  }
  const double c = kSqrt2 * sigma;
  std::vector<double> g(rule.order);
  double gmax = -std::numeric_limits<double>::infinity();
  double gmin = std::numeric_limits<double>::infinity();
  double mean = 0.0;
  for (int i = 0; i < rule.order; ++i) {
    const double u = x + c * rule.nodes[i];
    const double v = f(u);
    if (!std::isfinite(v)) throw_nonfinite(u, v);
    g[i] = m * v;
    gmax = std::max(gmax, g[i]);
    gmin = std::min(gmin, g[i]);
    mean += rule.weights[i] * g[i];
  }
  mean /= kSqrtPi;
  if (gmax - gmin <= 1.0) {
    // Small exponent spread (in particular small m): dividing log(S) by m
    // amplifies its rounding error, so accumulate S - 1 with expm1 instead.
    double acc = 0.0;
    for (int i = 0; i < rule.order; ++i)
      acc += rule.weights[i] * std::expm1(g[i] - mean);
    return (mean + std::log1p(acc / kSqrtPi)) / m;
  }
  double acc = 0.0;
  for (int i = 0; i < rule.order; ++i)
    acc += rule.weights[i] * std::exp(g[i] - gmax);
  return (gmax + std::log(acc / kSqrtPi)) / m;
}

}  // namespace parisi
