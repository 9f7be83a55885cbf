#include "parisi/mollify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace parisi {

namespace {

// 40-point Gauss-Legendre rule on [-1,1], Newton iteration on P_n.
struct LegendreRule {
  std::vector<double> nodes, weights;
  LegendreRule() {
    const int n = 40;
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p1 = 1.0, p2 = 0.0;
        for (int j = 0; j < n; ++j) {
          const double p3 = p2;
          p2 = p1;
          p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
        }
        pp = n * (z * p1 - p2) / (z * z - 1.0);
        const double z1 = z;
        z = z1 - p1 / pp;
        if (std::abs(z - z1) < 1e-15) break;
      }
      nodes[i] = -z;
      nodes[n - 1 - i] = z;
      weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
      weights[n - 1 - i] = weights[i];
    }
  }
};

const LegendreRule& gl40() {
  static const LegendreRule rule;
  return rule;
}

template <typename F>
double gl_integrate(const F& f, double a, double b) {
  const auto& r = gl40();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i)
    acc += r.weights[i] * f(mid + half * r.nodes[i]);
  return acc * half;
}

double raw_bump(double u) {
  if (std::abs(u) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - u * u));
}

double bump_norm() {
  static const double c = [] {
    double acc = 0.0;
    const int panels = 16;
    for (int p = 0; p < panels; ++p) {
      const double a = -1.0 + 2.0 * p / panels;
      const double b = -1.0 + 2.0 * (p + 1) / panels;
      acc += gl_integrate(raw_bump, a, b);
    }
    return acc;
  }();
  return c;
}

}  // namespace

double bump_kernel(double u) { return raw_bump(u) / bump_norm(); }

double PiecewiseLinearApprox::operator()(double x) const {
  const double r_d = static_cast<double>(r);
  if (x <= -r_d) return knot_values.front() + left_slope * (x + r_d);
  if (x >= r_d) return knot_values.back() + right_slope * (x - r_d);
  const double delta = 1.0 / (r * static_cast<double>(T_r));
  auto idx = static_cast<std::size_t>((x + r_d) / delta);
  idx = std::min(idx, knots.size() - 2);
  const double frac = (x - knots[idx]) / delta;
  return knot_values[idx] + frac * (knot_values[idx + 1] - knot_values[idx]);
}

double PiecewiseLinearApprox::slope_at(double x) const {
  const double r_d = static_cast<double>(r);
  if (x < -r_d) return left_slope;
  if (x >= r_d) return right_slope;
  const double delta = 1.0 / (r * static_cast<double>(T_r));
  auto idx = static_cast<std::size_t>((x + r_d) / delta);
  idx = std::min(idx, knots.size() - 2);
  return (knot_values[idx + 1] - knot_values[idx]) / delta;
}

PiecewiseLinearApprox build_piecewise(const InitialCondition& phi, int r,
                                      int T_floor) {
  if (r < 1) throw std::invalid_argument("build_piecewise: r must be >= 1");

  // T_r: smallest integer dominating sup |phi'| on [-r, r]; convexity is a
  // precondition, checked on the same sample.
  double d1_max = 0.0;
  const int n_samples = 2 * r * 1000 + 1;
  for (int i = 0; i < n_samples; ++i) {
    const double x = -r + 2.0 * r * i / (n_samples - 1);
    d1_max = std::max(d1_max, std::abs(phi.deriv1(x)));
    if (phi.deriv2(x) < -1e-9)
      throw std::invalid_argument("build_piecewise: phi is not convex (phi'' < 0 at x=" +
                                  std::to_string(x) + ")");
  }
  const int T = std::max({1, T_floor, static_cast<int>(std::ceil(d1_max - 1e-12))});

  PiecewiseLinearApprox s;
  s.r = r;
  s.T_r = T;
  s.eps_r = 1.0 / (2.0 * r * T);
  s.source_tag = phi.class_tag;
  s.source_name = phi.name;
  s.left_slope = phi.deriv1(-static_cast<double>(r));
  s.right_slope = phi.deriv1(static_cast<double>(r));

  const int np = r * r * T;  // p runs over [-np, np]
  const double shift = 2.0 / r;
  s.knots.reserve(2 * np + 1);
  s.knot_values.reserve(2 * np + 1);
  for (int p = -np; p <= np; ++p) {
    const double q = static_cast<double>(p) / (r * static_cast<double>(T));
    s.knots.push_back(q);
    s.knot_values.push_back(phi.value(q) - shift);
  }
  return s;
}

InitialCondition mollify(const PiecewiseLinearApprox& s) {
  const double eps = s.eps_r;
  const double r_d = static_cast<double>(s.r);
  const double M = r_d + eps;
  const double norm = bump_norm();

  // Segment slopes including the two tail lines, and the slope jumps at the
  // knots (the distributional second derivative of s).
  const double delta = 1.0 / (s.r * static_cast<double>(s.T_r));
  std::vector<double> seg_slopes;  // size knots-1
  seg_slopes.reserve(s.knots.size() - 1);
  for (std::size_t i = 0; i + 1 < s.knots.size(); ++i)
    seg_slopes.push_back((s.knot_values[i + 1] - s.knot_values[i]) / delta);
  std::vector<double> jump(s.knots.size());
  jump.front() = seg_slopes.front() - s.left_slope;
  jump.back() = s.right_slope - seg_slopes.back();
  for (std::size_t i = 1; i + 1 < s.knots.size(); ++i)
    jump[i] = seg_slopes[i] - seg_slopes[i - 1];

  const PiecewiseLinearApprox sc = s;  // captured by value below

  auto window_breaks = [sc, eps](double x) {
    std::vector<double> br{-eps, eps};
    for (double k : sc.knots) {
      const double u = x - k;
      if (u > -eps && u < eps) br.push_back(u);
    }
    std::sort(br.begin(), br.end());
    return br;
  };

  InitialCondition ic;
  ic.name = "mollified(" + s.source_name + ",r=" + std::to_string(s.r) + ")";
  ic.class_tag = s.source_tag;

  ic.value = [sc, eps, norm, M, r_d, window_breaks](double x) {
    if (x >= M) return sc.knot_values.back() + sc.right_slope * (x - r_d);
    if (x <= -M) return sc.knot_values.front() + sc.left_slope * (x + r_d);
    const auto br = window_breaks(x);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < br.size(); ++i)
      acc += gl_integrate(
          [&](double u) { return raw_bump(u / eps) / (eps * norm) * sc(x - u); },
          br[i], br[i + 1]);
    return acc;
  };

  ic.deriv1 = [sc, eps, norm, M, window_breaks](double x) {
    if (x >= M) return sc.right_slope;
    if (x <= -M) return sc.left_slope;
    const auto br = window_breaks(x);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < br.size(); ++i) {
      const double mid = 0.5 * (br[i] + br[i + 1]);
      const double slope = sc.slope_at(x - mid);
      acc += slope * gl_integrate(
                         [&](double u) { return raw_bump(u / eps) / (eps * norm); },
                         br[i], br[i + 1]);
    }
    return acc;
  };

  const std::vector<double> knots = s.knots;
  ic.deriv2 = [knots, jump, eps, norm, M](double x) {
    if (std::abs(x) >= M) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < knots.size(); ++i) {
      const double u = x - knots[i];
      if (u > -eps && u < eps)
        acc += jump[i] * raw_bump(u / eps) / (eps * norm);
    }
    return acc;
  };

  double d1 = std::max(std::abs(s.left_slope), std::abs(s.right_slope));
  for (double sl : seg_slopes) d1 = std::max(d1, std::abs(sl));
  ic.d1_bound = d1;
  double d2 = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    const double x = -M + 2.0 * M * i / 4000.0;
    d2 = std::max(d2, std::abs(ic.deriv2(x)));
  }
  ic.d2_bound = d2;

  ic.tail = TailData{M, s.right_slope, s.knot_values.back() - s.right_slope * r_d,
                     s.left_slope, s.knot_values.front() + s.left_slope * r_d};
  return ic;
}

std::pair<InitialCondition, InitialCondition> mollify_pair(
    const InitialCondition& phi1, const InitialCondition& phi2, int r) {
  const int T = std::max(build_piecewise(phi1, r).T_r,
                         build_piecewise(phi2, r).T_r);
  return {mollify(build_piecewise(phi1, r, T)),
          mollify(build_piecewise(phi2, r, T))};
}

}  // namespace parisi
