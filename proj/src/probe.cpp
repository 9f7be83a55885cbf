#include "parisi/probe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace parisi {

namespace {
constexpr double kSqrt2 = 1.4142135623730950488;
}

namespace {

void check_ordering(const StepParam& a1, const StepParam& a2) {
  const auto [r1, r2] = refine_pair(a1, a2);
  for (std::size_t j = 0; j < r1.num_intervals(); ++j) {
    if (r1.values()[j] > r2.values()[j] + 1e-12) {
      std::ostringstream os;
      os << "one_sided_scan: a1 > a2 on the interval ending at t="
         << r1.interval_end(j);
      throw std::invalid_argument(os.str());
    }
  }
}

ConvexityReport gap_scan(const InitialCondition& phi1,
                         const InitialCondition& phi2, const StepParam& a1,
                         const StepParam& a2, const std::vector<double>& alphas,
                         const std::vector<double>& xs, const SolverConfig& cfg,
                         const HermiteRule& rule) {
  const SolveTrace tr1 = solve(phi1, a1, cfg, rule);
  const SolveTrace tr2 = solve(phi2, a2, cfg, rule);

  ConvexityReport report;
  report.min_gap = std::numeric_limits<double>::infinity();
  for (double alpha : alphas) {
    const InitialCondition phi_mix = mix_ic(alpha, phi1, phi2);
    const StepParam a_mix = convex_combination(alpha, a1, a2);
    const SolveTrace tr_mix = solve(phi_mix, a_mix, cfg, rule);
    for (double x : xs) {
      const double rhs = alpha * tr1.final().eval(x) +
                         (1.0 - alpha) * tr2.final().eval(x);
      const double gap = rhs - tr_mix.final().eval(x);
      report.records.push_back({alpha, x, gap});
      report.min_gap = std::min(report.min_gap, gap);
    }
  }
  report.max_violation = std::max(0.0, -report.min_gap);
  return report;
}

}  // namespace

ConvexityReport one_sided_scan(const InitialCondition& phi1,
                               const InitialCondition& phi2,
                               const StepParam& a1, const StepParam& a2,
                               const std::vector<double>& alphas,
                               const std::vector<double>& xs,
                               const SolverConfig& cfg,
                               const HermiteRule& rule) {
  check_ordering(a1, a2);
  if (phi1.name != phi2.name) {
    const PairVerdict v = validate_pair(phi1, phi2);
    if (v.cls == PairClass::Neither)
      throw std::invalid_argument(
          "one_sided_scan: (phi1, phi2) is not an admissible ordered pair");
  }
  ConvexityReport report = gap_scan(phi1, phi2, a1, a2, alphas, xs, cfg, rule);
  report.description = "one_sided_scan " + phi1.name + "/" + phi2.name;
  return report;
}

ConvexityReport conjecture_scan(const InitialCondition& phi,
                                const StepParam& a1, const StepParam& a2,
                                const std::vector<double>& alphas,
                                const std::vector<double>& xs,
                                const SolverConfig& cfg,
                                const HermiteRule& rule, double tolerance) {
  ConvexityReport report = gap_scan(phi, phi, a1, a2, alphas, xs, cfg, rule);
  report.description = "conjecture_scan " + phi.name;

  // Violations are re-checked at finer resolution before being reported;
  // discretization error is the dominant source of false positives.
  std::vector<GapRecord> suspects;
  for (const GapRecord& r : report.records)
    if (r.gap < -tolerance) suspects.push_back(r);
  if (!suspects.empty()) {
    const SolverConfig fine = cfg.refined();
    const HermiteRule fine_rule = HermiteRule::make(fine.quad_order);
    const SolveTrace tr1 = solve(phi, a1, fine, fine_rule);
    const SolveTrace tr2 = solve(phi, a2, fine, fine_rule);
    for (const GapRecord& r : suspects) {
      const StepParam a_mix = convex_combination(r.alpha, a1, a2);
      const SolveTrace tr_mix = solve(phi, a_mix, fine, fine_rule);
      const double gap = r.alpha * tr1.final().eval(r.x) +
                         (1.0 - r.alpha) * tr2.final().eval(r.x) -
                         tr_mix.final().eval(r.x);
      if (gap < -tolerance) report.candidates.push_back({r.alpha, r.x, gap});
    }
  }
  return report;
}

Example1Result example1_curve(const InitialCondition& phi, double x,
                              const std::vector<double>& m_grid,
                              const HermiteRule& rule) {
  Example1Result result;
  result.curve.reserve(m_grid.size());
  for (double m : m_grid)
    result.curve.push_back({m, constant_m_solution(phi, m, x, 1.0, rule)});

  result.min_second_difference = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < result.curve.size(); ++i) {
    const double d2 = result.curve[i + 1].value - 2.0 * result.curve[i].value +
                      result.curve[i - 1].value;
    result.min_second_difference = std::min(result.min_second_difference, d2);
  }
  result.convex = result.min_second_difference >= -1e-8;
  return result;
}

std::function<double(double, double)> make_gibbs_weight(const HermiteRule& rule,
                                                        const RealFn& psi,
                                                        double sigma) {
  // Normalization depends on the base point x; cache is per call site.
  return [&rule, psi, sigma](double x, double y) {
    const double z = gauss_expectation(
        rule, [&](double u) { return std::exp(psi(u)); }, x, sigma);
    return std::exp(psi(y)) / z;
  };
}

double covariance_check(const HermiteRule& rule, const RealFn& f1,
                        const RealFn& f2,
                        const std::function<double(double, double)>& W,
                        double x, double sigma, CovarianceVariant variant) {
  // Sampled precondition checks on the integration window.
  const double lo = x - 6.0 * sigma, hi = x + 6.0 * sigma;
  const int n_check = 201;
  auto deriv = [&](const RealFn& f, double u) {
    const double d = 1e-5;
    return (f(u + d) - f(u - d)) / (2.0 * d);
  };
  if (variant == CovarianceVariant::monotone) {
    for (int i = 0; i < n_check; ++i) {
      const double u = lo + (hi - lo) * i / (n_check - 1);
      if (deriv(f1, u) < -1e-8 || deriv(f2, u) < -1e-8)
        throw std::invalid_argument(
            "covariance_check: monotone variant requires nondecreasing f1, f2");
    }
  } else {
    if (x < 0.0)
      throw std::invalid_argument("covariance_check: even_odd variant requires x >= 0");
    const double span = std::max(std::abs(lo), std::abs(hi));
    for (int i = 0; i < n_check; ++i) {
      const double u = span * i / (n_check - 1);
      const bool f1_even = std::abs(f1(u) - f1(-u)) <= 1e-8 * std::max(1.0, std::abs(f1(u)));
      const bool f1_odd = std::abs(f1(u) + f1(-u)) <= 1e-8 * std::max(1.0, std::abs(f1(u)));
      const bool f2_even = std::abs(f2(u) - f2(-u)) <= 1e-8 * std::max(1.0, std::abs(f2(u)));
      const bool f2_odd = std::abs(f2(u) + f2(-u)) <= 1e-8 * std::max(1.0, std::abs(f2(u)));
      if (!((f1_even && f2_odd) || (f1_odd && f2_even)))
        throw std::invalid_argument(
            "covariance_check: even_odd variant requires one even and one odd function");
      if (deriv(f1, u) < -1e-8 || deriv(f2, u) < -1e-8)
        throw std::invalid_argument(
            "covariance_check: even_odd variant requires nonnegative derivatives on [0,inf)");
      if (std::abs(W(x, u) - W(x, -u)) >
          1e-8 * std::max(1.0, std::abs(W(x, u))))
        throw std::invalid_argument(
            "covariance_check: even_odd variant requires W even in y");
    }
  }

  const double norm = gauss_expectation(
      rule, [&](double u) { return W(x, u); }, x, sigma);
  if (std::abs(norm - 1.0) > 1e-9)
    throw std::runtime_error("covariance_check: weight not normalized, E W = " +
                             std::to_string(norm));

  const double e12 = gauss_expectation(
      rule, [&](double u) { return f1(u) * f2(u) * W(x, u); }, x, sigma);
  const double e1 = gauss_expectation(
      rule, [&](double u) { return f1(u) * W(x, u); }, x, sigma);
  const double e2 = gauss_expectation(
      rule, [&](double u) { return f2(u) * W(x, u); }, x, sigma);
  return e12 - e1 * e2;
}

double odd_comparison_check(const HermiteRule& rule, const RealFn& f1,
                            const RealFn& f2, const std::vector<double>& xs,
                            double sigma) {
  const int n_check = 201;
  const double span = 6.0 * sigma + 6.0;
  for (int i = 0; i < n_check; ++i) {
    const double u = span * i / (n_check - 1);
    if (std::abs(f1(u) + f1(-u)) > 1e-10 * std::max(1.0, std::abs(f1(u))) ||
        std::abs(f2(u) + f2(-u)) > 1e-10 * std::max(1.0, std::abs(f2(u))))
      throw std::invalid_argument("odd_comparison_check: f1, f2 must be odd");
    if (f1(u) > f2(u) + 1e-10)
      throw std::invalid_argument(
          "odd_comparison_check: f1 <= f2 must hold on [0,inf)");
  }
  double min_gap = std::numeric_limits<double>::infinity();
  for (double x : xs) {
    if (x < 0.0)
      throw std::invalid_argument("odd_comparison_check: x grid must be >= 0");
    const double gap = gauss_expectation(rule, f2, x, sigma) -
                       gauss_expectation(rule, f1, x, sigma);
    min_gap = std::min(min_gap, gap);
  }
  return min_gap;
}

MaxPrincipleReport max_principle_scan(const InitialCondition& phi1,
                                      const InitialCondition& phi2, double m1,
                                      double m2, double alpha,
                                      const MaxPrincipleConfig& cfg,
                                      const HermiteRule& rule) {
  if (!(m1 > 0.0 && m1 <= m2 && m2 <= 1.0))
    throw std::invalid_argument("max_principle_scan: need 0 < m1 <= m2 <= 1");
  if (phi1.name != phi2.name) {
    const PairVerdict v = validate_pair(phi1, phi2);
    if (v.cls == PairClass::Neither)
      throw std::invalid_argument("max_principle_scan: inadmissible pair");
  }
  const double n = alpha * m1 + (1.0 - alpha) * m2;
  const InitialCondition phi0 = mix_ic(alpha, phi1, phi2);

  MaxPrincipleReport report;
  report.c1 = alpha * (n * alpha - m1);
  report.c2 = (1.0 - alpha) * (n * (1.0 - alpha) - m2);
  report.max_F = -std::numeric_limits<double>::infinity();

  for (int it = 0; it < cfg.nt; ++it) {
    const double t = cfg.nt == 1 ? 1.0 : static_cast<double>(it) / (cfg.nt - 1);
    for (int ix = 0; ix < cfg.nx; ++ix) {
      const double x =
          cfg.x_min + (cfg.x_max - cfg.x_min) * ix / (cfg.nx - 1.0);

      const double F0 = constant_m_solution(phi0, n, x, t, rule);
      const double F1 = constant_m_solution(phi1, m1, x, t, rule);
      const double F2 = constant_m_solution(phi2, m2, x, t, rule);
      const double F = F0 - alpha * F1 - (1.0 - alpha) * F2;
      report.max_F = std::max(report.max_F, F);

      const double d0 = dx_constant_m(phi0, n, x, t, rule);
      const double d1 = dx_constant_m(phi1, m1, x, t, rule);
      const double d2 = dx_constant_m(phi2, m2, x, t, rule);
      const double dxF = d0 - alpha * d1 - (1.0 - alpha) * d2;

      const double s0 = dxx_constant_m(phi0, n, x, t, rule);
      const double s1 = dxx_constant_m(phi1, m1, x, t, rule);
      const double s2 = dxx_constant_m(phi2, m2, x, t, rule);
      const double dxxF = s0 - alpha * s1 - (1.0 - alpha) * s2;

      if (!(std::abs(dxF) <= cfg.eps_grad && dxxF <= cfg.eps_sign &&
            F >= -cfg.eps_sign))
        continue;

      // dtF from the PDE right-hand side of each component.
      const double dtF = 0.5 * (s0 + n * d0 * d0) -
                         alpha * 0.5 * (s1 + m1 * d1 * d1) -
                         (1.0 - alpha) * 0.5 * (s2 + m2 * d2 * d2);
      const double delta1 = dxxF;
      const double delta2 =
          (d1 - d2) * (report.c1 * d1 - report.c2 * d2);

      report.near_critical.push_back({x, t, F, dxF, dxxF, dtF, delta1, delta2});
      if (dtF > cfg.eps_t || delta2 > cfg.eps_sign) ++report.violations;
    }
  }
  return report;
}

double asymptotic_check(const InitialCondition& phi, double m,
                        const std::vector<double>& t_grid,
                        const std::vector<double>& x_probes,
                        const HermiteRule& rule) {
  if (!phi.tail)
    throw std::invalid_argument("asymptotic_check: phi must declare tail data");
  double worst = 0.0;
  for (double x : x_probes) {
    const Tail tail = x >= 0.0
                          ? Tail{phi.tail->A_right, phi.tail->B_right}
                          : Tail{phi.tail->A_left, phi.tail->B_left};
    for (double t : t_grid) {
      const double log_lhs = constant_m_solution(phi, m, x, t, rule);
      const double log_model = tail.eval(x) + tail.A * tail.A * m * t / 2.0;
      const double O = std::exp(log_lhs - log_model);
      worst = std::max(worst, std::abs(O - 1.0));
    }
  }
  return worst;
}

double mixture_inequality_gap(const InitialCondition& phi1,
                              const InitialCondition& phi2, double m1,
                              double m2, double alpha, double x, double t,
                              const HermiteRule& rule) {
  const double n = alpha * m1 + (1.0 - alpha) * m2;
  const InitialCondition phi0 = mix_ic(alpha, phi1, phi2);
  return alpha * constant_m_solution(phi1, m1, x, t, rule) +
         (1.0 - alpha) * constant_m_solution(phi2, m2, x, t, rule) -
         constant_m_solution(phi0, n, x, t, rule);
}

bool class_preservation_check(const InitialCondition& phi1,
                              const InitialCondition& phi2, double m1,
                              double m2, double t, PairClass cls,
                              const HermiteRule& rule, double tolerance) {
  const int n_samples = 81;
  const double range = 4.0;
  for (int i = 0; i < n_samples; ++i) {
    const double x = -range + 2.0 * range * i / (n_samples - 1);
    const double F1 = constant_m_solution(phi1, m1, x, t, rule);
    const double F2 = constant_m_solution(phi2, m2, x, t, rule);
    if (F1 > F2 + tolerance) return false;

    const double s1 = dxx_constant_m(phi1, m1, x, t, rule);
    const double s2 = dxx_constant_m(phi2, m2, x, t, rule);
    if (s1 < -tolerance || s2 < -tolerance) return false;

    const double d1 = dx_constant_m(phi1, m1, x, t, rule);
    const double d2 = dx_constant_m(phi2, m2, x, t, rule);
    if (cls == PairClass::F1 || cls == PairClass::Both) {
      // Even-convex pairs: derivative ordering on x >= 0, reversed on x <= 0.
      if (x >= 0.0 && d1 > d2 + tolerance) return false;
      if (x <= 0.0 && d2 > d1 + tolerance) return false;
    }
    if (cls == PairClass::F2) {
      // Nondecreasing-convex pairs: global derivative ordering and
      // monotonicity.
      if (d1 > d2 + tolerance) return false;
      if (d1 < -tolerance || d2 < -tolerance) return false;
    }
  }
  return true;
}

}  // namespace parisi
