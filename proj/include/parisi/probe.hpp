#pragma once

#include <string>
#include <vector>

#include "parisi/functional.hpp"
#include "parisi/initial.hpp"
#include "parisi/solver.hpp"
#include "parisi/step_param.hpp"

namespace parisi {

struct GapRecord {
  double alpha = 0.0;
  double x = 0.0;
  double gap = 0.0;  // alpha P1 + (1-alpha) P2 - P(mixture)
};

struct ConvexityReport {
  std::vector<GapRecord> records;
  double min_gap = 0.0;
  double max_violation = 0.0;  // magnitude of the most negative gap, 0 if none
  std::vector<GapRecord> candidates;  // violations surviving refinement
  std::string description;
};

/// Theorem-1 style scan: requires a1 <= a2 pointwise; the left side uses the
/// mixed initial condition alpha*phi1 + (1-alpha)*phi2.
ConvexityReport one_sided_scan(const InitialCondition& phi1,
                               const InitialCondition& phi2,
                               const StepParam& a1, const StepParam& a2,
                               const std::vector<double>& alphas,
                               const std::vector<double>& xs,
                               const SolverConfig& cfg, const HermiteRule& rule);

/// Exploratory scan of the open conjecture: a1, a2 may cross. Any gap below
/// -tolerance is re-checked with halved h and doubled quadrature order and
/// only recorded as a candidate if it survives.
ConvexityReport conjecture_scan(const InitialCondition& phi, const StepParam& a1,
                                const StepParam& a2,
                                const std::vector<double>& alphas,
                                const std::vector<double>& xs,
                                const SolverConfig& cfg, const HermiteRule& rule,
                                double tolerance = 1e-7);

struct CurvePoint {
  double m = 0.0;
  double value = 0.0;
};

struct Example1Result {
  std::vector<CurvePoint> curve;
  double min_second_difference = 0.0;
  bool convex = false;  // all second differences >= -1e-8
};

/// m -> (1/m) log E exp m phi(x + z) on the given m grid.
Example1Result example1_curve(const InitialCondition& phi, double x,
                              const std::vector<double>& m_grid,
                              const HermiteRule& rule);

enum class CovarianceVariant { monotone, even_odd };

/// E f1 f2 W - E f1 W * E f2 W where W(x, x+g) is a caller-supplied weight
/// normalized so that E W = 1 (checked to 1e-9).
double covariance_check(const HermiteRule& rule, const RealFn& f1,
                        const RealFn& f2,
                        const std::function<double(double, double)>& W,
                        double x, double sigma, CovarianceVariant variant);

/// Normalized Gibbs weight y -> exp(psi(y)) / E exp(psi(x+g)).
std::function<double(double, double)> make_gibbs_weight(const HermiteRule& rule,
                                                        const RealFn& psi,
                                                        double sigma);

/// min over the x grid (x >= 0) of E f2(x+g) - E f1(x+g) for odd f1 <= f2 on
/// [0, inf).
double odd_comparison_check(const HermiteRule& rule, const RealFn& f1,
                            const RealFn& f2, const std::vector<double>& xs,
                            double sigma);

struct MaxPrincipleRecord {
  double x = 0.0, t = 0.0;
  double F = 0.0, dxF = 0.0, dxxF = 0.0, dtF = 0.0;
  double delta1 = 0.0, delta2 = 0.0;
};

struct MaxPrincipleConfig {
  double x_min = -6.0, x_max = 6.0;
  int nx = 121;
  int nt = 11;
  double eps_grad = 1e-3;  // |dxF| band around critical points
  double eps_sign = 1e-6;
  double eps_t = 1e-5;
};

struct MaxPrincipleReport {
  double c1 = 0.0, c2 = 0.0;
  double max_F = 0.0;  // over the whole grid
  std::vector<MaxPrincipleRecord> near_critical;
  int violations = 0;  // dtF > eps_t or delta2 > eps_sign at recorded points
};

/// Scans F = F0 - alpha F1 - (1-alpha) F2 built from constant-m solutions
/// (n = alpha m1 + (1-alpha) m2, phi = alpha phi1 + (1-alpha) phi2); dtF is
/// computed from the PDE right-hand side via the derivative formulas.
MaxPrincipleReport max_principle_scan(const InitialCondition& phi1,
                                      const InitialCondition& phi2, double m1,
                                      double m2, double alpha,
                                      const MaxPrincipleConfig& cfg,
                                      const HermiteRule& rule);

/// Max |O(x,t) - 1| over the probe set, where O is the ratio of the exact
/// (E exp m phi)^{1/m} to its linear-tail model on the matching side.
double asymptotic_check(const InitialCondition& phi, double m,
                        const std::vector<double>& t_grid,
                        const std::vector<double>& x_probes,
                        const HermiteRule& rule);

/// F_{phi,n}(x,t) <= alpha F1 + (1-alpha) F2 gap at one point (>= 0 by the
/// mixture inequality).
double mixture_inequality_gap(const InitialCondition& phi1,
                              const InitialCondition& phi2, double m1,
                              double m2, double alpha, double x, double t,
                              const HermiteRule& rule);

/// Checks value ordering, convexity and the class-appropriate derivative
/// ordering of the pair (F_{phi1,m1}(.,t), F_{phi2,m2}(.,t)) on sampled x.
bool class_preservation_check(const InitialCondition& phi1,
                              const InitialCondition& phi2, double m1,
                              double m2, double t, PairClass cls,
                              const HermiteRule& rule, double tolerance = 1e-7);

}  // namespace parisi
