#pragma once

#include <span>
#include <utility>
#include <vector>

#include "parisi/grid_function.hpp"
#include "parisi/initial.hpp"
#include "parisi/quad.hpp"
#include "parisi/step_param.hpp"

namespace parisi {

struct SolverConfig {
  double x_min = -16.0;
  double x_max = 16.0;
  double h = 0.02;
  int quad_order = 60;
  bool parallel = true;
  double tail_splice_tol = 0.01;

  int n_points() const;
  SolverConfig refined() const;  // halved h, doubled quadrature order
};

/// Snapshots of F(., t) at t = 0, the breakpoints of a, and the final time.
struct SolveTrace {
  StepParam a = StepParam::constant(0.0);
  std::vector<GridFunction> snapshots;

  const GridFunction& final() const { return snapshots.back(); }
};

/// One Gaussian-smoothing step of length dt with exponent m applied to the
/// previous snapshot (Hopf-Cole form of the PDE on a constant-a interval).
GridFunction smooth_step(const GridFunction& prev, double m, double dt,
                         const HermiteRule& rule, bool parallel);
GridFunction smooth_step_serial(const GridFunction& prev, double m, double dt,
                                const HermiteRule& rule);

SolveTrace solve(const InitialCondition& phi, const StepParam& a,
                 const SolverConfig& cfg, const HermiteRule& rule,
                 double t_final = 1.0);

/// (1/m) log E exp m phi(x + sqrt(t) z), the constant-a closed form.
double constant_m_solution(const InitialCondition& phi, double m, double x,
                           double t, const HermiteRule& rule);

/// Gibbs-weighted derivative formulas for the constant-m solution.
double dx_constant_m(const InitialCondition& phi, double m, double x, double t,
                     const HermiteRule& rule);
double dxx_constant_m(const InitialCondition& phi, double m, double x, double t,
                      const HermiteRule& rule);

/// d/dx of the trace's final snapshot (exact nodal derivatives are carried
/// through every smoothing step).
double trace_dx(const SolveTrace& trace, double x);
double trace_dxx(const SolveTrace& trace, double x);

/// Max absolute PDE residual dF/dt - (F_xx + a(t) F_x^2)/2 at the samples,
/// with five-point differences in x on the grid and central differences in t
/// by re-solving at shifted times.
double pde_residual(const InitialCondition& phi, const StepParam& a,
                    const SolverConfig& cfg, const HermiteRule& rule,
                    std::span<const std::pair<double, double>> samples_xt);

}  // namespace parisi
