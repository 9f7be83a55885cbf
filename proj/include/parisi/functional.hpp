#pragma once

#include <cstdint>
#include <vector>

#include "parisi/initial.hpp"
#include "parisi/solver.hpp"
#include "parisi/step_param.hpp"

namespace parisi {

struct ParisiProblem {
  double beta = 1.0;    // inverse temperature, > 0
  double h = 0.0;       // external field
  InitialCondition phi; // initial condition of the PDE
  int k = 1;            // number of breakpoints in the search space
};

struct OptimizerConfig {
  int starts = 8;
  int max_iter = 2000;
  double simplex_tol = 1e-7;
  std::uint64_t seed = 0;
  bool constrain_to_M = true;  // sort values nonincreasing
};

struct Incumbent {
  double value = 0.0;
  StepParam param = StepParam::constant(0.0);
};

struct MinimizeResult {
  StepParam best_param = StepParam::constant(0.0);
  double best_value = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<Incumbent> history;  // nonincreasing in value
};

/// P_{phi,x}(a) = F_{phi,a}(x, 1).
double parisi_functional(const InitialCondition& phi, double x,
                         const StepParam& a, const SolverConfig& cfg,
                         const HermiteRule& rule);

/// log 2 + F(beta*h, 1) - (beta^2/2) int_0^1 t a(1-t) dt.
double parisi_value(const ParisiProblem& problem, const StepParam& a,
                    const SolverConfig& cfg, const HermiteRule& rule);

/// Multi-start Nelder-Mead over the 2k+1 free coordinates (k+1 values and
/// k breakpoints, box-constrained through logistic reparametrization).
MinimizeResult minimize(const ParisiProblem& problem,
                        const OptimizerConfig& opt, const SolverConfig& cfg,
                        const HermiteRule& rule);

}  // namespace parisi
