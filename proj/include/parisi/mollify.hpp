#pragma once

#include <string>
#include <utility>
#include <vector>

#include "parisi/initial.hpp"

namespace parisi {

/// Continuous piecewise linear lower approximation of a convex phi:
/// supporting lines of phi - 2/r outside [-r, r], secants of phi - 2/r on
/// the regular partition with spacing 1/(r T_r) inside.
struct PiecewiseLinearApprox {
  std::vector<double> knots;        // q_{r,p}, regular partition of [-r, r]
  std::vector<double> knot_values;  // s at the knots
  double left_slope = 0.0;          // slope for x <= -r
  double right_slope = 0.0;         // slope for x >= r
  int r = 0;
  int T_r = 0;
  double eps_r = 0.0;  // 1/(2 r T_r)

  ClassTag source_tag = ClassTag::none;
  std::string source_name;

  double operator()(double x) const;
  double slope_at(double x) const;  // piecewise-constant derivative
};

PiecewiseLinearApprox build_piecewise(const InitialCondition& phi, int r,
                                      int T_floor = 0);

/// Convolution with the scaled standard bump kernel; output is twice
/// differentiable and exactly linear outside [-(r + eps_r), r + eps_r].
InitialCondition mollify(const PiecewiseLinearApprox& s);

/// The normalized bump c*exp(-1/(1-u^2)) on (-1,1); zero outside.
double bump_kernel(double u);

/// Mollifies both functions on a shared partition (common T_r and kernel
/// width), which keeps the value and derivative orderings of an admissible
/// pair intact; separate partitions do not.
std::pair<InitialCondition, InitialCondition> mollify_pair(
    const InitialCondition& phi1, const InitialCondition& phi2, int r);

}  // namespace parisi
