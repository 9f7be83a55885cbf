#pragma once

#include <vector>

namespace parisi {

struct Tail {
  double A = 0.0;  // slope
  double B = 0.0;  // intercept
  double eval(double x) const { return A * x + B; }
};

/// F(., t) sampled on a uniform x-grid together with exact node derivatives
/// and analytic linear tails on both sides. Inside the grid, evaluation uses
/// the shape-preserving (Fritsch-Carlson limited) cubic Hermite interpolant.
struct GridFunction {
  double x_min = 0.0, x_max = 0.0;
  int n = 0;  // number of grid points, >= 64
  double t = 0.0;
  std::vector<double> values;
  std::vector<double> derivs;
  Tail tail_left, tail_right;

  double h() const { return (x_max - x_min) / (n - 1); }
  double x_at(int i) const { return x_min + i * h(); }

  double eval(double x) const;
  double eval_deriv(double x) const;
};

}  // namespace parisi
