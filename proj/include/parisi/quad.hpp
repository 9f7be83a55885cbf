#pragma once

#include <functional>
#include <vector>

namespace parisi {

/// Physicists' Gauss-Hermite rule: sum_i w_i f(s_i) approximates
/// int f(s) exp(-s^2) ds, so the weights sum to sqrt(pi).
struct HermiteRule {
  int order = 0;
  std::vector<double> nodes;    // strictly increasing, symmetric about 0
  std::vector<double> weights;  // positive

  static HermiteRule make(int order);
};

using RealFn = std::function<double(double)>;

/// E f(x + sigma*z) for z standard Gaussian. sigma = 0 degenerates to f(x).
double gauss_expectation(const HermiteRule& rule, const RealFn& f, double x,
                         double sigma);

/// (1/m) log E exp(m f(x + sigma*z)) with max-subtraction; m = 0 is the
/// plain-expectation limit.
double log_moment(const HermiteRule& rule, const RealFn& f, double x,
                  double sigma, double m);

}  // namespace parisi
