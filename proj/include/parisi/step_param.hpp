#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace parisi {

/// Step functional order parameter a : [0,1] -> [0,1].
/// Breakpoints t_1 < ... < t_k lie in (0,1); values m_0..m_k give
/// a(t) = m_j on (t_j, t_{j+1}] with t_0 = 0, t_{k+1} = 1, a(0) = m_0.
class StepParam {
 public:
  static StepParam make(std::vector<double> breakpoints,
                        std::vector<double> values);
  static StepParam constant(double m);

  double operator()(double t) const;  // left-continuous evaluation

  bool in_M() const;  // nonincreasing values

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t num_intervals() const { return values_.size(); }
  double interval_start(std::size_t j) const {
    return j == 0 ? 0.0 : breakpoints_[j - 1];
  }
  double interval_end(std::size_t j) const {
    return j + 1 == values_.size() ? 1.0 : breakpoints_[j];
  }

  std::string to_json() const;
  static StepParam from_json(const std::string& text);

 private:
  StepParam() = default;
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

/// Rewrites both parameters on the union of their breakpoint sets;
/// pointwise values are unchanged.
std::pair<StepParam, StepParam> refine_pair(const StepParam& a1,
                                            const StepParam& a2);

StepParam convex_combination(double alpha, const StepParam& a1,
                             const StepParam& a2);

double l1_distance(const StepParam& a1, const StepParam& a2);

/// int_0^1 t a(1-t) dt, exact closed form on the step representation.
double penalty_integral(const StepParam& a);

}  // namespace parisi
