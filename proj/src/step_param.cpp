#include "parisi/step_param.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace parisi {

namespace {
constexpr double kMergeTol = 1e-12;
}

StepParam StepParam::make(std::vector<double> breakpoints,
                          std::vector<double> values) {
  if (values.empty())
    throw std::invalid_argument("StepParam: values must be nonempty");
  if (values.size() != breakpoints.size() + 1)
    throw std::invalid_argument("StepParam: need one more value than breakpoints");
  for (double v : values)
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument("StepParam: values must lie in [0,1]");
  for (double t : breakpoints)
    if (!(t > 0.0 && t < 1.0))
      throw std::invalid_argument("StepParam: breakpoints must lie in (0,1)");
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    if (!(breakpoints[i] > breakpoints[i - 1]))
      throw std::invalid_argument("StepParam: breakpoints must be strictly increasing");

  // Merge breakpoints closer than kMergeTol (zero-length intervals).
  StepParam a;
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (!a.breakpoints_.empty() &&
        breakpoints[i] - a.breakpoints_.back() < kMergeTol) {
      a.values_.back() = values[i + 1];  // later interval wins
      continue;
    }
    if (a.breakpoints_.empty()) a.values_.push_back(values[i]);
    a.breakpoints_.push_back(breakpoints[i]);
    a.values_.push_back(values[i + 1]);
  }
  if (a.values_.empty()) a.values_.push_back(values[0]);
  // Drop a trailing breakpoint indistinguishable from 1.
  if (!a.breakpoints_.empty() && 1.0 - a.breakpoints_.back() < kMergeTol) {
    a.breakpoints_.pop_back();
    a.values_.pop_back();
  }
  return a;
}

StepParam StepParam::constant(double m) { return make({}, {m}); }

double StepParam::operator()(double t) const {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::domain_error("StepParam: t outside [0,1]");
  if (t == 0.0) return values_.front();
  const auto it =
      std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t);
  return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

bool StepParam::in_M() const {
  for (std::size_t i = 1; i < values_.size(); ++i)
    if (values_[i] > values_[i - 1]) return false;
  return true;
}

std::string StepParam::to_json() const {
  nlohmann::json j;
  j["breakpoints"] = breakpoints_;
  j["values"] = values_;
  return j.dump();
}

StepParam StepParam::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  return make(j.at("breakpoints").get<std::vector<double>>(),
              j.at("values").get<std::vector<double>>());
}

namespace {

std::vector<double> union_breakpoints(const StepParam& a1,
                                      const StepParam& a2) {
  std::vector<double> u;
  u.reserve(a1.breakpoints().size() + a2.breakpoints().size());
  std::merge(a1.breakpoints().begin(), a1.breakpoints().end(),
             a2.breakpoints().begin(), a2.breakpoints().end(),
             std::back_inserter(u));
  u.erase(std::unique(u.begin(), u.end(),
                      [](double x, double y) { return y - x < kMergeTol; }),
          u.end());
  return u;
}

StepParam on_breakpoints(const StepParam& a, const std::vector<double>& bps) {
  std::vector<double> vals;
  vals.reserve(bps.size() + 1);
  for (std::size_t j = 0; j <= bps.size(); ++j) {
    const double t_end = j == bps.size() ? 1.0 : bps[j];
    vals.push_back(a(t_end));  // left continuity: value on (t_j, t_{j+1}]
  }
  return StepParam::make(bps, vals);
}

}  // namespace

std::pair<StepParam, StepParam> refine_pair(const StepParam& a1,
                                            const StepParam& a2) {
  const auto bps = union_breakpoints(a1, a2);
  return {on_breakpoints(a1, bps), on_breakpoints(a2, bps)};
}

StepParam convex_combination(double alpha, const StepParam& a1,
                             const StepParam& a2) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("convex_combination: alpha outside [0,1]");
  const auto [r1, r2] = refine_pair(a1, a2);
  std::vector<double> vals(r1.values().size());
  for (std::size_t j = 0; j < vals.size(); ++j)
    vals[j] = alpha * r1.values()[j] + (1.0 - alpha) * r2.values()[j];
  return StepParam::make(r1.breakpoints(), vals);
}

double l1_distance(const StepParam& a1, const StepParam& a2) {
  const auto [r1, r2] = refine_pair(a1, a2);
  double acc = 0.0;
  for (std::size_t j = 0; j < r1.num_intervals(); ++j) {
    const double len = r1.interval_end(j) - r1.interval_start(j);
    acc += len * std::abs(r1.values()[j] - r2.values()[j]);
  }
  return acc;
}

double penalty_integral(const StepParam& a) {
  // int_0^1 t a(1-t) dt = sum_j m_j [(t_{j+1}-t_j) - (t_{j+1}^2-t_j^2)/2]
  double acc = 0.0;
  for (std::size_t j = 0; j < a.num_intervals(); ++j) {
    const double lo = a.interval_start(j);
    const double hi = a.interval_end(j);
    acc += a.values()[j] * ((hi - lo) - 0.5 * (hi * hi - lo * lo));
  }
  return acc;
}

}  // namespace parisi
