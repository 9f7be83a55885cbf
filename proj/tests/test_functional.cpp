#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "parisi/functional.hpp"

using namespace parisi;

namespace {

constexpr double kLog2 = 0.69314718055994530942;

const HermiteRule& rule40() {
  static const HermiteRule r = HermiteRule::make(40);
  return r;
}

SolverConfig quick_cfg() {
  SolverConfig cfg;
  cfg.x_min = -10.0;
  cfg.x_max = 10.0;
  cfg.h = 0.025;
  cfg.quad_order = 40;
  return cfg;
}

}  // namespace

TEST_SUITE("functional") {

TEST_CASE("parisi_functional closed forms") {
  CHECK(std::abs(parisi_functional(builtin("log_cosh"), 0.0,
                                   StepParam::constant(1.0), quick_cfg(),
                                   rule40()) -
                 0.5) <= 1e-7);
  CHECK(std::abs(parisi_functional(builtin("linear(1,0)"), 2.0,
                                   StepParam::constant(0.6), quick_cfg(),
                                   rule40()) -
                 2.3) <= 1e-9);
}

TEST_CASE("parisi_functional matches a high-order constant-m oracle") {
  const InitialCondition lc = builtin("log_cosh");
  const HermiteRule r200 = HermiteRule::make(200);
  const double want = constant_m_solution(lc, 0.5, 1.0, 1.0, r200);
  const double got = parisi_functional(lc, 1.0, StepParam::constant(0.5),
                                       quick_cfg(), rule40());
  CHECK(std::abs(got - want) <= 1e-7);
}

TEST_CASE("parisi_value composition") {
  ParisiProblem p{1.0, 0.0, builtin("log_cosh"), 1};
  CHECK(std::abs(parisi_value(p, StepParam::constant(1.0), quick_cfg(), rule40()) -
                 (kLog2 + 0.5 - 0.25)) <= 1e-7);

  // a = 0: plain heat evolution, no penalty
  const double want0 =
      kLog2 + oracles::gauss_expectation(builtin("log_cosh").value, 0.0, 1.0);
  CHECK(std::abs(parisi_value(p, StepParam::constant(0.0), quick_cfg(), rule40()) -
                 want0) <= 1e-7);

  // affine in the penalty: changing beta changes only the two beta terms
  ParisiProblem p2{2.0, 0.0, builtin("log_cosh"), 1};
  const StepParam a = StepParam::make({0.5}, {0.8, 0.2});
  const double v1 = parisi_value(p, a, quick_cfg(), rule40());
  const double v2 = parisi_value(p2, a, quick_cfg(), rule40());
  // same F term at h = 0, penalty scales with beta^2
  CHECK(std::abs((v2 - v1) - (-(4.0 - 1.0) / 2.0 * penalty_integral(a))) <= 1e-12);

  ParisiProblem bad{-1.0, 0.0, builtin("log_cosh"), 1};
  CHECK_THROWS_AS(parisi_value(bad, a, quick_cfg(), rule40()),
                  std::invalid_argument);
}

TEST_CASE("minimize dominates the endpoints") {
  ParisiProblem p{0.5, 0.3, builtin("log_cosh"), 1};
  OptimizerConfig opt;
  opt.starts = 4;
  opt.max_iter = 400;
  opt.seed = 7;
  const MinimizeResult res = minimize(p, opt, quick_cfg(), rule40());
  const double at0 = parisi_value(p, StepParam::constant(0.0), quick_cfg(), rule40());
  const double at1 = parisi_value(p, StepParam::constant(1.0), quick_cfg(), rule40());
  CHECK(res.best_value <= at0 + 1e-9);
  CHECK(res.best_value <= at1 + 1e-9);
  CHECK(res.best_param.in_M());
  CHECK(res.converged);
  // history is nonincreasing and ends at the best value
  for (std::size_t i = 1; i < res.history.size(); ++i)
    CHECK(res.history[i].value <= res.history[i - 1].value);
  CHECK(res.history.back().value == res.best_value);
}

TEST_CASE("minimize is deterministic for a fixed seed") {
  ParisiProblem p{0.6, 0.2, builtin("log_cosh"), 1};
  OptimizerConfig opt;
  opt.starts = 3;
  opt.max_iter = 200;
  opt.seed = 42;
  const MinimizeResult r1 = minimize(p, opt, quick_cfg(), rule40());
  const MinimizeResult r2 = minimize(p, opt, quick_cfg(), rule40());
  CHECK(r1.best_value == r2.best_value);
  REQUIRE(r1.history.size() == r2.history.size());
  for (std::size_t i = 0; i < r1.history.size(); ++i) {
    CHECK(r1.history[i].value == r2.history[i].value);
    CHECK(r1.history[i].param.values() == r2.history[i].param.values());
    CHECK(r1.history[i].param.breakpoints() == r2.history[i].param.breakpoints());
  }
  CHECK(r1.iterations == r2.iterations);
}

TEST_CASE("minimize rejects k < 1") {
  ParisiProblem p{1.0, 0.0, builtin("log_cosh"), 0};
  OptimizerConfig opt;
  CHECK_THROWS_AS(minimize(p, opt, quick_cfg(), rule40()), std::invalid_argument);
}

}  // TEST_SUITE
