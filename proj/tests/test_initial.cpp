#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "parisi/initial.hpp"

using namespace parisi;

namespace {
constexpr double kLog2 = 0.69314718055994530942;

void check_bounds_and_shape(const InitialCondition& phi) {
  for (int i = 0; i <= 10000; ++i) {
    const double x = -50.0 + 100.0 * i / 10000.0;
    CHECK(std::abs(phi.deriv1(x)) <= phi.d1_bound + 1e-12);
    CHECK(phi.deriv2(x) >= -1e-12);
    CHECK(phi.deriv2(x) <= phi.d2_bound + 1e-12);
  }
}
}  // namespace

TEST_SUITE("initial") {

TEST_CASE("log_cosh basics") {
  const InitialCondition phi = make_log_cosh();
  CHECK(phi.value(0.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(phi.deriv1(0.0) == 0.0);
  CHECK(phi.deriv2(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(phi.class_tag == ClassTag::even_convex);
  // remainder formula: log cosh x = x - log 2 + log(1 + e^{-2x})
  CHECK(std::abs(phi.value(20.0) - (20.0 - kLog2)) <= 1e-9);
  check_bounds_and_shape(phi);
}

TEST_CASE("log_cosh declared tail is exact") {
  const InitialCondition phi = make_log_cosh();
  REQUIRE(phi.tail.has_value());
  for (int i = 0; i <= 50; ++i) {
    const double x = phi.tail->M + 10.0 * i / 50.0;
    CHECK(std::abs(phi.value(x) - (phi.tail->A_right * x + phi.tail->B_right)) <=
          1e-12);
    CHECK(std::abs(phi.value(-x) - (phi.tail->A_left * -x + phi.tail->B_left)) <=
          1e-12);
  }
}

TEST_CASE("linear builtin") {
  const InitialCondition phi = make_linear(0.5, 1.0);
  for (double x : {-7.0, 0.0, 3.0}) {
    CHECK(phi.value(x) == 0.5 * x + 1.0);
    CHECK(phi.deriv1(x) == 0.5);
    CHECK(phi.deriv2(x) == 0.0);
  }
  CHECK(phi.class_tag == ClassTag::nondecreasing_convex);
  CHECK(make_linear(-0.5, 0.0).class_tag == ClassTag::none);
}

TEST_CASE("soft_abs and smoothed_relu shapes") {
  const InitialCondition sa = make_soft_abs(2.0);
  CHECK(sa.class_tag == ClassTag::even_convex);
  CHECK(std::abs(sa.value(1.3) - sa.value(-1.3)) <= 1e-12);
  check_bounds_and_shape(sa);

  const InitialCondition sr = make_smoothed_relu(0.5);
  CHECK(sr.class_tag == ClassTag::nondecreasing_convex);
  CHECK(sr.deriv1(-3.0) >= 0.0);
  check_bounds_and_shape(sr);
}

TEST_CASE("declared tails hold for every builtin") {
  for (const char* name : {"log_cosh", "linear(0.7,-0.2)", "soft_abs(1.5)",
                           "smoothed_relu(0.5)"}) {
    const InitialCondition phi = builtin(name);
    REQUIRE(phi.tail.has_value());
    for (int i = 0; i <= 20; ++i) {
      const double x = phi.tail->M + 10.0 * i / 20.0;
      CHECK(std::abs(phi.value(x) - (phi.tail->A_right * x + phi.tail->B_right)) <=
            1e-12);
      CHECK(std::abs(phi.value(-x) -
                     (phi.tail->A_left * -x + phi.tail->B_left)) <= 1e-12);
    }
  }
}

TEST_CASE("deriv1 consistent with central differences") {
  for (const char* name : {"log_cosh", "soft_abs(1.5)", "smoothed_relu(0.5)"}) {
    const InitialCondition phi = builtin(name);
    for (int i = 0; i <= 40; ++i) {
      const double x = -4.0 + 8.0 * i / 40.0;
      const double fd = oracles::central_diff(phi.value, x, 1e-4);
      CHECK(std::abs(phi.deriv1(x) - fd) <= 1e-6);
    }
  }
}

TEST_CASE("builtin parser") {
  CHECK(builtin("log_cosh").name == "log_cosh");
  CHECK(builtin("linear(0.5,1)").value(2.0) == doctest::Approx(2.0));
  CHECK(builtin("soft_abs(2)").value(0.0) < 0.1);
  CHECK_THROWS_AS(builtin("mystery"), std::invalid_argument);
  CHECK_THROWS_AS(builtin("soft_abs(-1)"), std::invalid_argument);
}

TEST_CASE("scale and mix") {
  const InitialCondition lc = make_log_cosh();
  const InitialCondition twice = scale_ic(2.0, lc);
  CHECK(twice.value(1.5) == doctest::Approx(2.0 * lc.value(1.5)).epsilon(1e-15));
  CHECK(twice.deriv1(1.5) == doctest::Approx(2.0 * std::tanh(1.5)).epsilon(1e-15));
  CHECK(twice.class_tag == ClassTag::even_convex);

  const InitialCondition mixed = mix_ic(0.3, lc, twice);
  CHECK(mixed.value(2.0) ==
        doctest::Approx(0.3 * lc.value(2.0) + 0.7 * twice.value(2.0))
            .epsilon(1e-14));
  CHECK(mixed.class_tag == ClassTag::even_convex);
}

TEST_CASE("validate_pair classifications") {
  const InitialCondition lc = make_log_cosh();
  CHECK(validate_pair(lc, lc).cls == PairClass::F1);

  const PairVerdict lines =
      validate_pair(make_linear(0.3, 0.0), make_linear(0.3, 0.4));
  CHECK(lines.cls == PairClass::F2);
  CHECK(lines.derivative_ordering_global);

  // different slopes: value ordering breaks on the negative axis
  CHECK(validate_pair(make_linear(0.3, 0.0), make_linear(0.7, 0.1)).cls ==
        PairClass::Neither);

  const PairVerdict relu =
      validate_pair(make_linear(0.2, 0.0), make_smoothed_relu(0.5));
  CHECK(relu.cls == PairClass::F2);
  CHECK_FALSE(relu.derivative_ordering_global);

  const PairVerdict doubled = validate_pair(lc, scale_ic(2.0, lc));
  CHECK(doubled.cls == PairClass::F1);
  // derivative ordering tanh <= 2 tanh only holds for x >= 0
  CHECK_FALSE(doubled.derivative_ordering_global);

  CHECK(validate_pair(scale_ic(2.0, lc), lc).cls == PairClass::Neither);
  CHECK(validate_pair(lc, make_linear(0.5, 0.0)).cls == PairClass::Neither);
}

}  // TEST_SUITE
