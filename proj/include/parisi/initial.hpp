#pragma once

#include <optional>
#include <string>

#include "parisi/quad.hpp"

namespace parisi {

enum class ClassTag { even_convex, nondecreasing_convex, none };

/// Declares value(x) = A*x + B exactly (to working precision) on each side
/// outside [-M, M].
struct TailData {
  double M = 0.0;
  double A_right = 0.0, B_right = 0.0;
  double A_left = 0.0, B_left = 0.0;
};

/// Admissible initial condition: twice differentiable with bounded first and
/// second derivative.
struct InitialCondition {
  std::string name;
  RealFn value, deriv1, deriv2;
  double d1_bound = 0.0;
  double d2_bound = 0.0;
  ClassTag class_tag = ClassTag::none;
  std::optional<TailData> tail;
};

InitialCondition make_log_cosh();
InitialCondition make_linear(double A, double B);
InitialCondition make_soft_abs(double scale);
InitialCondition make_smoothed_relu(double scale);

/// Parses "log_cosh", "linear(A,B)", "soft_abs(s)", "smoothed_relu(s)".
InitialCondition builtin(const std::string& name);

/// c * phi for c > 0; rescales bounds and tail data, keeps the class.
InitialCondition scale_ic(double c, const InitialCondition& phi);

/// alpha*phi1 + (1-alpha)*phi2.
InitialCondition mix_ic(double alpha, const InitialCondition& phi1,
                        const InitialCondition& phi2);

enum class PairClass { F1, F2, Both, Neither };

struct PairVerdict {
  PairClass cls = PairClass::Neither;
  // For even-convex pairs phi1' <= phi2' can only hold on all of R when the
  // derivatives coincide; this flag records whether it does hold globally
  // rather than just on [0, inf).
  bool derivative_ordering_global = false;
};

PairVerdict validate_pair(const InitialCondition& phi1,
                          const InitialCondition& phi2);

}  // namespace parisi
