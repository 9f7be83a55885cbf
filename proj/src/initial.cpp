#include "parisi/initial.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace parisi {

namespace {
constexpr double kLog2 = 0.69314718055994530942;
}

InitialCondition make_log_cosh() {
  InitialCondition ic;
  ic.name = "log_cosh";
  ic.value = [](double x) {
    const double a = std::abs(x);
    return a + std::log1p(std::exp(-2.0 * a)) - kLog2;
  };
  ic.deriv1 = [](double x) { return std::tanh(x); };
  ic.deriv2 = [](double x) {
    const double e = std::exp(-2.0 * std::abs(x));
    const double one_plus = 1.0 + e;
    return 4.0 * e / (one_plus * one_plus);
  };
  ic.d1_bound = 1.0;
  ic.d2_bound = 1.0;
  ic.class_tag = ClassTag::even_convex;
  ic.tail = TailData{14.0, 1.0, -kLog2, -1.0, -kLog2};
  return ic;
}

InitialCondition make_linear(double A, double B) {
  InitialCondition ic;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "linear(%g,%g)", A, B);
  ic.name = buf;
  ic.value = [A, B](double x) { return A * x + B; };
  ic.deriv1 = [A](double) { return A; };
  ic.deriv2 = [](double) { return 0.0; };
  ic.d1_bound = std::abs(A);
  ic.d2_bound = 0.0;
  ic.class_tag = A >= 0.0 ? ClassTag::nondecreasing_convex : ClassTag::none;
  ic.tail = TailData{0.0, A, B, A, B};
  return ic;
}

InitialCondition make_soft_abs(double scale) {
  if (!(scale > 0.0))
    throw std::invalid_argument("soft_abs: scale must be positive");
  InitialCondition ic;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "soft_abs(%g)", scale);
  ic.name = buf;
  const double s = scale;
  ic.value = [s](double x) {
    const double a = std::abs(x) / s;
    return s * (a + std::log1p(std::exp(-2.0 * a)) - kLog2);
  };
  ic.deriv1 = [s](double x) { return std::tanh(x / s); };
  ic.deriv2 = [s](double x) {
    const double e = std::exp(-2.0 * std::abs(x) / s);
    const double one_plus = 1.0 + e;
    return 4.0 * e / (one_plus * one_plus) / s;
  };
  ic.d1_bound = 1.0;
  ic.d2_bound = 1.0 / s;
  ic.class_tag = ClassTag::even_convex;
  ic.tail = TailData{15.0 * s, 1.0, -s * kLog2, -1.0, -s * kLog2};
  return ic;
}

InitialCondition make_smoothed_relu(double scale) {
  if (!(scale > 0.0))
    throw std::invalid_argument("smoothed_relu: scale must be positive");
  InitialCondition ic;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "smoothed_relu(%g)", scale);
  ic.name = buf;
  const double s = scale;
  ic.value = [s](double x) {
    const double y = x / s;
    if (y > 34.0) return x + s * std::exp(-y);
    if (y < -34.0) return s * std::exp(y);
    return s * std::log1p(std::exp(y));
  };
  ic.deriv1 = [s](double x) { return 1.0 / (1.0 + std::exp(-x / s)); };
  ic.deriv2 = [s](double x) {
    const double p = 1.0 / (1.0 + std::exp(-x / s));
    return p * (1.0 - p) / s;
  };
  ic.d1_bound = 1.0;
  ic.d2_bound = 0.25 / s;
  ic.class_tag = ClassTag::nondecreasing_convex;
  ic.tail = TailData{36.0 * s, 1.0, 0.0, 0.0, 0.0};
  return ic;
}

InitialCondition builtin(const std::string& name) {
  if (name == "log_cosh") return make_log_cosh();
  double p1 = 0.0, p2 = 0.0;
  if (std::sscanf(name.c_str(), "linear(%lf,%lf)", &p1, &p2) == 2)
    return make_linear(p1, p2);
  if (std::sscanf(name.c_str(), "soft_abs(%lf)", &p1) == 1)
    return make_soft_abs(p1);
  if (std::sscanf(name.c_str(), "smoothed_relu(%lf)", &p1) == 1)
    return make_smoothed_relu(p1);
  throw std::invalid_argument("builtin: unknown initial condition '" + name + "'");
}

InitialCondition scale_ic(double c, const InitialCondition& phi) {
  if (!(c > 0.0)) throw std::invalid_argument("scale_ic: c must be positive");
  InitialCondition ic;
  ic.name = "scaled(" + std::to_string(c) + "," + phi.name + ")";
  const RealFn v = phi.value, d1 = phi.deriv1, d2 = phi.deriv2;
  ic.value = [c, v](double x) { return c * v(x); };
  ic.deriv1 = [c, d1](double x) { return c * d1(x); };
  ic.deriv2 = [c, d2](double x) { return c * d2(x); };
  ic.d1_bound = c * phi.d1_bound;
  ic.d2_bound = c * phi.d2_bound;
  ic.class_tag = phi.class_tag;
  if (phi.tail) {
    ic.tail = TailData{phi.tail->M, c * phi.tail->A_right, c * phi.tail->B_right,
                       c * phi.tail->A_left, c * phi.tail->B_left};
  }
  return ic;
}

InitialCondition mix_ic(double alpha, const InitialCondition& phi1,
                        const InitialCondition& phi2) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("mix_ic: alpha outside [0,1]");
  InitialCondition ic;
  ic.name = "mix(" + std::to_string(alpha) + "," + phi1.name + "," + phi2.name + ")";
  const double a = alpha, b = 1.0 - alpha;
  const RealFn v1 = phi1.value, v2 = phi2.value;
  const RealFn d11 = phi1.deriv1, d12 = phi2.deriv1;
  const RealFn d21 = phi1.deriv2, d22 = phi2.deriv2;
  ic.value = [a, b, v1, v2](double x) { return a * v1(x) + b * v2(x); };
  ic.deriv1 = [a, b, d11, d12](double x) { return a * d11(x) + b * d12(x); };
  ic.deriv2 = [a, b, d21, d22](double x) { return a * d21(x) + b * d22(x); };
  ic.d1_bound = a * phi1.d1_bound + b * phi2.d1_bound;
  ic.d2_bound = a * phi1.d2_bound + b * phi2.d2_bound;
  ic.class_tag = phi1.class_tag == phi2.class_tag ? phi1.class_tag : ClassTag::none;
  if (phi1.tail && phi2.tail) {
    ic.tail = TailData{std::max(phi1.tail->M, phi2.tail->M),
                       a * phi1.tail->A_right + b * phi2.tail->A_right,
                       a * phi1.tail->B_right + b * phi2.tail->B_right,
                       a * phi1.tail->A_left + b * phi2.tail->A_left,
                       a * phi1.tail->B_left + b * phi2.tail->B_left};
  }
  return ic;
}

namespace {

struct ShapeProbe {
  bool even = true;
  bool convex = true;
  bool nondecreasing = true;
};

constexpr double kTol = 1e-9;
constexpr int kSamples = 601;
constexpr double kRange = 30.0;

double sample_x(int i) { return -kRange + 2.0 * kRange * i / (kSamples - 1); }

ShapeProbe probe_shape(const InitialCondition& phi) {
  ShapeProbe p;
  for (int i = 0; i < kSamples; ++i) {
    const double x = sample_x(i);
    if (std::abs(phi.value(x) - phi.value(-x)) >
        kTol * std::max(1.0, std::abs(phi.value(x))))
      p.even = false;
    if (phi.deriv2(x) < -kTol) p.convex = false;
    if (phi.deriv1(x) < -kTol) p.nondecreasing = false;
  }
  return p;
}

}  // namespace

PairVerdict validate_pair(const InitialCondition& phi1,
                          const InitialCondition& phi2) {
  const ShapeProbe s1 = probe_shape(phi1);
  const ShapeProbe s2 = probe_shape(phi2);

  bool ordered = true;                // phi1 <= phi2 on [-30,30]
  bool d_ordered_pos = true;          // phi1' <= phi2' on [0,30]
  bool d_ordered_global = true;       // phi1' <= phi2' on [-30,30]
  for (int i = 0; i < kSamples; ++i) {
    const double x = sample_x(i);
    if (phi1.value(x) > phi2.value(x) + kTol) ordered = false;
    const bool d_ok = phi1.deriv1(x) <= phi2.deriv1(x) + kTol;
    if (!d_ok) {
      d_ordered_global = false;
      if (x >= 0.0) d_ordered_pos = false;
    }
  }

  const bool f1 = s1.even && s2.even && s1.convex && s2.convex && ordered &&
                  d_ordered_pos;
  const bool f2 = s1.nondecreasing && s2.nondecreasing && s1.convex &&
                  s2.convex && ordered && d_ordered_pos;

  PairVerdict v;
  v.derivative_ordering_global = d_ordered_global;
  if (f1 && f2)
    v.cls = PairClass::Both;
  else if (f1)
    v.cls = PairClass::F1;
  else if (f2)
    v.cls = PairClass::F2;
  else
    v.cls = PairClass::Neither;
  return v;
}

}  // namespace parisi
