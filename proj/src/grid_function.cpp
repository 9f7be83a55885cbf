#include "parisi/grid_function.hpp"

#include <algorithm>
#include <cmath>

namespace parisi {

namespace {

struct Cell {
  double y0, y1, d0, d1, h, s;
};

// Fritsch-Carlson limiting of the nodal derivatives within one cell keeps
// the interpolant monotone when the data are.
inline void limit(Cell& c) {
  const double delta = (c.y1 - c.y0) / c.h;
  if (delta == 0.0) {
    c.d0 = 0.0;
    c.d1 = 0.0;
    return;
  }
  double a = c.d0 / delta;
  double b = c.d1 / delta;
  if (a < 0.0) a = 0.0;
  if (b < 0.0) b = 0.0;
  const double r2 = a * a + b * b;
  if (r2 > 9.0) {
    const double tau = 3.0 / std::sqrt(r2);
    a *= tau;
    b *= tau;
  }
  c.d0 = a * delta;
  c.d1 = b * delta;
}

inline Cell locate(const GridFunction& f, double x) {
  const double h = f.h();
  int i = static_cast<int>((x - f.x_min) / h);
  i = std::clamp(i, 0, f.n - 2);
  Cell c{f.values[i], f.values[i + 1], f.derivs[i], f.derivs[i + 1], h,
         (x - f.x_at(i)) / h};
  limit(c);
  return c;
}

}  // namespace

double GridFunction::eval(double x) const {
  if (x < x_min) return tail_left.eval(x);
  if (x > x_max) return tail_right.eval(x);
  Cell c = locate(*this, x);
  const double s = c.s, s2 = s * s, s3 = s2 * s;
  return c.y0 * (2.0 * s3 - 3.0 * s2 + 1.0) + c.h * c.d0 * (s3 - 2.0 * s2 + s) +
         c.y1 * (-2.0 * s3 + 3.0 * s2) + c.h * c.d1 * (s3 - s2);
}

double GridFunction::eval_deriv(double x) const {
  if (x < x_min) return tail_left.A;
  if (x > x_max) return tail_right.A;
  Cell c = locate(*this, x);
  const double s = c.s, s2 = s * s;
  return (c.y0 * (6.0 * s2 - 6.0 * s) + c.h * c.d0 * (3.0 * s2 - 4.0 * s + 1.0) +
          c.y1 * (-6.0 * s2 + 6.0 * s) + c.h * c.d1 * (3.0 * s2 - 2.0 * s)) /
         c.h;
}

}  // namespace parisi
