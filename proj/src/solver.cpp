#include "parisi/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <array>
#include <map>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace parisi {

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kSqrt2 = 1.4142135623730950488;
}  // namespace

int SolverConfig::n_points() const {
  const int n = static_cast<int>(std::lround((x_max - x_min) / h)) + 1;
  return n;
}

SolverConfig SolverConfig::refined() const {
  SolverConfig c = *this;
  c.h *= 0.5;
  c.quad_order *= 2;
  return c;
}

namespace {

// Evaluates one output node: value and derivative of
// (1/m) log E exp(m prev(x + sqrt(dt) z)).
// Scratch buffers avoid per-node allocation in the hot loop.
struct NodeScratch {
  std::vector<double> y, g;
};

std::pair<double, double> compute_node(const GridFunction& prev, double x,
                                       double m, double c,
                                       const HermiteRule& rule,
                                       NodeScratch& scratch) {
  const int q = rule.order;
  scratch.y.resize(q);
  scratch.g.resize(q);
  for (int i = 0; i < q; ++i) {
    const double u = x + c * rule.nodes[i];
    scratch.y[i] = prev.eval(u);
    scratch.g[i] = prev.eval_deriv(u);
  }
  if (m == 0.0) {
    double sv = 0.0, sd = 0.0;
    for (int i = 0; i < q; ++i) {
      sv += rule.weights[i] * scratch.y[i];
      sd += rule.weights[i] * scratch.g[i];
    }
    return {sv / kSqrtPi, sd / kSqrtPi};
  }
  double gmax = -std::numeric_limits<double>::infinity();
  double gmin = std::numeric_limits<double>::infinity();
  double mean = 0.0;
  for (int i = 0; i < q; ++i) {
    const double gi = m * scratch.y[i];
    gmax = std::max(gmax, gi);
    gmin = std::min(gmin, gi);
    mean += rule.weights[i] * gi;
  }
  mean /= kSqrtPi;
  if (gmax - gmin <= 1.0) {
    // Small exponent spread (in particular small m): dividing log(S) by m
    // amplifies its rounding error, so accumulate S - 1 with expm1 instead.
    double acc = 0.0, S = 0.0, D = 0.0;
    for (int i = 0; i < q; ++i) {
      const double e = std::expm1(m * scratch.y[i] - mean);
      acc += rule.weights[i] * e;
      const double w = rule.weights[i] * (1.0 + e);
      S += w;
      D += w * scratch.g[i];
    }
    return {(mean + std::log1p(acc / kSqrtPi)) / m, D / S};
  }
  double S = 0.0, D = 0.0;
  for (int i = 0; i < q; ++i) {
    const double w = rule.weights[i] * std::exp(m * scratch.y[i] - gmax);
    S += w;
    D += w * scratch.g[i];
  }
  return {(gmax + std::log(S / kSqrtPi)) / m, D / S};
}

GridFunction make_step_shell(const GridFunction& prev, double m, double dt) {
  GridFunction out;
  out.x_min = prev.x_min;
  out.x_max = prev.x_max;
  out.n = prev.n;
  out.t = prev.t + dt;
  out.values.resize(prev.n);
  out.derivs.resize(prev.n);
  // Lemma-4 tail update: slope unchanged, intercept shifted by A^2 m dt / 2.
  out.tail_left = {prev.tail_left.A,
                   prev.tail_left.B + prev.tail_left.A * prev.tail_left.A * m * dt / 2.0};
  out.tail_right = {prev.tail_right.A,
                    prev.tail_right.B + prev.tail_right.A * prev.tail_right.A * m * dt / 2.0};
  return out;
}

}  // namespace

GridFunction smooth_step_serial(const GridFunction& prev, double m, double dt,
                                const HermiteRule& rule) {
  GridFunction out = make_step_shell(prev, m, dt);
  const double c = kSqrt2 * std::sqrt(dt);
  NodeScratch scratch;
  for (int i = 0; i < prev.n; ++i) {
    const auto [v, d] = compute_node(prev, prev.x_at(i), m, c, rule, scratch);
    out.values[i] = v;
    out.derivs[i] = d;
  }
  return out;
}

GridFunction smooth_step(const GridFunction& prev, double m, double dt,
                         const HermiteRule& rule, bool parallel) {
#ifdef _OPENMP
  if (parallel) {
    GridFunction out = make_step_shell(prev, m, dt);
    const double c = kSqrt2 * std::sqrt(dt);
#pragma omp parallel
    {
      NodeScratch scratch;
#pragma omp for schedule(static)
      for (int i = 0; i < prev.n; ++i) {
        const auto [v, d] = compute_node(prev, prev.x_at(i), m, c, rule, scratch);
        out.values[i] = v;
        out.derivs[i] = d;
      }
    }
    return out;
  }
#else
  (void)parallel;
#endif
  return smooth_step_serial(prev, m, dt, rule);
}

namespace {

Tail fit_tail(const GridFunction& f, bool right) {
  // Least-squares line through the outer 10% of the grid.
  const int n_fit = std::max(4, f.n / 10);
  const int start = right ? f.n - n_fit : 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = start; i < start + n_fit; ++i) {
    const double x = f.x_at(i), y = f.values[i];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double nn = n_fit;
  const double A = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
  const double B = (sy - A * sx) / nn;
  return {A, B};
}

}  // namespace

SolveTrace solve(const InitialCondition& phi, const StepParam& a,
                 const SolverConfig& cfg, const HermiteRule& rule,
                 double t_final) {
  if (!(t_final > 0.0 && t_final <= 1.0))
    throw std::invalid_argument("solve: t_final must be in (0,1]");
  const int n = cfg.n_points();
  if (n < 64) throw std::invalid_argument("solve: grid must have at least 64 points");

  GridFunction f0;
  f0.x_min = cfg.x_min;
  f0.x_max = cfg.x_min + (n - 1) * cfg.h;
  f0.n = n;
  f0.t = 0.0;
  f0.values.resize(n);
  f0.derivs.resize(n);
  for (int i = 0; i < n; ++i) {
    const double x = f0.x_at(i);
    f0.values[i] = phi.value(x);
    f0.derivs[i] = phi.deriv1(x);
  }
  if (phi.tail && phi.tail->M <= f0.x_max && -phi.tail->M >= f0.x_min) {
    f0.tail_right = {phi.tail->A_right, phi.tail->B_right};
    f0.tail_left = {phi.tail->A_left, phi.tail->B_left};
  } else {
    f0.tail_right = fit_tail(f0, true);
    f0.tail_left = fit_tail(f0, false);
  }
  if (std::abs(f0.tail_right.eval(f0.x_max) - f0.values.back()) > cfg.tail_splice_tol ||
      std::abs(f0.tail_left.eval(f0.x_min) - f0.values.front()) > cfg.tail_splice_tol)
    throw std::runtime_error("solve: tail-inconsistency at grid splice");

  SolveTrace trace;
  trace.a = a;
  trace.snapshots.push_back(std::move(f0));

  for (std::size_t j = 0; j < a.num_intervals(); ++j) {
    const double lo = a.interval_start(j);
    if (lo >= t_final) break;
    const double hi = std::min(a.interval_end(j), t_final);
    const double dt = hi - lo;
    if (dt < 1e-14) continue;
    trace.snapshots.push_back(smooth_step(trace.snapshots.back(), a.values()[j],
                                          dt, rule, cfg.parallel));
  }
  return trace;
}

double constant_m_solution(const InitialCondition& phi, double m, double x,
                           double t, const HermiteRule& rule) {
  return log_moment(rule, phi.value, x, std::sqrt(t), m);
}

namespace {

// Gibbs averages E f(z_{x,t}) W and helpers for the constant-m derivative
// formulas, with max-subtraction in the weight.
struct GibbsAverager {
  const HermiteRule& rule;
  std::vector<double> w;  // normalized Gibbs weights times quadrature weights
  std::vector<double> u;  // node arguments

  GibbsAverager(const InitialCondition& phi, double m, double x, double t,
                const HermiteRule& r)
      : rule(r), w(r.order), u(r.order) {
    const double c = kSqrt2 * std::sqrt(t);
    double gmax = -std::numeric_limits<double>::infinity();
    std::vector<double> mv(r.order);
    for (int i = 0; i < r.order; ++i) {
      u[i] = x + c * r.nodes[i];
      mv[i] = m * phi.value(u[i]);
      gmax = std::max(gmax, mv[i]);
    }
    double S = 0.0;
    for (int i = 0; i < r.order; ++i) {
      w[i] = r.weights[i] * std::exp(mv[i] - gmax);
      S += w[i];
    }
    for (double& wi : w) wi /= S;
  }

  double avg(const RealFn& f) const {
    double acc = 0.0;
    for (int i = 0; i < rule.order; ++i) acc += w[i] * f(u[i]);
    return acc;
  }
};

}  // namespace

double dx_constant_m(const InitialCondition& phi, double m, double x, double t,
                     const HermiteRule& rule) {
  if (t == 0.0) return phi.deriv1(x);
  GibbsAverager g(phi, m, x, t, rule);
  return g.avg(phi.deriv1);
}

double dxx_constant_m(const InitialCondition& phi, double m, double x, double t,
                      const HermiteRule& rule) {
  if (t == 0.0) return phi.deriv2(x);
  GibbsAverager g(phi, m, x, t, rule);
  const double e1 = g.avg(phi.deriv1);
  const double e2 = g.avg([&](double u) { return phi.deriv1(u) * phi.deriv1(u); });
  return g.avg(phi.deriv2) + m * (e2 - e1 * e1);
}

double trace_dx(const SolveTrace& trace, double x) {
  return trace.final().eval_deriv(x);
}

double trace_dxx(const SolveTrace& trace, double x) {
  const GridFunction& f = trace.final();
  if (x <= f.x_min || x >= f.x_max) return 0.0;
  const double h = f.h();
  int i = static_cast<int>(std::lround((x - f.x_min) / h));
  i = std::clamp(i, 2, f.n - 3);
  return (-f.values[i + 2] + 16.0 * f.values[i + 1] - 30.0 * f.values[i] +
          16.0 * f.values[i - 1] - f.values[i - 2]) /
         (12.0 * h * h);
}

double pde_residual(const InitialCondition& phi, const StepParam& a,
                    const SolverConfig& cfg, const HermiteRule& rule,
                    std::span<const std::pair<double, double>> samples_xt) {
  double dt_min = 1.0;
  for (std::size_t j = 0; j < a.num_intervals(); ++j)
    dt_min = std::min(dt_min, a.interval_end(j) - a.interval_start(j));

  std::map<double, std::array<GridFunction, 3>> cache;  // t -> (F-, F, F+)
  double worst = 0.0;
  for (const auto& [x, t] : samples_xt) {
    // Samples must sit strictly inside an interval of a.
    std::size_t j = 0;
    while (j < a.num_intervals() && t > a.interval_end(j)) ++j;
    if (j >= a.num_intervals() || t <= a.interval_start(j) + 1e-12 ||
        t >= a.interval_end(j) - 1e-12)
      throw std::invalid_argument("pde_residual: sample time not strictly inside an interval");
    const double delta = std::min({dt_min / 10.0, 0.01,
                                   (t - a.interval_start(j)) / 2.0,
                                   (a.interval_end(j) - t) / 2.0});

    auto it = cache.find(t);
    if (it == cache.end()) {
      std::array<GridFunction, 3> fs{solve(phi, a, cfg, rule, t - delta).final(),
                                     solve(phi, a, cfg, rule, t).final(),
                                     solve(phi, a, cfg, rule, t + delta).final()};
      it = cache.emplace(t, std::move(fs)).first;
    }
    const auto& [fm, fc, fp] = it->second;

    const double h = fc.h();
    int i = static_cast<int>(std::lround((x - fc.x_min) / h));
    if (i < 2 || i > fc.n - 3)
      throw std::invalid_argument("pde_residual: sample x not interior to the grid");

    const double ft = (fp.values[i] - fm.values[i]) / (2.0 * delta);
    const double fx = (-fc.values[i + 2] + 8.0 * fc.values[i + 1] -
                       8.0 * fc.values[i - 1] + fc.values[i - 2]) /
                      (12.0 * h);
    const double fxx = (-fc.values[i + 2] + 16.0 * fc.values[i + 1] -
                        30.0 * fc.values[i] + 16.0 * fc.values[i - 1] -
                        fc.values[i - 2]) /
                       (12.0 * h * h);
    const double res = ft - 0.5 * (fxx + a(t) * fx * fx);
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

}  // namespace parisi
