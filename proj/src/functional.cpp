#include "parisi/functional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace parisi {

double parisi_functional(const InitialCondition& phi, double x,
                         const StepParam& a, const SolverConfig& cfg,
                         const HermiteRule& rule) {
  return solve(phi, a, cfg, rule).final().eval(x);
}

double parisi_value(const ParisiProblem& problem, const StepParam& a,
                    const SolverConfig& cfg, const HermiteRule& rule) {
  if (!(problem.beta > 0.0))
    throw std::invalid_argument("parisi_value: beta must be positive");
  constexpr double kLog2 = 0.69314718055994530942;
  return kLog2 +
         parisi_functional(problem.phi, problem.beta * problem.h, a, cfg, rule) -
         0.5 * problem.beta * problem.beta * penalty_integral(a);
}

namespace {

double logistic(double y) { return 1.0 / (1.0 + std::exp(-y)); }

StepParam decode(const std::vector<double>& theta, int k, bool constrain_to_M) {
  std::vector<double> vals(k + 1);
  for (int j = 0; j <= k; ++j) vals[j] = logistic(theta[j]);
  if (constrain_to_M) std::sort(vals.begin(), vals.end(), std::greater<>());
  std::vector<double> bps(k);
  for (int i = 0; i < k; ++i) {
    // Keep breakpoints strictly inside (0,1) with a small margin.
    bps[i] = 0.001 + 0.998 * logistic(theta[k + 1 + i]);
  }
  std::sort(bps.begin(), bps.end());
  for (int i = 1; i < k; ++i)
    if (bps[i] - bps[i - 1] < 1e-10) bps[i] = bps[i - 1] + 1e-10;
  return StepParam::make(bps, vals);
}

struct NelderMead {
  // Lagarias coefficients.
  static constexpr double rho = 1.0, chi = 2.0, gamma = 0.5, sigma = 0.5;

  template <typename F>
  static std::pair<std::vector<double>, double> run(
      const F& f, std::vector<double> start, double step, int max_iter,
      double tol, int& iterations, bool& converged) {
    const std::size_t dim = start.size();
    std::vector<std::vector<double>> verts(dim + 1, start);
    std::vector<double> fv(dim + 1);
    for (std::size_t i = 0; i < dim; ++i) verts[i + 1][i] += step;
    for (std::size_t i = 0; i <= dim; ++i) fv[i] = f(verts[i]);

    auto order = [&] {
      std::vector<std::size_t> idx(dim + 1);
      for (std::size_t i = 0; i <= dim; ++i) idx[i] = i;
      std::stable_sort(idx.begin(), idx.end(),
                       [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
      std::vector<std::vector<double>> nv(dim + 1);
      std::vector<double> nf(dim + 1);
      for (std::size_t i = 0; i <= dim; ++i) {
        nv[i] = verts[idx[i]];
        nf[i] = fv[idx[i]];
      }
      verts = std::move(nv);
      fv = std::move(nf);
    };

    converged = false;
    int it = 0;
    for (; it < max_iter; ++it) {
      order();
      double diam = 0.0;
      for (std::size_t i = 1; i <= dim; ++i)
        for (std::size_t d = 0; d < dim; ++d)
          diam = std::max(diam, std::abs(verts[i][d] - verts[0][d]));
      if (diam < tol) {
        converged = true;
        break;
      }

      std::vector<double> centroid(dim, 0.0);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t d = 0; d < dim; ++d) centroid[d] += verts[i][d] / dim;

      auto blend = [&](double coef) {
        std::vector<double> p(dim);
        for (std::size_t d = 0; d < dim; ++d)
          p[d] = centroid[d] + coef * (centroid[d] - verts[dim][d]);
        return p;
      };

      const auto xr = blend(rho);
      const double fr = f(xr);
      if (fr < fv[0]) {
        const auto xe = blend(rho * chi);
        const double fe = f(xe);
        if (fe < fr) {
          verts[dim] = xe;
          fv[dim] = fe;
        } else {
          verts[dim] = xr;
          fv[dim] = fr;
        }
      } else if (fr < fv[dim - 1]) {
        verts[dim] = xr;
        fv[dim] = fr;
      } else {
        const bool outside = fr < fv[dim];
        const auto xc = blend(outside ? rho * gamma : -gamma);
        const double fc = f(xc);
        if ((outside && fc <= fr) || (!outside && fc < fv[dim])) {
          verts[dim] = xc;
          fv[dim] = fc;
        } else {
          for (std::size_t i = 1; i <= dim; ++i) {
            for (std::size_t d = 0; d < dim; ++d)
              verts[i][d] = verts[0][d] + sigma * (verts[i][d] - verts[0][d]);
            fv[i] = f(verts[i]);
          }
        }
      }
    }
    order();
    iterations = it;
    return {verts[0], fv[0]};
  }
};

}  // namespace

MinimizeResult minimize(const ParisiProblem& problem,
                        const OptimizerConfig& opt, const SolverConfig& cfg,
                        const HermiteRule& rule) {
  if (problem.k < 1) throw std::invalid_argument("minimize: k must be >= 1");
  const int dim = 2 * problem.k + 1;

  MinimizeResult result;
  result.best_value = std::numeric_limits<double>::infinity();

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);

  int total_iter = 0;
  bool any_converged = false;
  for (int s = 0; s < opt.starts; ++s) {
    std::vector<double> start(dim);
    for (double& v : start) v = dist(rng);

    auto objective = [&](const std::vector<double>& theta) {
      return parisi_value(problem,
                          decode(theta, problem.k, opt.constrain_to_M), cfg,
                          rule);
    };

    int iters = 0;
    bool conv = false;
    const auto [theta, value] = NelderMead::run(objective, start, 0.5,
                                                opt.max_iter, opt.simplex_tol,
                                                iters, conv);
    total_iter += iters;
    any_converged = any_converged || conv;

    if (value < result.best_value) {
      result.best_value = value;
      result.best_param = decode(theta, problem.k, opt.constrain_to_M);
      result.history.push_back({value, result.best_param});
    }
  }
  result.iterations = total_iter;
  result.converged = any_converged;
  return result;
}

}  // namespace parisi
