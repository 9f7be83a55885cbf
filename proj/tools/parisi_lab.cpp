// parisi-lab: config-driven experiment runner.
//
// Exit codes: 0 = success / all checks passed, 1 = infrastructure or usage
// error, 2 = a mathematical inequality violation survived refinement.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "json.hpp"

#include "parisi/functional.hpp"
#include "parisi/io.hpp"
#include "parisi/mollify.hpp"
#include "parisi/probe.hpp"
#include "parisi/svg.hpp"

using nlohmann::json;
using namespace parisi;

namespace {

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("malformed config " + path + ": " + e.what());
  }
}

InitialCondition phi_from_config(const json& cfg, const std::string& key = "phi") {
  if (!cfg.contains(key))
    throw std::runtime_error("config: missing initial condition '" + key + "'");
  const json& p = cfg.at(key);
  InitialCondition ic = builtin(p.is_string() ? p.get<std::string>()
                                              : p.at("name").get<std::string>());
  if (p.is_object()) {
    if (p.contains("scale")) ic = scale_ic(p.at("scale").get<double>(), ic);
    if (p.contains("mollify_r"))
      ic = mollify(build_piecewise(ic, p.at("mollify_r").get<int>()));
  }
  return ic;
}

StepParam param_from_config(const json& cfg, const std::string& key) {
  if (!cfg.contains(key))
    throw std::runtime_error("config: missing step parameter '" + key + "'");
  const json& p = cfg.at(key);
  if (p.is_number()) return StepParam::constant(p.get<double>());
  return StepParam::make(p.at("breakpoints").get<std::vector<double>>(),
                         p.at("values").get<std::vector<double>>());
}

SolverConfig solver_from_config(const json& cfg) {
  SolverConfig sc;
  if (cfg.contains("grid")) {
    const json& g = cfg.at("grid");
    sc.x_min = g.value("x_min", sc.x_min);
    sc.x_max = g.value("x_max", sc.x_max);
    sc.h = g.value("h", sc.h);
    sc.quad_order = g.value("quad_order", sc.quad_order);
    sc.parallel = g.value("parallel", sc.parallel);
  }
  return sc;
}

json solver_to_json(const SolverConfig& sc) {
  return {{"x_min", sc.x_min}, {"x_max", sc.x_max},       {"h", sc.h},
          {"quad_order", sc.quad_order}, {"parallel", sc.parallel}};
}

std::vector<double> grid_from_config(const json& cfg, const std::string& key,
                                     std::vector<double> fallback) {
  if (!cfg.contains(key)) return fallback;
  const json& g = cfg.at(key);
  if (g.is_array()) return g.get<std::vector<double>>();
  // {"min":..,"max":..,"count":..} uniform grid
  const double lo = g.at("min").get<double>();
  const double hi = g.at("max").get<double>();
  const int n = g.at("count").get<int>();
  if (n < 1) throw std::runtime_error("config: grid '" + key + "' is empty");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i)
    out[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return out;
}

struct RunContext {
  json cfg;
  std::string out_dir;
  std::uint64_t seed = 0;
};

void write_effective_config(const RunContext& ctx, const json& effective) {
  atomic_write_text(std::filesystem::path(ctx.out_dir) / "effective_config.json",
                    effective.dump(2) + "\n");
}

int cmd_solve(const RunContext& ctx) {
  const InitialCondition phi = phi_from_config(ctx.cfg);
  const StepParam a = param_from_config(ctx.cfg, "param");
  const SolverConfig sc = solver_from_config(ctx.cfg);
  const HermiteRule rule = HermiteRule::make(sc.quad_order);

  const SolveTrace trace = solve(phi, a, sc, rule);
  const GridFunction& f = trace.final();
  std::vector<std::vector<double>> rows;
  rows.reserve(f.n);
  for (int i = 0; i < f.n; ++i)
    rows.push_back({f.x_at(i), f.values[i], f.derivs[i]});
  atomic_write_text(std::filesystem::path(ctx.out_dir) / "solve.csv",
                    to_csv({"x", "F", "dF"}, rows));
  write_effective_config(ctx, {{"command", "solve"},
                               {"phi", phi.name},
                               {"param", json::parse(a.to_json())},
                               {"grid", solver_to_json(sc)}});
  std::cout << "solve: wrote " << f.n << " rows, t = " << f.t << "\n";
  return 0;
}

int cmd_parisi_eval(const RunContext& ctx) {
  ParisiProblem problem{ctx.cfg.value("beta", 1.0), ctx.cfg.value("h", 0.0),
                        phi_from_config(ctx.cfg), 1};
  const StepParam a = param_from_config(ctx.cfg, "param");
  const SolverConfig sc = solver_from_config(ctx.cfg);
  const HermiteRule rule = HermiteRule::make(sc.quad_order);

  const double value = parisi_value(problem, a, sc, rule);
  json result{{"beta", problem.beta},
              {"h", problem.h},
              {"phi", problem.phi.name},
              {"param", json::parse(a.to_json())},
              {"penalty_integral", penalty_integral(a)},
              {"value", value}};
  atomic_write_text(std::filesystem::path(ctx.out_dir) / "parisi_eval.json",
                    result.dump(2) + "\n");
  std::cout << "parisi-eval: value = " << format_double(value) << "\n";
  return 0;
}

int cmd_minimize(const RunContext& ctx) {
  ParisiProblem problem{ctx.cfg.value("beta", 1.0), ctx.cfg.value("h", 0.0),
                        phi_from_config(ctx.cfg), ctx.cfg.value("k", 1)};
  OptimizerConfig opt;
  opt.starts = ctx.cfg.value("starts", opt.starts);
  opt.max_iter = ctx.cfg.value("max_iter", opt.max_iter);
  opt.seed = ctx.seed;
  opt.constrain_to_M = ctx.cfg.value("constrain_to_M", true);
  const SolverConfig sc = solver_from_config(ctx.cfg);
  const HermiteRule rule = HermiteRule::make(sc.quad_order);

  const MinimizeResult res = minimize(problem, opt, sc, rule);

  json history = json::array();
  for (const auto& inc : res.history)
    history.push_back({{"value", inc.value},
                       {"param", json::parse(inc.param.to_json())}});
  json result{{"beta", problem.beta},
              {"h", problem.h},
              {"phi", problem.phi.name},
              {"k", problem.k},
              {"seed", opt.seed},
              {"best_value", res.best_value},
              {"best_param", json::parse(res.best_param.to_json())},
              {"iterations", res.iterations},
              {"converged", res.converged},
              {"in_M", res.best_param.in_M()},
              {"history", history}};
  atomic_write_text(std::filesystem::path(ctx.out_dir) / "minimize.json",
                    result.dump(2) + "\n");
  std::vector<std::vector<double>> rows{{problem.beta, problem.h,
                                         static_cast<double>(problem.k),
                                         res.best_value}};
  atomic_write_text(std::filesystem::path(ctx.out_dir) / "minimize_summary.csv",
                    to_csv({"beta", "h", "k", "best_value"}, rows));
  std::cout << "minimize: best value = " << format_double(res.best_value)
            << (res.converged ? " (converged)" : " (not converged)") << "\n";
  return 0;
}

int write_convexity_report(const RunContext& ctx, const ConvexityReport& report,
                           const std::string& stem, double tol) {
  std::vector<std::vector<double>> rows;
  rows.reserve(report.records.size());
  for (const auto& r : report.records) rows.push_back({r.alpha, r.x, r.gap});
  atomic_write_text(std::filesystem::path(ctx.out_dir) / (stem + ".csv"),
                    to_csv({"alpha", "x", "gap"}, rows));
  const bool pass = report.candidates.empty() && report.min_gap >= -tol;
  std::ostringstream line;
  line << (pass ? "PASS" : "FAIL") << " min_gap=" << format_double(report.min_gap)
       << " candidates=" << report.candidates.size() << "\n";
  atomic_write_text(std::filesystem::path(ctx.out_dir) / (stem + "_summary.txt"),
                    line.str());
  std::cout << stem << ": " << line.str();
  return pass ? 0 : 2;
}

int cmd_convexity_scan(const RunContext& ctx) {
  const InitialCondition phi1 = phi_from_config(ctx.cfg, "phi1");
  const InitialCondition phi2 =
      ctx.cfg.contains("phi2") ? phi_from_config(ctx.cfg, "phi2") : phi1;
  const StepParam a1 = param_from_config(ctx.cfg, "a1");
  const StepParam a2 = param_from_config(ctx.cfg, "a2");
  const auto alphas = grid_from_config(
      ctx.cfg, "alphas", {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0});
  const auto xs = grid_from_config(ctx.cfg, "xs", {-2.0, -1.0, 0.0, 1.0, 2.0});
  const SolverConfig sc = solver_from_config(ctx.cfg);
  const HermiteRule rule = HermiteRule::make(sc.quad_order);
  const double tol = ctx.cfg.value("tolerance", 1e-7);

  const ConvexityReport report =
      one_sided_scan(phi1, phi2, a1, a2, alphas, xs, sc, rule);
  return write_convexity_report(ctx, report, "convexity_scan", tol);
}

int cmd_conjecture_scan(const RunContext& ctx) {
  const InitialCondition phi = phi_from_config(ctx.cfg);
  const auto alphas = grid_from_config(
      ctx.cfg, "alphas", {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0});
  const auto xs = grid_from_config(ctx.cfg, "xs", {-2.0, -1.0, 0.0, 1.0, 2.0});
  const SolverConfig sc = solver_from_config(ctx.cfg);
  const HermiteRule rule = HermiteRule::make(sc.quad_order);
  const double tol = ctx.cfg.value("tolerance", 1e-7);

  ConvexityReport merged;
  merged.min_gap = std::numeric_limits<double>::infinity();
  if (ctx.cfg.contains("a1")) {
    merged = conjecture_scan(phi, param_from_config(ctx.cfg, "a1"),
                             param_from_config(ctx.cfg, "a2"), alphas, xs, sc,
                             rule, tol);
  } else {
    // Randomized crossing pairs.
    const int n_pairs = ctx.cfg.value("random_pairs", 10);
    std::mt19937_64 rng(ctx.seed);
    std::uniform_real_distribution<double> uval(0.0, 1.0);
    std::uniform_real_distribution<double> ubp(0.1, 0.9);
    for (int p = 0; p < n_pairs; ++p) {
      const double t1 = ubp(rng);
      const StepParam a1 = StepParam::make({t1}, {uval(rng), uval(rng)});
      const StepParam a2 = StepParam::make({ubp(rng)}, {uval(rng), uval(rng)});
      ConvexityReport rep = conjecture_scan(phi, a1, a2, alphas, xs, sc, rule, tol);
      merged.records.insert(merged.records.end(), rep.records.begin(),
                            rep.records.end());
      merged.candidates.insert(merged.candidates.end(), rep.candidates.begin(),
                               rep.candidates.end());
      merged.min_gap = std::min(merged.min_gap, rep.min_gap);
    }
    merged.max_violation = std::max(0.0, -merged.min_gap);
  }
  // The conjecture is open: only candidates that survive refinement count as
  // violations.
  std::vector<std::vector<double>> rows;
  for (const auto& r : merged.records) rows.push_back({r.alpha, r.x, r.gap});
  atomic_write_text(std::filesystem::path(ctx.out_dir) / "conjecture_scan.csv",
                    to_csv({"alpha", "x", "gap"}, rows));
  const bool pass = merged.candidates.empty();
  std::ostringstream line;
  line << (pass ? "PASS" : "FAIL") << " min_gap=" << format_double(merged.min_gap)
       << " surviving_candidates=" << merged.candidates.size() << "\n";
  atomic_write_text(
      std::filesystem::path(ctx.out_dir) / "conjecture_scan_summary.txt",
      line.str());
  std::cout << "conjecture-scan: " << line.str();
  return pass ? 0 : 2;
}

int cmd_ineq_suite(const RunContext& ctx) {
  const int count = ctx.cfg.value("count", 50);
  const int quad_order = ctx.cfg.value("quad_order", 60);
  const HermiteRule rule = HermiteRule::make(quad_order);
  std::mt19937_64 rng(ctx.seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  double worst = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < count; ++i) {
    const double scale1 = 0.5 + u01(rng), scale2 = 0.5 + u01(rng);
    const double c1 = u01(rng), c2 = u01(rng);
    const double x = i % 2 == 0 ? 3.0 * (u01(rng) - 0.5) : 2.0 * u01(rng);
    const double sigma = 0.5 + u01(rng);
    const double wa = u01(rng);
    const RealFn psi = [wa](double y) { return wa * std::tanh(y); };
    const auto W = make_gibbs_weight(rule, psi, sigma);
    const RealFn f1 = [scale1, c1](double y) {
      return std::tanh(scale1 * y) + c1 * y;
    };
    const RealFn f2 = [scale2, c2](double y) {
      return scale2 * y + c2 * std::atan(y);
    };
    const double cov = covariance_check(rule, f1, f2, W, x, sigma,
                                        CovarianceVariant::monotone);
    worst = std::min(worst, cov);
    rows.push_back({static_cast<double>(i), x, sigma, cov});
  }
  atomic_write_text(std::filesystem::path(ctx.out_dir) / "ineq_suite.csv",
                    to_csv({"index", "x", "sigma", "covariance"}, rows));
  const bool pass = worst >= -1e-10;
  std::ostringstream line;
  line << (pass ? "PASS" : "FAIL") << " worst_covariance=" << format_double(worst)
       << "\n";
  atomic_write_text(std::filesystem::path(ctx.out_dir) / "ineq_suite_summary.txt",
                    line.str());
  std::cout << "ineq-suite: " << line.str();
  return pass ? 0 : 2;
}

int cmd_max_principle(const RunContext& ctx) {
  const InitialCondition phi1 = phi_from_config(ctx.cfg, "phi1");
  const InitialCondition phi2 =
      ctx.cfg.contains("phi2") ? phi_from_config(ctx.cfg, "phi2") : phi1;
  const double m1 = ctx.cfg.value("m1", 0.4);
  const double m2 = ctx.cfg.value("m2", 0.8);
  const double alpha = ctx.cfg.value("alpha", 0.5);
  MaxPrincipleConfig mp;
  mp.nx = ctx.cfg.value("nx", mp.nx);
  mp.nt = ctx.cfg.value("nt", mp.nt);
  const HermiteRule rule = HermiteRule::make(ctx.cfg.value("quad_order", 60));

  const MaxPrincipleReport report =
      max_principle_scan(phi1, phi2, m1, m2, alpha, mp, rule);

  std::vector<std::vector<double>> rows;
  for (const auto& r : report.near_critical)
    rows.push_back({r.x, r.t, r.F, r.dxF, r.dxxF, r.dtF, r.delta1, r.delta2});
  atomic_write_text(
      std::filesystem::path(ctx.out_dir) / "max_principle.csv",
      to_csv({"x", "t", "F", "dxF", "dxxF", "dtF", "delta1", "delta2"}, rows));
  const bool pass = report.violations == 0 && report.max_F <= 1e-7;
  std::ostringstream line;
  line << (pass ? "PASS" : "FAIL") << " max_F=" << format_double(report.max_F)
       << " c1=" << format_double(report.c1) << " c2=" << format_double(report.c2)
       << " near_critical=" << report.near_critical.size()
       << " violations=" << report.violations << "\n";
  atomic_write_text(
      std::filesystem::path(ctx.out_dir) / "max_principle_summary.txt",
      line.str());
  std::cout << "max-principle: " << line.str();
  return pass ? 0 : 2;
}

int cmd_mollify_demo(const RunContext& ctx) {
  const json& p = ctx.cfg.at("phi");
  InitialCondition phi = builtin(p.is_string() ? p.get<std::string>()
                                               : p.at("name").get<std::string>());
  const int r = ctx.cfg.value("r", 2);
  const PiecewiseLinearApprox s = build_piecewise(phi, r);
  const InitialCondition smooth = mollify(s);

  std::vector<std::vector<double>> rows;
  const double span = r + 2.0;
  const int n = 401;
  for (int i = 0; i < n; ++i) {
    const double x = -span + 2.0 * span * i / (n - 1);
    rows.push_back({x, phi.value(x), s(x), smooth.value(x), smooth.deriv1(x)});
  }
  atomic_write_text(std::filesystem::path(ctx.out_dir) / "mollify_demo.csv",
                    to_csv({"x", "phi", "piecewise", "mollified", "d_mollified"},
                           rows));
  std::cout << "mollify-demo: r=" << r << " T_r=" << s.T_r
            << " eps_r=" << s.eps_r << "\n";
  return 0;
}

int cmd_asymptotics(const RunContext& ctx) {
  const InitialCondition phi = phi_from_config(ctx.cfg);
  const double m = ctx.cfg.value("m", 0.5);
  const auto t_grid = grid_from_config(
      ctx.cfg, "t_grid", {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0});
  const auto x_probes = grid_from_config(ctx.cfg, "x_probes", {-15.0, 15.0});
  const HermiteRule rule = HermiteRule::make(ctx.cfg.value("quad_order", 60));

  const double dev = asymptotic_check(phi, m, t_grid, x_probes, rule);
  std::vector<std::vector<double>> rows{{m, dev}};
  atomic_write_text(std::filesystem::path(ctx.out_dir) / "asymptotics.csv",
                    to_csv({"m", "max_deviation"}, rows));
  const double tol = ctx.cfg.value("tolerance", 1e-6);
  const bool pass = dev <= tol;
  std::cout << "asymptotics: " << (pass ? "PASS" : "FAIL")
            << " max|O-1|=" << format_double(dev) << "\n";
  return pass ? 0 : 2;
}

int cmd_plot(const RunContext& ctx) {
  const std::string csv_path = ctx.cfg.at("csv").get<std::string>();
  const std::string x_col = ctx.cfg.at("x").get<std::string>();
  const std::string y_col = ctx.cfg.at("y").get<std::string>();

  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("plot: cannot read csv " + csv_path);
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("plot: empty csv");
  while (!header.empty() && (header.back() == '\r' || header.back() == '\n'))
    header.pop_back();

  std::vector<std::string> cols;
  std::stringstream hs(header);
  std::string cell;
  while (std::getline(hs, cell, ',')) cols.push_back(cell);
  auto find_col = [&](const std::string& name) {
    for (std::size_t i = 0; i < cols.size(); ++i)
      if (cols[i] == name) return static_cast<int>(i);
    throw std::runtime_error("plot: missing column '" + name + "'");
  };
  const int xi = find_col(x_col), yi = find_col(y_col);

  std::vector<double> xs, ys;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
      line.pop_back();
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::vector<std::string> cells;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    xs.push_back(std::stod(cells.at(xi)));
    ys.push_back(std::stod(cells.at(yi)));
  }
  if (xs.empty()) throw std::runtime_error("plot: csv has no data rows");

  const std::string svg = render_line_chart(xs, ys, x_col, y_col);
  atomic_write_text(std::filesystem::path(ctx.out_dir) / "plot.svg", svg);
  std::cout << "plot: wrote " << xs.size() << " points\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parisi-lab: numerical laboratory for the Parisi functional"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out";
  std::uint64_t seed = 0;

  const std::vector<std::pair<std::string, int (*)(const RunContext&)>> commands{
      {"solve", cmd_solve},
      {"parisi-eval", cmd_parisi_eval},
      {"minimize", cmd_minimize},
      {"convexity-scan", cmd_convexity_scan},
      {"conjecture-scan", cmd_conjecture_scan},
      {"ineq-suite", cmd_ineq_suite},
      {"max-principle", cmd_max_principle},
      {"mollify-demo", cmd_mollify_demo},
      {"asymptotics", cmd_asymptotics},
      {"plot", cmd_plot}};

  for (const auto& [name, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "RNG seed");
  }

  CLI11_PARSE(app, argc, argv);

  if (const char* threads = std::getenv("PARISI_LAB_THREADS")) {
#ifdef _OPENMP
    omp_set_num_threads(std::max(1, std::atoi(threads)));
#endif
  }

  try {
    RunContext ctx{load_config(config_path), out_dir, seed};
    std::filesystem::create_directories(out_dir);
    for (const auto& [name, fn] : commands)
      if (app.get_subcommand(name)->parsed()) return fn(ctx);
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
