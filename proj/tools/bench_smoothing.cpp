// Benchmark of the Gaussian smoothing kernel: serial reference vs the
// OpenMP-parallel version, plus a bitwise agreement check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "parisi/solver.hpp"

using namespace parisi;

namespace {

double time_ms(int reps, const GridFunction& f0, double m, double dt,
               const HermiteRule& rule, bool parallel) {
  using clock = std::chrono::steady_clock;
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = clock::now();
    const GridFunction out = parallel ? smooth_step(f0, m, dt, rule, true)
                                      : smooth_step_serial(f0, m, dt, rule);
    const auto t1 = clock::now();
    // keep the result alive so the compiler cannot drop the work
    volatile double sink = out.values[out.n / 2];
    (void)sink;
    best = std::min(best,
                    std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  int reps = 5;
  double h = 0.01;
  int order = 80;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--reps") reps = std::atoi(argv[i + 1]);
    else if (flag == "--h") h = std::atof(argv[i + 1]);
    else if (flag == "--order") order = std::atoi(argv[i + 1]);
  }

  SolverConfig cfg;
  cfg.h = h;
  cfg.quad_order = order;
  const HermiteRule rule = HermiteRule::make(order);
  const InitialCondition phi = make_log_cosh();

  const SolveTrace warm = solve(phi, StepParam::constant(0.6), cfg, rule, 0.25);
  const GridFunction& f0 = warm.final();

  const double m = 0.6, dt = 0.25;
  const GridFunction serial = smooth_step_serial(f0, m, dt, rule);
  const GridFunction parallel = smooth_step(f0, m, dt, rule, true);

  int mismatches = 0;
  for (int i = 0; i < serial.n; ++i)
    if (serial.values[i] != parallel.values[i] ||
        serial.derivs[i] != parallel.derivs[i])
      ++mismatches;

  const double ms_serial = time_ms(reps, f0, m, dt, rule, false);
  const double ms_parallel = time_ms(reps, f0, m, dt, rule, true);

  std::printf("grid points:      %d\n", f0.n);
  std::printf("quadrature order: %d\n", order);
  std::printf("serial:           %.3f ms\n", ms_serial);
  std::printf("parallel:         %.3f ms\n", ms_parallel);
  std::printf("speedup:          %.2fx\n", ms_serial / ms_parallel);
  std::printf("bitwise match:    %s\n", mismatches == 0 ? "yes" : "NO");
  return mismatches == 0 ? 0 : 1;
}
