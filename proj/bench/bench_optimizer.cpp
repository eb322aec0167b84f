// Serial reference vs OpenMP scoring on generated instances. Both paths must
// return the same result; the benchmark aborts if they do not.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <vector>

#ifdef REHOME_HAVE_OPENMP
#include <omp.h>
#endif

#include "rehome/optimizer.hpp"
#include "support.hpp"

using namespace rehome;

namespace {

double median_seconds(const OptimizationRequest& r, ExecutionPolicy policy, int reps,
                      OptimizationResult& last) {
  std::vector<double> times;
  for (int i = 0; i < reps; ++i) {
    const auto start = std::chrono::steady_clock::now();
    last = optimize(r, policy);
    times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimizer benchmark: serial vs parallel plan scoring"};
  int reps = 5;
  int months = 24;
  int max_moves = 2;
  std::uint64_t seed = 1;
  std::vector<int> sizes{4, 6, 8};
  app.add_option("--reps", reps, "repetitions per measurement")->check(CLI::PositiveNumber);
  app.add_option("--months", months, "forecast length")->check(CLI::PositiveNumber);
  app.add_option("--max-moves", max_moves, "moves per plan")->check(CLI::Range(1, 4));
  app.add_option("--seed", seed, "instance seed");
  app.add_option("--switches", sizes, "switch counts to run; controllers are 3x switches");
  CLI11_PARSE(app, argc, argv);

#ifdef REHOME_HAVE_OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  std::printf("%8s %11s %10s %10s %12s %12s %8s\n", "switches", "controllers", "candidates",
              "plans", "serial_s", "parallel_s", "speedup");

  for (int n : sizes) {
    auto r = testing::bench_instance(seed, n, 3 * n, months);
    r.max_moves = max_moves;
    r.backend = Backend::Exhaustive;
    r.load_threshold = 1.0;

    OptimizationResult serial, parallel;
    const double ts = median_seconds(r, ExecutionPolicy::Serial, reps, serial);
    const double tp = median_seconds(r, ExecutionPolicy::Parallel, reps, parallel);
    if (!(serial == parallel)) {
      std::fprintf(stderr, "serial and parallel results differ for %d switches\n", n);
      return 1;
    }
    std::printf("%8d %11d %10zu %10zu %12.4f %12.4f %8.2f\n", n, 3 * n, serial.stats.candidates,
                serial.stats.plans_examined, ts, tp, tp > 0 ? ts / tp : 0.0);
  }
  return 0;
}
