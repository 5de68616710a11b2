// Compares the OpenMP engine against the serial reference on the standard
// hit-at-600 workload: the two must produce identical tables, and the parallel
// engine must sustain the 1e6 pairs/s regression floor.

#include <cstdio>
#include <cstdlib>

#include "ranger/montecarlo.hpp"

int main() {
  ranger::RunConfig config;
  config.pairs = 2000000;
  config.scheme.variant = ranger::SchemeVariant::ChainOfSplitters;
  config.scheme.locations = 1000;
  config.scheme.reflectivity = 0.001;
  config.scheme.segment_path = 0.1;
  config.bias = {1.0, 0.0};
  config.hit_index = 600;
  config.seed = 42;

  const ranger::RunResult serial = ranger::run_serial(config);
  const ranger::RunResult parallel = ranger::run(config);

  if (!(serial.counts == parallel.counts)) {
    std::fprintf(stderr, "FAIL: serial and parallel tables differ\n");
    return EXIT_FAILURE;
  }

  const double serial_rate = config.pairs / serial.summary.wall_time_s;
  const double parallel_rate = config.pairs / parallel.summary.wall_time_s;
  std::printf("pairs                %llu\n", static_cast<unsigned long long>(config.pairs));
  std::printf("serial               %8.3f s  (%.3g pairs/s)\n", serial.summary.wall_time_s,
              serial_rate);
  std::printf("parallel             %8.3f s  (%.3g pairs/s)\n", parallel.summary.wall_time_s,
              parallel_rate);
  std::printf("speedup              %8.2fx\n",
              serial.summary.wall_time_s / parallel.summary.wall_time_s);
  std::printf("tables identical     yes\n");

  if (parallel_rate < 1e6) {
    std::fprintf(stderr, "FAIL: throughput %.3g pairs/s below the 1e6 floor\n", parallel_rate);
    return EXIT_FAILURE;
  }
  return EXIT_SUCCESS;
}
