// Acceptance gate: every release-blocking behavior, one PASS/FAIL line per
// criterion. Exits nonzero when any criterion fails. argv[1] must be the path
// to the ranger CLI binary (criterion 10 drives the real executable).

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "ranger/correlation.hpp"
#include "ranger/errors.hpp"
#include "ranger/montecarlo.hpp"
#include "ranger/quantum.hpp"
#include "ranger/rng.hpp"
#include "ranger/scheme.hpp"

namespace fs = std::filesystem;
using namespace ranger;

namespace {

int g_failures = 0;

void report(int number, const char *name, bool pass, const std::string &detail) {
  std::printf("[%s] %2d %-24s %s\n", pass ? "PASS" : "FAIL", number, name, detail.c_str());
  if (!pass) {
    ++g_failures;
  }
}

RunConfig fig4_config(uint64_t seed, BiasModel bias = {1.0, 0.0},
                      SamplingMode mode = SamplingMode::ChainDecay) {
  RunConfig config;
  config.pairs = 1000000;
  config.scheme.variant = SchemeVariant::ChainOfSplitters;
  config.scheme.locations = 1000;
  config.scheme.reflectivity = 0.001;
  config.scheme.segment_path = 0.1;
  config.bias = bias;
  config.hit_index = 600;
  config.seed = seed;
  config.sampling_mode = mode;
  return config;
}

std::string fmt(const char *format, ...) {
  char buf[256];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

// ---- criteria 1 to 4 share the 20 standard-seed runs -----------------------

struct Fig4Run {
  RunResult result;
  HitReport hit;
};

std::vector<Fig4Run> run_fig4_seeds(int count) {
  std::vector<Fig4Run> runs;
  runs.reserve(count);
  for (int seed = 1; seed <= count; ++seed) {
    Fig4Run entry;
    entry.result = run(fig4_config(seed));
    entry.hit = detect_hit(g_series(entry.result.counts));
    runs.push_back(std::move(entry));
  }
  return runs;
}

void criterion_1_fig4(const std::vector<Fig4Run> &runs) {
  int located = 0;
  bool strength_ok = true;
  double worst_margin = 1e300;
  double slowest = 0.0;
  for (const Fig4Run &entry : runs) {
    if (entry.hit.estimated_hit_location && *entry.hit.estimated_hit_location >= 598 &&
        *entry.hit.estimated_hit_location <= 602) {
      ++located;
    }
    const double needed = 20.0 * entry.hit.baseline_mean + 5.0 * entry.hit.baseline_std;
    worst_margin = std::min(worst_margin, entry.hit.g_hit - needed);
    strength_ok = strength_ok && entry.hit.g_hit >= needed;
    slowest = std::max(slowest, entry.result.summary.wall_time_s);
  }
  const bool pass = located >= 19 && strength_ok && slowest <= 10.0;
  report(1, "fig4-reproduction", pass,
         fmt("located %d/20 in [598,602], worst g_hit margin %+.1f, slowest run %.2fs", located,
             worst_margin, slowest));
}

void criterion_2_null() {
  int quiet = 0;
  for (int seed = 1; seed <= 100; ++seed) {
    const RunResult result = run(fig4_config(seed, {0.5, 0.5}));
    const HitReport hit = detect_hit(g_series(result.counts));
    quiet += hit.crossing_index ? 0 : 1;
  }
  report(2, "null-no-detection", quiet >= 95, fmt("quiet in %d/100 null runs (need >= 95)", quiet));
}

void criterion_3_efficiency(const std::vector<Fig4Run> &runs) {
  const double expected = -std::expm1(1000.0 * std::log1p(-0.001)); // 1 - 0.999^1000
  const double band = 4.0 * std::sqrt(expected * (1.0 - expected) / 1e6);
  const double observed = runs.front().result.summary.efficiency;
  const bool pass = std::abs(observed - expected) <= band;
  report(3, "detection-efficiency", pass,
         fmt("eta %.5f vs %.5f +/- %.5f", observed, expected, band));
}

void criterion_4_prehit_marginal(const std::vector<Fig4Run> &runs) {
  bool pass = true;
  double worst_pull = 0.0;
  for (const Fig4Run &entry : runs) {
    uint64_t h = 0;
    uint64_t total = 0;
    for (int i = 1; i < 600; ++i) {
      h += entry.result.counts.n_h(i);
      total += entry.result.counts.n_h(i) + entry.result.counts.n_v(i);
    }
    const double fraction = static_cast<double>(h) / static_cast<double>(total);
    const double sigma = std::sqrt(0.25 / static_cast<double>(total));
    worst_pull = std::max(worst_pull, std::abs(fraction - 0.5) / sigma);
    pass = pass && std::abs(fraction - 0.5) <= 4.0 * sigma;
  }
  report(4, "prehit-marginal", pass,
         fmt("pooled H-fraction within 4 sigma of 1/2 for all 20 seeds (worst pull %.2f)",
             worst_pull));
}

void criterion_5_bias_plateau() {
  const RunConfig config = fig4_config(1, {0.7, 0.3}, SamplingMode::UniformLocation);
  const RunResult result = run(config);
  const double plateau = post_hit_plateau(g_series(result.counts), config.hit_index);

  // Closed form from expected per-location counts: n = N * (1 - (1-R)^M) / M
  // pairs per location, split (p_h, p_v) = (0.7, 0.3) after the hit, so
  // g = |0.7 n / 2 - 0.3 n / 2| = 0.2 n.
  const double mass = -std::expm1(1000.0 * std::log1p(-0.001));
  const double per_location = 1e6 * mass / 1000.0;
  const double expected = 0.2 * per_location;
  const double relative = std::abs(plateau - expected) / expected;
  report(5, "bias-plateau", relative <= 0.05,
         fmt("plateau %.2f vs closed form %.2f (off by %.2f%%)", plateau, expected,
             100.0 * relative));
}

void criterion_6_linear_scaling() {
  RunConfig small = fig4_config(1, {1.0, 0.0}, SamplingMode::UniformLocation);
  small.pairs = 100000;
  RunConfig large = small;
  large.pairs = 1000000;
  const auto points = snr_scaling({small, large});
  const double ratio = points[1].plateau / points[0].plateau;
  report(6, "linear-signal-scaling", ratio >= 9.0 && ratio <= 11.0,
         fmt("plateau(1e6)/plateau(1e5) = %.3f (need [9, 11])", ratio));
}

void criterion_7_oracle_equivalence() {
  PairRng gen(20260814, 0);
  bool pass = true;
  std::string first_failure;
  for (int trial = 0; trial < 10; ++trial) {
    RunConfig config;
    config.pairs = 1000 + gen.next_u64() % 9001;        // N <= 1e4
    config.scheme.locations = 10 + gen.next_u64() % 41; // M <= 50
    config.scheme.reflectivity = 0.01 + 0.3 * gen.next_double();
    config.scheme.segment_path = 0.1;
    config.bias.a = gen.next_double();
    config.bias.b = (1.0 - config.bias.a) * gen.next_double();
    if (gen.next_double() < 0.8) {
      config.hit_index = 1 + static_cast<int>(gen.next_u64() % config.scheme.locations);
    }
    config.sampling_mode =
        gen.next_double() < 0.5 ? SamplingMode::ChainDecay : SamplingMode::UniformLocation;
    config.seed = gen.next_u64();
    config.log_events = true;

    const RunResult result = run(config);
    const CountsTable replayed = replay_counts(result.events, config.scheme.locations);
    if (!(replayed == result.counts)) {
      pass = false;
      first_failure = fmt("trial %d: replay table mismatch", trial);
      break;
    }
    const CorrelationSeries streamed = g_series(result.counts);
    const CorrelationSeries oracle = g_series(replayed);
    if (streamed.values != oracle.values) {
      pass = false;
      first_failure = fmt("trial %d: g_series mismatch", trial);
      break;
    }
  }
  report(7, "oracle-equivalence", pass,
         pass ? "10/10 randomized runs: replayed table and g_series exact" : first_failure);
}

void criterion_8_gpol_exhaustive() {
  bool pass = true;
  for (uint64_t x = 0; x <= 50 && pass; ++x) {
    for (uint64_t y = 0; y <= 50 && pass; ++y) {
      const double g = g_pol(x, y);
      const double direct =
          x + y == 0 ? 0.0
                     : static_cast<double>(x) * static_cast<double>(y) / static_cast<double>(x + y);
      pass = g == direct && g <= static_cast<double>(std::min(x, y));
    }
  }
  report(8, "gpol-exhaustive", pass, "51x51 grid vs direct evaluation and min bound");
}

void criterion_9_symmetry_suite() {
  // H/V swap invariance on a real run table.
  RunConfig config = fig4_config(7, {0.8, 0.1});
  config.pairs = 200000;
  config.log_events = true;
  const RunResult result = run(config);
  CountsTable swapped(config.scheme.locations);
  for (const DetectionEvent &event : result.events) {
    swapped.add(event.location,
                event.outcome == Polarization::H ? Polarization::V : Polarization::H);
  }
  const bool swap_ok = g_series(result.counts).values == g_series(swapped).values;

  // Mixture flatness over the 0.05-step simplex.
  bool mixture_ok = true;
  for (int ia = 0; ia <= 20 && mixture_ok; ++ia) {
    for (int ib = 0; ib + ia <= 20 && mixture_ok; ++ib) {
      const InteractionMixture m{ia * 0.05, ib * 0.05, 1.0 - ia * 0.05 - ib * 0.05, 0.9 * ia - ib};
      mixture_ok = std::abs(mixture_marginal(m) - 0.5) <= 1e-12;
    }
  }

  // Exact phase invariance of the pre-hit sampler.
  bool phase_ok = true;
  for (uint64_t pair = 0; pair < 20000 && phase_ok; ++pair) {
    PairRng a(3, pair);
    PairRng b(3, pair);
    phase_ok = pre_hit_outcome(BellPairSpec{0.0}, a) == pre_hit_outcome(BellPairSpec{2.7}, b);
  }

  report(9, "symmetry-suite", swap_ok && mixture_ok && phase_ok,
         fmt("swap %s, mixture grid %s, phase %s", swap_ok ? "ok" : "BROKEN",
             mixture_ok ? "ok" : "BROKEN", phase_ok ? "ok" : "BROKEN"));
}

std::string slurp(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void criterion_10_cli_determinism(const std::string &cli) {
  const fs::path dir = fs::temp_directory_path() / "ranger_acceptance" / "threads";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "fig4.cfg");
    cfg << "pairs = 1000000\nscheme = chain\nlocations = 1000\nreflectivity = 0.001\n"
        << "segment_path_m = 0.1\nbias_a = 1.0\nbias_b = 0.0\nhit_index = 600\nseed = 1\n"
        << "out_formats = csv\n";
  }
  bool ran_ok = true;
  for (const char *threads : {"1", "2", "8"}) {
    const std::string cmd = "'" + cli + "' run --config '" + (dir / "fig4.cfg").string() +
                            "' --out '" + (dir / threads).string() + "' --threads " + threads +
                            " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    ran_ok = ran_ok && WIFEXITED(status) && WEXITSTATUS(status) == 0;
  }
  const std::string counts_1 = slurp(dir / "1" / "counts.csv");
  const bool identical = ran_ok && !counts_1.empty() && counts_1 == slurp(dir / "2" / "counts.csv") &&
                         counts_1 == slurp(dir / "8" / "counts.csv");
  report(10, "cli-thread-determinism", identical,
         ran_ok ? "counts.csv byte-identical for --threads 1/2/8"
                : "CLI run failed; see artifacts under " + dir.string());
}

void criterion_11_bounded_range() {
  int within = 0;
  for (int seed = 1; seed <= 20; ++seed) {
    RunConfig config = fig4_config(seed);
    config.pairs = 100000;
    config.scheme.window = SchemeConfig::Window{900, 1000};
    config.hit_index = 950;
    const RunResult result = run(config);
    const HitReport hit = detect_hit(g_series(result.counts), 5.0, 50, config.scheme.window);
    if (hit.estimated_hit_location && std::abs(*hit.estimated_hit_location - 950) <= 2) {
      ++within;
    }
  }
  report(11, "bounded-range", within >= 18,
         fmt("estimated within +/-2 of 950 in %d/20 windowed runs (need >= 18)", within));
}

void criterion_12_budget_arithmetic() {
  const bool pass = required_locations(100.0, 0.1) == 1000 &&
                    required_locations(100.0, 0.01) == 10000;
  report(12, "budget-arithmetic", pass, "required_locations(100, 0.1/0.01) = 1000/10000 exact");
}

} // namespace

int main(int argc, char **argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: ranger_acceptance <path-to-ranger-cli>\n");
    return 2;
  }
  const std::string cli = argv[1];

  const std::vector<Fig4Run> fig4_runs = run_fig4_seeds(20);
  criterion_1_fig4(fig4_runs);
  criterion_2_null();
  criterion_3_efficiency(fig4_runs);
  criterion_4_prehit_marginal(fig4_runs);
  criterion_5_bias_plateau();
  criterion_6_linear_scaling();
  criterion_7_oracle_equivalence();
  criterion_8_gpol_exhaustive();
  criterion_9_symmetry_suite();
  criterion_10_cli_determinism(cli);
  criterion_11_bounded_range();
  criterion_12_budget_arithmetic();

  if (g_failures == 0) {
    std::printf("all 12 acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", g_failures);
  return 1;
}
