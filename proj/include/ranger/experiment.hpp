#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ranger/correlation.hpp"
#include "ranger/montecarlo.hpp"

namespace ranger::cli {

/// Sweep axes. `a` and `b` are zipped into (a, b) pairs when both are given
/// (so dependent settings like b = 1 - a stay expressible); every other axis
/// combines by Cartesian product.
struct SweepAxes {
  std::vector<double> a;
  std::vector<double> b;
  std::vector<uint64_t> pairs;
  std::vector<double> reflectivity;
  std::vector<int> hit_index;

  bool empty() const {
    return a.empty() && b.empty() && pairs.empty() && reflectivity.empty() && hit_index.empty();
  }
};

/// One experiment as described by a flat key=value config file.
struct ExperimentConfig {
  RunConfig run;
  double detect_k = 5.0;
  int min_baseline = 50;
  bool want_csv = true;
  bool want_json = true;
  bool want_svg = true;
  std::optional<uint64_t> file_seed; // seed key from the file, if present
  SweepAxes sweep;

  void validate() const;
};

/// Parse a config file: one `key = value` per line, `#` starts a comment.
/// Unknown keys and malformed values raise ParseError with the line number.
ExperimentConfig parse_experiment_file(const std::string &path);

/// Same parser over an in-memory string (the file loader calls this).
ExperimentConfig parse_experiment_text(const std::string &text);

/// Seed priority: command-line flag, then config file, then the RANGER_SEED
/// environment variable, then kDefaultSeed.
inline constexpr uint64_t kDefaultSeed = 1;
uint64_t resolve_seed(std::optional<uint64_t> cli_seed, std::optional<uint64_t> file_seed);

/// Canonical key/value view of the effective configuration, in the same flat
/// form the config file uses. Feeds the report echo and the config hash.
std::vector<std::pair<std::string, std::string>> config_items(const ExperimentConfig &config);

/// Stable fingerprint of the effective run + analysis parameters, as a
/// 16-digit hex string. Seed and output formats are excluded: the seed so
/// reruns with --seed can be matched to their base config, the formats
/// because they are presentation only.
std::string config_hash(const ExperimentConfig &config);

/// Expand the sweep axes into concrete experiment points.
std::vector<ExperimentConfig> expand_sweep(const ExperimentConfig &base);

} // namespace ranger::cli
