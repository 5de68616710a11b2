#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ranger/quantum.hpp"
#include "ranger/scheme.hpp"

namespace ranger {

/// How detected pairs are distributed over locations. ChainDecay is the
/// faithful scheme model (geometric thinning along the splitter chain, block
/// schedule for the moving analyzer). UniformLocation keeps each variant's
/// total detection mass but spreads detections uniformly over the
/// instrumented locations, giving flat per-location statistics.
enum class SamplingMode : uint8_t { ChainDecay, UniformLocation };

/// Full specification of one simulation run.
struct RunConfig {
  uint64_t pairs = 0; // N emitted pairs
  SchemeConfig scheme;
  BiasModel bias;
  std::optional<int> hit_index;  // nullopt: no target in the beam
  int penetration_width = 0;     // per-pair hit drawn uniformly from [hit, hit+width]
  uint64_t seed = 1;
  SamplingMode sampling_mode = SamplingMode::ChainDecay;
  bool log_events = false;

  void validate() const;
};

/// Per-location H/V tallies, 1-based like every location index here.
class CountsTable {
public:
  CountsTable() = default;
  explicit CountsTable(int locations) : h_(locations, 0), v_(locations, 0) {}

  int locations() const { return static_cast<int>(h_.size()); }
  uint64_t n_h(int i) const { return h_[i - 1]; }
  uint64_t n_v(int i) const { return v_[i - 1]; }

  void add(int i, Polarization p) { (p == Polarization::H ? h_ : v_)[i - 1] += 1; }

  /// Count sums are associative and commutative, so merge order never
  /// changes the result.
  void merge_from(const CountsTable &other);

  uint64_t total() const;

  bool operator==(const CountsTable &) const = default;

private:
  std::vector<uint64_t> h_;
  std::vector<uint64_t> v_;
};

/// Bookkeeping for one completed run.
struct RunSummary {
  uint64_t emitted = 0;
  uint64_t detected = 0;
  double efficiency = 0.0; // detected / emitted, 0 when nothing was emitted
  double wall_time_s = 0.0;
  uint64_t seed = 0;
};

using EventLog = std::vector<DetectionEvent>;

struct RunResult {
  CountsTable counts;
  RunSummary summary;
  EventLog events; // populated only when log_events is set
};

/// Stream all pairs through the scheme and accumulate the counts table.
///
/// Work is sharded over OpenMP threads in contiguous pair-index blocks; each
/// worker fills a private table that is merged by summation, and every pair's
/// randomness comes from a counter-based stream keyed by (seed, pair_index).
/// Identical (config, seed) therefore produce bit-identical results for any
/// thread count.
RunResult run(const RunConfig &config);

/// Single-threaded reference implementation of run(): one plain loop, direct
/// accumulation. Kept for testing the parallel path and as the benchmark
/// baseline; outputs are identical to run().
RunResult run_serial(const RunConfig &config);

/// Rebuild a counts table from a raw event log. Oracle for the streamed
/// accumulation: the result equals the table produced by the run that wrote
/// the log, exactly. Throws ParseError (with the record number) on events
/// whose location falls outside [1, locations].
CountsTable replay_counts(const EventLog &log, int locations);

/// Event-log file format: one detected pair per line, "pair_index location
/// outcome" with outcome H or V, newline-delimited text.
void write_event_log(const std::string &path, const EventLog &log);
EventLog read_event_log(const std::string &path);

} // namespace ranger
