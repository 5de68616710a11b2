#include "ranger/montecarlo.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ranger/errors.hpp"

namespace ranger {

void RunConfig::validate() const {
  scheme.validate();
  bias.validate();
  if (penetration_width < 0) {
    throw ValidationError("penetration_width must be >= 0");
  }
  if (hit_index) {
    if (*hit_index < 1 || *hit_index > scheme.locations) {
      throw ValidationError("hit_index " + std::to_string(*hit_index) + " outside [1, " +
                            std::to_string(scheme.locations) + "]");
    }
    if (*hit_index + penetration_width > scheme.locations) {
      throw ValidationError("hit_index + penetration_width exceeds the last location");
    }
  }
}

void CountsTable::merge_from(const CountsTable &other) {
  for (size_t i = 0; i < h_.size(); ++i) {
    h_[i] += other.h_[i];
    v_[i] += other.v_[i];
  }
}

uint64_t CountsTable::total() const {
  uint64_t sum = 0;
  for (size_t i = 0; i < h_.size(); ++i) {
    sum += h_[i] + v_[i];
  }
  return sum;
}

namespace {

/// Quantities shared by every pair of one run, precomputed once.
struct EngineContext {
  const RunConfig &cfg;
  BellPairSpec bell;
  OutcomeDistribution post;
  double total_mass; // detection probability of a single pair
  int first_location;
  int width;

  explicit EngineContext(const RunConfig &config)
      : cfg(config),
        post(post_hit_distribution(config.bias)),
        total_mass(total_detection_mass(config.scheme)),
        first_location(config.scheme.first_location()),
        width(config.scheme.active_locations()) {}
};

std::optional<DetectionEvent> simulate_pair(const EngineContext &ctx, uint64_t pair_index) {
  PairRng rng(ctx.cfg.seed, pair_index);

  std::optional<int> location;
  if (ctx.cfg.sampling_mode == SamplingMode::ChainDecay) {
    location = sample_detection(ctx.cfg.scheme, pair_index, ctx.cfg.pairs, rng);
  } else {
    if (rng.next_double() < ctx.total_mass) {
      const int slot = std::min(static_cast<int>(rng.next_double() * ctx.width), ctx.width - 1);
      location = ctx.first_location + slot;
    }
  }
  if (!location) {
    return std::nullopt;
  }

  Polarization outcome;
  bool after_hit = false;
  if (ctx.cfg.hit_index) {
    int hit = *ctx.cfg.hit_index;
    if (ctx.cfg.penetration_width > 0) {
      hit += static_cast<int>(rng.next_double() * (ctx.cfg.penetration_width + 1));
    }
    after_hit = *location >= hit; // detection at the hit location already sees the collapse
  }
  if (after_hit) {
    outcome = sample_outcome(ctx.post, rng);
  } else {
    outcome = pre_hit_outcome(ctx.bell, rng).second;
  }
  return DetectionEvent{pair_index, *location, outcome};
}

} // namespace

RunResult run_serial(const RunConfig &config) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();

  const EngineContext ctx(config);
  RunResult result;
  result.counts = CountsTable(config.scheme.locations);
  uint64_t detected = 0;

  for (uint64_t p = 0; p < config.pairs; ++p) {
    if (const auto event = simulate_pair(ctx, p)) {
      result.counts.add(event->location, event->outcome);
      ++detected;
      if (config.log_events) {
        result.events.push_back(*event);
      }
    }
  }

  const auto t1 = std::chrono::steady_clock::now();
  result.summary = {config.pairs, detected,
                    config.pairs ? static_cast<double>(detected) / config.pairs : 0.0,
                    std::chrono::duration<double>(t1 - t0).count(), config.seed};
  return result;
}

RunResult run(const RunConfig &config) {
#ifndef _OPENMP
  return run_serial(config);
#else
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();

  const EngineContext ctx(config);
  const int threads = std::max(1, omp_get_max_threads());
  const uint64_t chunk = config.pairs == 0 ? 0 : (config.pairs + threads - 1) / threads;

  std::vector<CountsTable> tables(threads, CountsTable(config.scheme.locations));
  std::vector<EventLog> logs(threads);
  std::vector<uint64_t> detected(threads, 0);

#pragma omp parallel num_threads(threads)
  {
    const int t = omp_get_thread_num();
    const uint64_t begin = std::min<uint64_t>(config.pairs, t * chunk);
    const uint64_t end = std::min<uint64_t>(config.pairs, begin + chunk);
    for (uint64_t p = begin; p < end; ++p) {
      if (const auto event = simulate_pair(ctx, p)) {
        tables[t].add(event->location, event->outcome);
        ++detected[t];
        if (config.log_events) {
          logs[t].push_back(*event);
        }
      }
    }
  }

  RunResult result;
  result.counts = CountsTable(config.scheme.locations);
  uint64_t total_detected = 0;
  // Blocks are contiguous in pair index, so merging in thread order keeps the
  // event log sorted and the table identical for every thread count.
  for (int t = 0; t < threads; ++t) {
    result.counts.merge_from(tables[t]);
    total_detected += detected[t];
    result.events.insert(result.events.end(), logs[t].begin(), logs[t].end());
  }

  const auto t1 = std::chrono::steady_clock::now();
  result.summary = {config.pairs, total_detected,
                    config.pairs ? static_cast<double>(total_detected) / config.pairs : 0.0,
                    std::chrono::duration<double>(t1 - t0).count(), config.seed};
  return result;
#endif
}

CountsTable replay_counts(const EventLog &log, int locations) {
  CountsTable table(locations);
  for (size_t i = 0; i < log.size(); ++i) {
    const auto &event = log[i];
    if (event.location < 1 || event.location > locations) {
      throw ParseError("event record " + std::to_string(i + 1) + ": location " +
                       std::to_string(event.location) + " outside [1, " +
                       std::to_string(locations) + "]");
    }
    table.add(event.location, event.outcome);
  }
  return table;
}

void write_event_log(const std::string &path, const EventLog &log) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open event log for writing: " + path);
  }
  for (const auto &event : log) {
    out << event.pair_index << ' ' << event.location << ' ' << polarization_char(event.outcome)
        << '\n';
  }
  if (!out.good()) {
    throw IoError("failed writing event log: " + path);
  }
}

EventLog read_event_log(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open event log: " + path);
  }
  EventLog log;
  std::string line;
  uint64_t record = 0;
  while (std::getline(in, line)) {
    ++record;
    if (line.empty()) {
      continue;
    }
    unsigned long long pair = 0;
    int location = 0;
    char outcome = 0;
    char trailing = 0;
    const int got = std::sscanf(line.c_str(), "%llu %d %c %c", &pair, &location, &outcome, &trailing);
    if (got != 3 || (outcome != 'H' && outcome != 'V')) {
      throw ParseError("event log record " + std::to_string(record) + ": malformed line '" +
                       line + "'");
    }
    log.push_back({pair, location, outcome == 'H' ? Polarization::H : Polarization::V});
  }
  return log;
}

} // namespace ranger
