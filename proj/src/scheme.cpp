#include "ranger/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "ranger/errors.hpp"

namespace ranger {

void SchemeConfig::validate() const {
  if (locations < 2) {
    throw ValidationError("scheme requires at least 2 locations, got " +
                          std::to_string(locations));
  }
  if (variant != SchemeVariant::MovingAnalyzer) {
    if (!(reflectivity > 0.0 && reflectivity < 1.0)) {
      throw ValidationError("reflectivity must lie in (0, 1), got " +
                            std::to_string(reflectivity));
    }
  }
  if (!(measure_probability >= 0.0 && measure_probability <= 1.0)) {
    throw ValidationError("measure_probability must lie in [0, 1], got " +
                          std::to_string(measure_probability));
  }
  if (!(segment_path > 0.0)) {
    throw ValidationError("segment_path must be positive, got " + std::to_string(segment_path));
  }
  if (window) {
    if (!(1 <= window->lo && window->lo < window->hi && window->hi <= locations)) {
      throw ValidationError("window requires 1 <= lo < hi <= locations, got [" +
                            std::to_string(window->lo) + ", " + std::to_string(window->hi) + "]");
    }
  }
}

namespace {

void require_in_bounds(const SchemeConfig &cfg, int i) {
  if (i < 1 || i > cfg.locations) {
    throw ValidationError("location index " + std::to_string(i) + " outside [1, " +
                          std::to_string(cfg.locations) + "]");
  }
}

} // namespace

double detection_probability(const SchemeConfig &cfg, int i) {
  require_in_bounds(cfg, i);
  if (i < cfg.first_location() || i > cfg.last_location()) {
    return 0.0;
  }
  if (cfg.variant == SchemeVariant::MovingAnalyzer) {
    return cfg.measure_probability;
  }
  const int preceding = i - cfg.first_location();
  return cfg.reflectivity * std::pow(1.0 - cfg.reflectivity, preceding);
}

double detection_probability(const SchemeConfig &cfg, int i, int assigned) {
  require_in_bounds(cfg, i);
  if (cfg.variant != SchemeVariant::MovingAnalyzer) {
    return detection_probability(cfg, i);
  }
  return i == assigned ? cfg.measure_probability : 0.0;
}

double total_detection_mass(const SchemeConfig &cfg) {
  if (cfg.variant == SchemeVariant::MovingAnalyzer) {
    return cfg.measure_probability;
  }
  // 1 - (1-R)^W, evaluated as -expm1(W log1p(-R)) to keep precision at small R.
  return -std::expm1(static_cast<double>(cfg.active_locations()) *
                     std::log1p(-cfg.reflectivity));
}

int assigned_location(const SchemeConfig &cfg, uint64_t pair_index, uint64_t total_pairs) {
  const uint64_t width = static_cast<uint64_t>(cfg.active_locations());
  const uint64_t block = total_pairs == 0 ? 1 : (total_pairs + width - 1) / width;
  const uint64_t slot = std::min(pair_index / block, width - 1);
  return cfg.first_location() + static_cast<int>(slot);
}

std::optional<int> sample_detection(const SchemeConfig &cfg, uint64_t pair_index,
                                    uint64_t total_pairs, PairRng &rng) {
  if (cfg.variant == SchemeVariant::MovingAnalyzer) {
    if (rng.next_double() >= cfg.measure_probability) {
      return std::nullopt;
    }
    return assigned_location(cfg, pair_index, total_pairs);
  }

  const double u = rng.next_double();
  if (u >= total_detection_mass(cfg)) {
    return std::nullopt;
  }
  // Inverse CDF of the geometric extraction chain.
  const int width = cfg.active_locations();
  int hop = 1 + static_cast<int>(std::log1p(-u) / std::log1p(-cfg.reflectivity));
  hop = std::clamp(hop, 1, width);
  return cfg.first_location() + hop - 1;
}

double index_to_range(const SchemeConfig &cfg, int i) {
  require_in_bounds(cfg, i);
  return static_cast<double>(i) * cfg.segment_path;
}

int required_locations(double range_max, double resolution) {
  if (!(range_max > 0.0)) {
    throw ValidationError("range_max must be positive");
  }
  if (!(resolution > 0.0 && resolution <= range_max)) {
    throw ValidationError("resolution must lie in (0, range_max]");
  }
  double q = range_max / resolution;
  // Snap to an integer quotient before ceil so 100 / 0.1 stays 1000.
  const double nearest = std::round(q);
  if (std::abs(q - nearest) <= 1e-9 * std::max(1.0, nearest)) {
    q = nearest;
  }
  const int locations = static_cast<int>(std::ceil(q));
  if (locations < 2) {
    std::fprintf(stderr,
                 "ranger: warning: budget yields a single location; "
                 "no correlation series can be formed\n");
  }
  return locations;
}

} // namespace ranger
