#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "ranger/quantum.hpp"
#include "ranger/rng.hpp"

namespace ranger {

/// The three measurement geometries. ChainOfSplitters taps the second
/// photon's path with one weak splitter per location; FoldedCavity is its
/// compact mirror-folded equivalent and shares the same statistics;
/// MovingAnalyzer measures each pair at a single scheduled location.
enum class SchemeVariant : uint8_t { ChainOfSplitters, MovingAnalyzer, FoldedCavity };

/// Geometry and detection statistics of one measurement scheme.
///
/// Location indices are 1-based in [1, locations]. When `window` is set,
/// measurement hardware exists only at locations inside [window.lo, window.hi]
/// (bounded-range mode); photons pass the other locations untouched.
struct SchemeConfig {
  SchemeVariant variant = SchemeVariant::ChainOfSplitters;
  int locations = 2;               // M
  double reflectivity = 0.001;     // R, splitter variants
  double measure_probability = 1.0; // MovingAnalyzer only
  double segment_path = 0.1;       // meters of optical path per location step

  struct Window {
    int lo = 1;
    int hi = 2;
  };
  std::optional<Window> window;

  void validate() const;

  /// First and last instrumented location (window bounds, or [1, M]).
  int first_location() const { return window ? window->lo : 1; }
  int last_location() const { return window ? window->hi : locations; }
  /// Number of instrumented locations.
  int active_locations() const { return last_location() - first_location() + 1; }
};

/// One realized measurement: pair `pair_index` was extracted at `location`
/// and classified by the polarizing splitter as `outcome`.
struct DetectionEvent {
  uint64_t pair_index = 0;
  int location = 0;
  Polarization outcome = Polarization::H;

  bool operator==(const DetectionEvent &) const = default;
};

/// Probability that a pair is detected at location i.
///
/// Splitter variants: the photon survives every instrumented location before
/// i and is extracted at i, so p = R * (1-R)^(k-1) with k the position of i
/// among instrumented locations; 0 outside the window. MovingAnalyzer: the
/// probability of detection at the pair's scheduled location, i.e.
/// measure_probability when i is that location (pass assigned_location to
/// evaluate the schedule explicitly; without it the scheduled case is assumed).
double detection_probability(const SchemeConfig &cfg, int i);
double detection_probability(const SchemeConfig &cfg, int i, int assigned_location);

/// Total probability that a pair is detected anywhere: 1 - (1-R)^W for the
/// splitter variants (W instrumented locations), measure_probability for the
/// moving analyzer.
double total_detection_mass(const SchemeConfig &cfg);

/// Scheduled measurement location for a pair under the MovingAnalyzer:
/// contiguous blocks of ceil(total_pairs / W) pairs per location, one sweep
/// across the instrumented range in emission order.
int assigned_location(const SchemeConfig &cfg, uint64_t pair_index, uint64_t total_pairs);

/// Draw the detection location for one pair, or nullopt when the pair leaves
/// the setup undetected. Inverse-CDF sampling; one or two uniform draws.
std::optional<int> sample_detection(const SchemeConfig &cfg, uint64_t pair_index,
                                    uint64_t total_pairs, PairRng &rng);

/// One-way target distance whose outbound flight matches the second photon's
/// accrued optical path at location i: i * segment_path meters.
double index_to_range(const SchemeConfig &cfg, int i);

/// Number of measurement locations needed to cover range_max at the given
/// depth resolution: ceil(range_max / resolution). A result below 2 is a
/// degenerate single-bin setup that no SchemeConfig will accept.
int required_locations(double range_max, double resolution);

} // namespace ranger
