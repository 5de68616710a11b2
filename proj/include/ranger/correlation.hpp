#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ranger/montecarlo.hpp"
#include "ranger/scheme.hpp"

namespace ranger {

/// Spatial correlation values. Entry i (1-based, i in [1, M-1]) couples
/// locations (i, i+1) of the source table.
struct CorrelationSeries {
  int locations = 0; // M of the source table
  std::vector<double> values;

  int entries() const { return static_cast<int>(values.size()); }
  double at(int entry) const { return values[entry - 1]; }
};

/// Eq-1-style ratio diagnostic; `defined` marks entries whose per-location
/// means are all strictly positive, the rest are reported as 0.
struct RatioSeries {
  int locations = 0;
  std::vector<double> values;
  std::vector<uint8_t> defined;
};

/// Outcome of threshold-based hit detection on a correlation series.
struct HitReport {
  double g_hit = 0.0; // max over the analyzed series
  int argmax = 0;     // entry index attaining g_hit
  std::optional<int> crossing_index;          // first entry above threshold
  std::optional<int> estimated_hit_location;  // crossing_index + 1
  double baseline_mean = 0.0;
  double baseline_std = 0.0; // sample std of the pre-crossing baseline
  double snr = 0.0;          // g_hit / baseline_std, guarded
  double threshold_k = 0.0;
};

/// Final ranging answer assembled from a hit report.
struct RangeReport {
  bool detected = false;
  std::optional<double> range_m;
  double resolution_m = 0.0;
  std::optional<int> hit_location;
  double g_hit = 0.0;
  double snr = 0.0;
  double efficiency = 0.0;
};

/// Central-moment diagnostics of +-1 measurement outcomes.
struct MomentReport {
  int order = 0;
  double c_n = 0.0;     // <x^n> - <x>^n
  double variance = 0.0; // <x^2> - <x>^2
  uint64_t samples = 0;
};

/// Pairwise correlation kernel: n_i * n_next / (n_i + n_next), with the
/// convention that an empty pair (0, 0) scores 0.
double g_pol(uint64_t n_i, uint64_t n_next);

/// The normative correlation series:
/// g[i] = | g_pol(n_h[i], n_h[i+1]) - g_pol(n_v[i], n_v[i+1]) |.
CorrelationSeries g_series(const CountsTable &table);

/// Ratio-form diagnostic <XY>/(<X><Y>) evaluated per polarization with
/// single-trial expectations; degenerates to 1 wherever defined. Kept only to
/// contrast with the counting form used for all ranging decisions.
RatioSeries g_ratio_series(const CountsTable &table);

/// Scan the series for the first entry exceeding baseline_mean +
/// k * baseline_std. The baseline starts as the first min_baseline entries
/// and grows with every entry that does not cross (re-estimated prefix).
/// `window` restricts the analysis to entries coupling locations inside
/// [window.lo, window.hi]; pass the scheme window for bounded-range runs.
/// The estimated hit location is crossing + 1: an entry couples locations
/// (i, i+1) and the first affected pair is (hit-1, hit).
HitReport detect_hit(const CorrelationSeries &series, double k = 5.0, int min_baseline = 50,
                     std::optional<SchemeConfig::Window> window = std::nullopt);

/// Mean of the series over the entries at and after `hit_entry` (clipped to
/// the window); 0 when no entries qualify. With no hit, averages everything.
double post_hit_plateau(const CorrelationSeries &series, std::optional<int> hit_entry,
                        std::optional<SchemeConfig::Window> window = std::nullopt);

/// Turn a hit report into a range estimate; an absent crossing yields a
/// not-detected report rather than an error.
RangeReport estimate_range(const HitReport &report, const SchemeConfig &cfg, double efficiency);

/// Moments of +-1 outcomes: c_n = mean(x^n) - mean(x)^n and the variance.
MomentReport moments(std::span<const int> outcomes, int order);

struct ScalingPoint {
  uint64_t pairs = 0;
  double plateau = 0.0;
};

/// Run each config and report its post-hit plateau, for studying how the
/// signal grows with the emitted pair count.
std::vector<ScalingPoint> snr_scaling(const std::vector<RunConfig> &configs);

} // namespace ranger
