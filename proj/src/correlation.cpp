#include "ranger/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ranger/errors.hpp"

namespace ranger {

double g_pol(uint64_t n_i, uint64_t n_next) {
  if (n_i == 0 && n_next == 0) {
    return 0.0;
  }
  const double x = static_cast<double>(n_i);
  const double y = static_cast<double>(n_next);
  return x * y / (x + y);
}

CorrelationSeries g_series(const CountsTable &table) {
  const int locations = table.locations();
  CorrelationSeries series{locations, {}};
  if (locations < 2) {
    throw ValidationError("g_series needs at least 2 locations");
  }
  series.values.resize(locations - 1);
  for (int i = 1; i < locations; ++i) {
    const double gh = g_pol(table.n_h(i), table.n_h(i + 1));
    const double gv = g_pol(table.n_v(i), table.n_v(i + 1));
    series.values[i - 1] = std::abs(gh - gv);
  }
  return series;
}

RatioSeries g_ratio_series(const CountsTable &table) {
  const int locations = table.locations();
  if (locations < 2) {
    throw ValidationError("g_ratio_series needs at least 2 locations");
  }
  RatioSeries out{locations, std::vector<double>(locations - 1, 0.0),
                  std::vector<uint8_t>(locations - 1, 0)};
  // One trial per location estimates <X> by the sample itself, so the ratio
  // <XY>/(<X><Y>) collapses to (x*y)/(x*y) wherever the means are nonzero.
  const auto ratio = [](uint64_t x, uint64_t y) {
    return static_cast<double>(x) * static_cast<double>(y) /
           (static_cast<double>(x) * static_cast<double>(y));
  };
  for (int i = 1; i < locations; ++i) {
    const bool means_positive = table.n_h(i) > 0 && table.n_h(i + 1) > 0 && table.n_v(i) > 0 &&
                                table.n_v(i + 1) > 0;
    if (!means_positive) {
      continue; // masked: stays 0 with defined = 0
    }
    out.values[i - 1] =
        0.5 * (ratio(table.n_h(i), table.n_h(i + 1)) + ratio(table.n_v(i), table.n_v(i + 1)));
    out.defined[i - 1] = 1;
  }
  return out;
}

namespace {

/// Running mean and sample variance of the growing baseline prefix.
struct Baseline {
  uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / count;
    m2 += delta * (x - mean);
  }

  double std() const { return count > 1 ? std::sqrt(m2 / (count - 1)) : 0.0; }
};

struct EntryRange {
  int first = 1;
  int last = 0; // inclusive; last < first means empty
};

EntryRange analyzed_entries(int locations, const std::optional<SchemeConfig::Window> &window) {
  EntryRange range{1, locations - 1};
  if (window) {
    range.first = std::max(range.first, window->lo);
    range.last = std::min(range.last, window->hi - 1);
  }
  return range;
}

} // namespace

HitReport detect_hit(const CorrelationSeries &series, double k, int min_baseline,
                     std::optional<SchemeConfig::Window> window) {
  if (!(k > 0.0)) {
    throw ValidationError("detection threshold k must be positive");
  }
  if (min_baseline < 2) {
    throw ValidationError("min_baseline must be at least 2");
  }
  const EntryRange range = analyzed_entries(series.locations, window);
  const int available = range.last - range.first + 1;
  if (available < min_baseline + 1) {
    throw ValidationError("series has " + std::to_string(std::max(available, 0)) +
                          " usable entries, need at least " + std::to_string(min_baseline + 1));
  }

  HitReport report;
  report.threshold_k = k;

  report.argmax = range.first;
  report.g_hit = series.at(range.first);
  for (int i = range.first; i <= range.last; ++i) {
    if (series.at(i) > report.g_hit) {
      report.g_hit = series.at(i);
      report.argmax = i;
    }
  }

  Baseline baseline;
  for (int i = range.first; i <= range.last; ++i) {
    const double g = series.at(i);
    if (baseline.count >= static_cast<uint64_t>(min_baseline) &&
        g > baseline.mean + k * baseline.std()) {
      report.crossing_index = i;
      report.estimated_hit_location = i + 1;
      break;
    }
    baseline.add(g);
  }

  report.baseline_mean = baseline.mean;
  report.baseline_std = baseline.std();
  if (report.baseline_std > 0.0) {
    report.snr = report.g_hit / report.baseline_std;
  } else {
    report.snr = report.g_hit > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  return report;
}

double post_hit_plateau(const CorrelationSeries &series, std::optional<int> hit_entry,
                        std::optional<SchemeConfig::Window> window) {
  const EntryRange range = analyzed_entries(series.locations, window);
  const int first = hit_entry ? std::max(range.first, *hit_entry) : range.first;
  if (first > range.last) {
    return 0.0;
  }
  double sum = 0.0;
  for (int i = first; i <= range.last; ++i) {
    sum += series.at(i);
  }
  return sum / (range.last - first + 1);
}

RangeReport estimate_range(const HitReport &report, const SchemeConfig &cfg, double efficiency) {
  RangeReport out;
  out.resolution_m = cfg.segment_path;
  out.g_hit = report.g_hit;
  out.snr = report.snr;
  out.efficiency = efficiency;
  if (!report.estimated_hit_location) {
    return out; // target not detected; a valid outcome
  }
  out.detected = true;
  out.hit_location = *report.estimated_hit_location;
  out.range_m = index_to_range(cfg, *report.estimated_hit_location);
  return out;
}

MomentReport moments(std::span<const int> outcomes, int order) {
  if (outcomes.empty()) {
    throw ValidationError("moments need at least one outcome");
  }
  if (order < 1) {
    throw ValidationError("moment order must be >= 1");
  }
  double sum = 0.0;
  double sum_sq = 0.0;
  double sum_n = 0.0;
  for (const int x : outcomes) {
    const double v = static_cast<double>(x);
    sum += v;
    sum_sq += v * v;
    double p = v;
    for (int j = 1; j < order; ++j) {
      p *= v;
    }
    sum_n += p;
  }
  const double count = static_cast<double>(outcomes.size());
  const double mean = sum / count;
  MomentReport report;
  report.order = order;
  report.samples = outcomes.size();
  report.c_n = sum_n / count - std::pow(mean, order);
  report.variance = std::max(0.0, sum_sq / count - mean * mean);
  return report;
}

std::vector<ScalingPoint> snr_scaling(const std::vector<RunConfig> &configs) {
  if (configs.empty()) {
    throw ValidationError("snr_scaling needs at least one config");
  }
  std::vector<ScalingPoint> points;
  points.reserve(configs.size());
  for (const auto &config : configs) {
    const RunResult result = run(config);
    const CorrelationSeries series = g_series(result.counts);
    const double plateau =
        post_hit_plateau(series, config.hit_index, config.scheme.window);
    points.push_back({config.pairs, plateau});
  }
  return points;
}

} // namespace ranger
