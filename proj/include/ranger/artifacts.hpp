#pragma once

#include <string>

#include "ranger/correlation.hpp"
#include "ranger/experiment.hpp"
#include "ranger/montecarlo.hpp"

namespace ranger::cli {

/// Create `path` (and parents) if missing. Throws IoError when the path
/// exists but is not a directory, or cannot be created.
void ensure_dir(const std::string &path);

/// Per-location detection counts, one row per measurement location:
/// `index,n_h,n_v` with a header line.
void write_counts_csv(const std::string &path, const CountsTable &counts);

/// Correlation series, one row per entry: `index,g` with a header line.
void write_g_series_csv(const std::string &path, const CorrelationSeries &series);

/// Inverse of write_g_series_csv. Throws ParseError on malformed rows.
CorrelationSeries read_g_series_csv(const std::string &path);

/// Full machine-readable result: detection verdict, range estimate, SNR
/// diagnostics, run bookkeeping, config hash, and a config echo sufficient to
/// reproduce the run. Non-finite SNR is serialized as null.
void write_report_json(const std::string &path, const ExperimentConfig &config,
                       const RunSummary &summary, const HitReport &hit, const RangeReport &range,
                       int threads_used);

/// Render the series stored in a g_series CSV as a standalone SVG line plot.
/// Reads the CSV back on purpose: the plot reflects what was written, so a
/// serialization bug cannot hide behind a correct-looking picture.
void render_series_svg(const std::string &csv_path, const std::string &svg_path,
                       const std::string &title);

} // namespace ranger::cli
