#include "ranger/artifacts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "ranger/errors.hpp"

namespace ranger::cli {

namespace {

std::ofstream open_out(const std::string &path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write file: " + path);
  }
  return out;
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

nlohmann::ordered_json json_or_null(double v) {
  if (std::isfinite(v)) {
    return v;
  }
  return nullptr;
}

} // namespace

void ensure_dir(const std::string &path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec || !std::filesystem::is_directory(path)) {
    throw IoError("cannot create directory: " + path);
  }
}

void write_counts_csv(const std::string &path, const CountsTable &counts) {
  auto out = open_out(path);
  out << "index,n_h,n_v\n";
  for (int i = 1; i <= counts.locations(); ++i) {
    out << i << ',' << counts.n_h(i) << ',' << counts.n_v(i) << '\n';
  }
  if (!out.good()) {
    throw IoError("write failed: " + path);
  }
}

void write_g_series_csv(const std::string &path, const CorrelationSeries &series) {
  auto out = open_out(path);
  out << "index,g\n";
  for (int i = 1; i <= series.entries(); ++i) {
    out << i << ',' << fmt_double(series.at(i)) << '\n';
  }
  if (!out.good()) {
    throw IoError("write failed: " + path);
  }
}

CorrelationSeries read_g_series_csv(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read file: " + path);
  }
  std::string line;
  if (!std::getline(in, line) || line != "index,g") {
    throw ParseError(path + ": expected header 'index,g'");
  }
  CorrelationSeries series;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    int index = 0;
    double g = 0.0;
    const int got = std::sscanf(line.c_str(), "%d,%lf", &index, &g);
    if (got != 2 || index != static_cast<int>(series.values.size()) + 1) {
      throw ParseError(path + " line " + std::to_string(line_no) + ": expected 'index,g' row");
    }
    series.values.push_back(g);
  }
  series.locations = static_cast<int>(series.values.size()) + 1;
  return series;
}

void write_report_json(const std::string &path, const ExperimentConfig &config,
                       const RunSummary &summary, const HitReport &hit, const RangeReport &range,
                       int threads_used) {
  nlohmann::ordered_json report;
  report["detected"] = range.detected;
  report["estimated_range_m"] =
      range.range_m ? nlohmann::ordered_json(*range.range_m) : nlohmann::ordered_json(nullptr);
  report["resolution_m"] = range.resolution_m;
  report["hit_index"] =
      range.hit_location ? nlohmann::ordered_json(*range.hit_location) : nlohmann::ordered_json(nullptr);
  report["g_hit"] = range.g_hit;
  report["snr"] = json_or_null(range.snr);
  report["efficiency"] = range.efficiency;
  report["seed"] = summary.seed;
  report["config_hash"] = config_hash(config);

  nlohmann::ordered_json diag;
  diag["argmax"] = hit.argmax;
  diag["crossing_index"] =
      hit.crossing_index ? nlohmann::ordered_json(*hit.crossing_index) : nlohmann::ordered_json(nullptr);
  diag["baseline_mean"] = hit.baseline_mean;
  diag["baseline_std"] = hit.baseline_std;
  diag["threshold_k"] = hit.threshold_k;
  report["diagnostics"] = diag;

  report["emitted_pairs"] = summary.emitted;
  report["detected_pairs"] = summary.detected;
  report["wall_time_s"] = summary.wall_time_s;
  report["threads"] = threads_used;

  nlohmann::ordered_json echo;
  for (const auto &[key, value] : config_items(config)) {
    echo[key] = value;
  }
  report["config"] = echo;

  auto out = open_out(path);
  out << report.dump(2) << '\n';
  if (!out.good()) {
    throw IoError("write failed: " + path);
  }
}

void render_series_svg(const std::string &csv_path, const std::string &svg_path,
                       const std::string &title) {
  const CorrelationSeries series = read_g_series_csv(csv_path);

  constexpr double kWidth = 900.0;
  constexpr double kHeight = 480.0;
  constexpr double kLeft = 70.0;
  constexpr double kRight = 20.0;
  constexpr double kTop = 40.0;
  constexpr double kBottom = 50.0;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double x_min = 1.0;
  double x_max = 2.0;
  double y_max = 1.0;
  if (!series.values.empty()) {
    x_max = std::max<double>(series.entries(), 2.0);
    y_max = std::max(1e-12, *std::max_element(series.values.begin(), series.values.end()));
  }
  y_max *= 1.05; // headroom so the peak does not touch the frame

  const auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  const auto py = [&](double y) { return kTop + plot_h - y / y_max * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='" << kHeight
      << "' viewBox='0 0 " << kWidth << ' ' << kHeight << "'>\n";
  svg << "<rect width='100%' height='100%' fill='white'/>\n";
  svg << "<text x='" << kWidth / 2 << "' y='24' text-anchor='middle' font-family='sans-serif' "
         "font-size='16'>"
      << title << "</text>\n";

  // frame
  svg << "<rect x='" << kLeft << "' y='" << kTop << "' width='" << plot_w << "' height='" << plot_h
      << "' fill='none' stroke='black'/>\n";

  // ticks and grid
  constexpr int kTicks = 5;
  for (int t = 0; t <= kTicks; ++t) {
    const double fx = x_min + (x_max - x_min) * t / kTicks;
    const double fy = y_max * t / kTicks;
    svg << "<line x1='" << px(fx) << "' y1='" << kTop + plot_h << "' x2='" << px(fx) << "' y2='"
        << kTop + plot_h + 5 << "' stroke='black'/>\n";
    svg << "<text x='" << px(fx) << "' y='" << kTop + plot_h + 20
        << "' text-anchor='middle' font-family='sans-serif' font-size='11'>"
        << static_cast<long long>(std::llround(fx)) << "</text>\n";
    svg << "<line x1='" << kLeft - 5 << "' y1='" << py(fy) << "' x2='" << kLeft << "' y2='"
        << py(fy) << "' stroke='black'/>\n";
    char label[32];
    std::snprintf(label, sizeof(label), "%.3g", fy);
    svg << "<text x='" << kLeft - 8 << "' y='" << py(fy) + 4
        << "' text-anchor='end' font-family='sans-serif' font-size='11'>" << label << "</text>\n";
  }
  svg << "<text x='" << kLeft + plot_w / 2 << "' y='" << kHeight - 12
      << "' text-anchor='middle' font-family='sans-serif' font-size='13'>location index</text>\n";
  svg << "<text x='18' y='" << kTop + plot_h / 2
      << "' text-anchor='middle' font-family='sans-serif' font-size='13' transform='rotate(-90 18 "
      << kTop + plot_h / 2 << ")'>G(x(i))</text>\n";

  if (!series.values.empty()) {
    svg << "<polyline fill='none' stroke='#1f77b4' stroke-width='1.2' points='";
    for (int i = 1; i <= series.entries(); ++i) {
      svg << px(i) << ',' << py(series.at(i)) << ' ';
    }
    svg << "'/>\n";
  }
  svg << "</svg>\n";

  auto out = open_out(svg_path);
  out << svg.str();
  if (!out.good()) {
    throw IoError("write failed: " + svg_path);
  }
}

} // namespace ranger::cli
