#include "ranger/experiment.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ranger/errors.hpp"
#include "ranger/rng.hpp"

namespace ranger::cli {

namespace {

std::string trim(const std::string &s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) {
    return "";
  }
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string &value) {
  std::vector<std::string> items;
  std::stringstream stream(value);
  std::string item;
  while (std::getline(stream, item, ',')) {
    item = trim(item);
    if (!item.empty()) {
      items.push_back(item);
    }
  }
  return items;
}

[[noreturn]] void fail(int line, const std::string &message) {
  throw ParseError("config line " + std::to_string(line) + ": " + message);
}

double parse_double(const std::string &value, int line) {
  try {
    size_t pos = 0;
    const double parsed = std::stod(value, &pos);
    if (pos != value.size()) {
      fail(line, "trailing characters in number '" + value + "'");
    }
    return parsed;
  } catch (const ParseError &) {
    throw;
  } catch (const std::exception &) {
    fail(line, "expected a number, got '" + value + "'");
  }
}

template <typename Int> Int parse_int(const std::string &value, int line) {
  Int parsed{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    fail(line, "expected an integer, got '" + value + "'");
  }
  return parsed;
}

bool parse_bool(const std::string &value, int line) {
  if (value == "true" || value == "1") {
    return true;
  }
  if (value == "false" || value == "0") {
    return false;
  }
  fail(line, "expected true or false, got '" + value + "'");
}

const char *variant_name(SchemeVariant v) {
  switch (v) {
  case SchemeVariant::ChainOfSplitters:
    return "chain";
  case SchemeVariant::MovingAnalyzer:
    return "moving";
  case SchemeVariant::FoldedCavity:
    return "cavity";
  }
  return "?";
}

} // namespace

void ExperimentConfig::validate() const {
  run.validate();
  if (!(detect_k > 0.0)) {
    throw ValidationError("detect_k must be positive");
  }
  if (min_baseline < 2) {
    throw ValidationError("min_baseline must be at least 2");
  }
  if (!want_csv && !want_json && !want_svg) {
    throw ValidationError("at least one output format is required");
  }
  if (!sweep.a.empty() && !sweep.b.empty() && sweep.a.size() != sweep.b.size()) {
    throw ValidationError("sweep_a and sweep_b must have equal lengths (they pair up)");
  }
}

ExperimentConfig parse_experiment_text(const std::string &text) {
  ExperimentConfig config;
  std::optional<int> window_lo;
  std::optional<int> window_hi;

  std::stringstream stream(text);
  std::string raw;
  int line = 0;
  while (std::getline(stream, raw)) {
    ++line;
    const auto comment = raw.find('#');
    if (comment != std::string::npos) {
      raw.erase(comment);
    }
    const std::string entry = trim(raw);
    if (entry.empty()) {
      continue;
    }
    const auto eq = entry.find('=');
    if (eq == std::string::npos) {
      fail(line, "expected key = value");
    }
    const std::string key = trim(entry.substr(0, eq));
    const std::string value = trim(entry.substr(eq + 1));
    if (key.empty()) {
      fail(line, "empty key");
    }
    if (value.empty()) {
      fail(line, "empty value for key '" + key + "'");
    }

    if (key == "pairs") {
      config.run.pairs = parse_int<uint64_t>(value, line);
    } else if (key == "scheme") {
      if (value == "chain") {
        config.run.scheme.variant = SchemeVariant::ChainOfSplitters;
      } else if (value == "moving") {
        config.run.scheme.variant = SchemeVariant::MovingAnalyzer;
      } else if (value == "cavity") {
        config.run.scheme.variant = SchemeVariant::FoldedCavity;
      } else {
        fail(line, "scheme must be chain, moving, or cavity");
      }
    } else if (key == "locations") {
      config.run.scheme.locations = parse_int<int>(value, line);
    } else if (key == "reflectivity") {
      config.run.scheme.reflectivity = parse_double(value, line);
    } else if (key == "measure_probability") {
      config.run.scheme.measure_probability = parse_double(value, line);
    } else if (key == "segment_path_m") {
      config.run.scheme.segment_path = parse_double(value, line);
    } else if (key == "window_lo") {
      window_lo = parse_int<int>(value, line);
    } else if (key == "window_hi") {
      window_hi = parse_int<int>(value, line);
    } else if (key == "bias_a") {
      config.run.bias.a = parse_double(value, line);
    } else if (key == "bias_b") {
      config.run.bias.b = parse_double(value, line);
    } else if (key == "hit_index") {
      if (value == "none") {
        config.run.hit_index.reset();
      } else {
        config.run.hit_index = parse_int<int>(value, line);
      }
    } else if (key == "penetration_width") {
      config.run.penetration_width = parse_int<int>(value, line);
    } else if (key == "seed") {
      config.file_seed = parse_int<uint64_t>(value, line);
    } else if (key == "sampling_mode") {
      if (value == "chain_decay") {
        config.run.sampling_mode = SamplingMode::ChainDecay;
      } else if (value == "uniform_location") {
        config.run.sampling_mode = SamplingMode::UniformLocation;
      } else {
        fail(line, "sampling_mode must be chain_decay or uniform_location");
      }
    } else if (key == "log_events") {
      config.run.log_events = parse_bool(value, line);
    } else if (key == "detect_k") {
      config.detect_k = parse_double(value, line);
    } else if (key == "min_baseline") {
      config.min_baseline = parse_int<int>(value, line);
    } else if (key == "out_formats") {
      config.want_csv = config.want_json = config.want_svg = false;
      for (const auto &format : split_list(value)) {
        if (format == "csv") {
          config.want_csv = true;
        } else if (format == "json") {
          config.want_json = true;
        } else if (format == "svg") {
          config.want_svg = true;
        } else {
          fail(line, "unknown output format '" + format + "'");
        }
      }
    } else if (key == "sweep_a") {
      for (const auto &item : split_list(value)) {
        config.sweep.a.push_back(parse_double(item, line));
      }
    } else if (key == "sweep_b") {
      for (const auto &item : split_list(value)) {
        config.sweep.b.push_back(parse_double(item, line));
      }
    } else if (key == "sweep_pairs") {
      for (const auto &item : split_list(value)) {
        config.sweep.pairs.push_back(parse_int<uint64_t>(item, line));
      }
    } else if (key == "sweep_reflectivity") {
      for (const auto &item : split_list(value)) {
        config.sweep.reflectivity.push_back(parse_double(item, line));
      }
    } else if (key == "sweep_hit_index") {
      for (const auto &item : split_list(value)) {
        config.sweep.hit_index.push_back(parse_int<int>(item, line));
      }
    } else {
      fail(line, "unknown key '" + key + "'");
    }
  }

  if (window_lo.has_value() != window_hi.has_value()) {
    throw ValidationError("window_lo and window_hi must be given together");
  }
  if (window_lo) {
    config.run.scheme.window = SchemeConfig::Window{*window_lo, *window_hi};
  }
  if (config.file_seed) {
    config.run.seed = *config.file_seed;
  }
  return config;
}

ExperimentConfig parse_experiment_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read config file: " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_experiment_text(buffer.str());
}

uint64_t resolve_seed(std::optional<uint64_t> cli_seed, std::optional<uint64_t> file_seed) {
  if (cli_seed) {
    return *cli_seed;
  }
  if (file_seed) {
    return *file_seed;
  }
  if (const char *env = std::getenv("RANGER_SEED")) {
    uint64_t parsed = 0;
    const std::string text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), parsed);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw ValidationError("RANGER_SEED is not an unsigned integer: '" + text + "'");
    }
    return parsed;
  }
  return kDefaultSeed;
}

std::vector<std::pair<std::string, std::string>> config_items(const ExperimentConfig &config) {
  std::vector<std::pair<std::string, std::string>> items;
  const auto add = [&items](const std::string &key, const std::string &value) {
    items.emplace_back(key, value);
  };
  const auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  const RunConfig &run = config.run;
  add("pairs", std::to_string(run.pairs));
  add("scheme", variant_name(run.scheme.variant));
  add("locations", std::to_string(run.scheme.locations));
  add("reflectivity", num(run.scheme.reflectivity));
  add("measure_probability", num(run.scheme.measure_probability));
  add("segment_path_m", num(run.scheme.segment_path));
  if (run.scheme.window) {
    add("window_lo", std::to_string(run.scheme.window->lo));
    add("window_hi", std::to_string(run.scheme.window->hi));
  }
  add("bias_a", num(run.bias.a));
  add("bias_b", num(run.bias.b));
  add("hit_index", run.hit_index ? std::to_string(*run.hit_index) : "none");
  add("penetration_width", std::to_string(run.penetration_width));
  add("seed", std::to_string(run.seed));
  add("sampling_mode",
      run.sampling_mode == SamplingMode::ChainDecay ? "chain_decay" : "uniform_location");
  add("log_events", run.log_events ? "true" : "false");
  add("detect_k", num(config.detect_k));
  add("min_baseline", std::to_string(config.min_baseline));
  std::string formats;
  if (config.want_csv) {
    formats += "csv";
  }
  if (config.want_json) {
    formats += formats.empty() ? "json" : ",json";
  }
  if (config.want_svg) {
    formats += formats.empty() ? "svg" : ",svg";
  }
  add("out_formats", formats);
  return items;
}

std::string config_hash(const ExperimentConfig &config) {
  std::string canonical;
  for (const auto &[key, value] : config_items(config)) {
    // Reruns under a different seed keep the same fingerprint, and output
    // formats are presentation, not part of the experiment.
    if (key == "seed" || key == "out_formats") {
      continue;
    }
    canonical += key;
    canonical += '=';
    canonical += value;
    canonical += '\n';
  }
  const uint64_t hash = fnv1a64(canonical.data(), canonical.size());
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::vector<ExperimentConfig> expand_sweep(const ExperimentConfig &base) {
  if (base.sweep.empty()) {
    throw ValidationError("sweep requires at least one non-empty sweep axis");
  }
  base.validate();

  std::vector<BiasModel> biases;
  if (!base.sweep.a.empty() && !base.sweep.b.empty()) {
    for (size_t i = 0; i < base.sweep.a.size(); ++i) {
      biases.push_back({base.sweep.a[i], base.sweep.b[i]});
    }
  } else if (!base.sweep.a.empty()) {
    for (const double a : base.sweep.a) {
      biases.push_back({a, base.run.bias.b});
    }
  } else if (!base.sweep.b.empty()) {
    for (const double b : base.sweep.b) {
      biases.push_back({base.run.bias.a, b});
    }
  } else {
    biases.push_back(base.run.bias);
  }

  const std::vector<uint64_t> pair_axis =
      base.sweep.pairs.empty() ? std::vector<uint64_t>{base.run.pairs} : base.sweep.pairs;
  const std::vector<double> refl_axis = base.sweep.reflectivity.empty()
                                            ? std::vector<double>{base.run.scheme.reflectivity}
                                            : base.sweep.reflectivity;
  std::vector<std::optional<int>> hit_axis;
  if (base.sweep.hit_index.empty()) {
    hit_axis.push_back(base.run.hit_index);
  } else {
    for (const int hit : base.sweep.hit_index) {
      hit_axis.push_back(hit);
    }
  }

  std::vector<ExperimentConfig> points;
  for (const auto &bias : biases) {
    for (const uint64_t pairs : pair_axis) {
      for (const double reflectivity : refl_axis) {
        for (const auto &hit : hit_axis) {
          ExperimentConfig point = base;
          point.sweep = {};
          point.run.bias = bias;
          point.run.pairs = pairs;
          point.run.scheme.reflectivity = reflectivity;
          point.run.hit_index = hit;
          points.push_back(std::move(point));
        }
      }
    }
  }
  return points;
}

} // namespace ranger::cli
