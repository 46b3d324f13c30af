#include "plcp_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <system_error>

#include "plcp/errors.hpp"

namespace plcp::cli {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty() || !std::isfinite(value)) {
    throw ConfigError(key, "malformed number '" + text + "'");
  }
  return value;
}

double parse_positive(const std::string& key, const std::string& text) {
  const double v = parse_double(key, text);
  if (!(v > 0.0)) throw ConfigError(key, "must be positive, got " + text);
  return v;
}

double parse_nonnegative(const std::string& key, const std::string& text) {
  const double v = parse_double(key, text);
  if (!(v >= 0.0)) throw ConfigError(key, "must be nonnegative, got " + text);
  return v;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& text) {
  std::uint64_t value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError(key, "malformed integer '" + text + "'");
  }
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError(key, "expected true or false, got '" + text + "'");
}

std::optional<double> parse_auto_positive(const std::string& key, const std::string& text) {
  if (text == "auto") return std::nullopt;
  return parse_positive(key, text);
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_double(values[i]);
  }
  return out;
}

std::string auto_or(const std::optional<double>& v) { return v ? format_double(*v) : "auto"; }

struct Field {
  std::string key;
  std::function<void(ExperimentConfig&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      {"experiment",
       [](ExperimentConfig& c, const std::string& v) {
         const auto& names = experiment_names();
         if (std::find(names.begin(), names.end(), v) == names.end()) {
           throw ConfigError("experiment", "unknown experiment '" + v + "'");
         }
         c.experiment = v;
       },
       [](const ExperimentConfig& c) { return c.experiment; }},
      {"lambda_l",
       [](ExperimentConfig& c, const std::string& v) {
         c.params.lambda_l = parse_positive("lambda_l", v);
       },
       [](const ExperimentConfig& c) { return format_double(c.params.lambda_l); }},
      {"mu", [](ExperimentConfig& c, const std::string& v) { c.params.mu = parse_positive("mu", v); },
       [](const ExperimentConfig& c) { return format_double(c.params.mu); }},
      {"orientation",
       [](ExperimentConfig& c, const std::string& v) {
         try {
           c.params.orientation = parse_orientation(v);
         } catch (const DomainError&) {
           throw ConfigError("orientation", "expected isotropic or manhattan, got '" + v + "'");
         }
       },
       [](const ExperimentConfig& c) { return std::string(to_string(c.params.orientation)); }},
      {"obs_radius",
       [](ExperimentConfig& c, const std::string& v) {
         c.obs_radius = parse_positive("obs_radius", v);
       },
       [](const ExperimentConfig& c) { return format_double(c.obs_radius); }},
      {"buffer",
       [](ExperimentConfig& c, const std::string& v) {
         c.buffer = v == "auto" ? std::nullopt
                                : std::optional<double>(parse_nonnegative("buffer", v));
       },
       [](const ExperimentConfig& c) { return auto_or(c.buffer); }},
      {"grid_min",
       [](ExperimentConfig& c, const std::string& v) {
         c.grid.min = parse_nonnegative("grid_min", v);
       },
       [](const ExperimentConfig& c) { return format_double(c.grid.min); }},
      {"grid_max",
       [](ExperimentConfig& c, const std::string& v) {
         c.grid.max = parse_positive("grid_max", v);
       },
       [](const ExperimentConfig& c) { return format_double(c.grid.max); }},
      {"grid_count",
       [](ExperimentConfig& c, const std::string& v) {
         const auto n = parse_unsigned("grid_count", v);
         if (n < 1 || n > 1'000'000) throw ConfigError("grid_count", "must lie in [1, 1e6]");
         c.grid.count = static_cast<int>(n);
       },
       [](const ExperimentConfig& c) { return std::to_string(c.grid.count); }},
      {"n",
       [](ExperimentConfig& c, const std::string& v) {
         c.n = parse_unsigned("n", v);
         if (c.n < 1) throw ConfigError("n", "must be at least 1");
       },
       [](const ExperimentConfig& c) { return std::to_string(c.n); }},
      {"seed", [](ExperimentConfig& c, const std::string& v) { c.seed = parse_unsigned("seed", v); },
       [](const ExperimentConfig& c) { return std::to_string(c.seed); }},
      {"threads",
       [](ExperimentConfig& c, const std::string& v) {
         const auto t = parse_unsigned("threads", v);
         if (t > 4096) throw ConfigError("threads", "must not exceed 4096");
         c.threads = static_cast<unsigned>(t);
       },
       [](const ExperimentConfig& c) { return std::to_string(c.threads); }},
      {"quad_abs_tol",
       [](ExperimentConfig& c, const std::string& v) {
         c.quad.abs_tol = parse_positive("quad_abs_tol", v);
       },
       [](const ExperimentConfig& c) { return format_double(c.quad.abs_tol); }},
      {"quad_rel_tol",
       [](ExperimentConfig& c, const std::string& v) {
         c.quad.rel_tol = parse_positive("quad_rel_tol", v);
       },
       [](const ExperimentConfig& c) { return format_double(c.quad.rel_tol); }},
      {"quad_max_subdivisions",
       [](ExperimentConfig& c, const std::string& v) {
         const auto m = parse_unsigned("quad_max_subdivisions", v);
         if (m < 1 || m > 10'000'000) {
           throw ConfigError("quad_max_subdivisions", "must lie in [1, 1e7]");
         }
         c.quad.max_subdivisions = static_cast<int>(m);
       },
       [](const ExperimentConfig& c) { return std::to_string(c.quad.max_subdivisions); }},
      {"out_dir",
       [](ExperimentConfig& c, const std::string& v) {
         if (v.empty()) throw ConfigError("out_dir", "must not be empty");
         c.out_dir = v;
       },
       [](const ExperimentConfig& c) { return c.out_dir; }},
      {"palm", [](ExperimentConfig& c, const std::string& v) { c.palm = parse_bool("palm", v); },
       [](const ExperimentConfig& c) { return std::string(c.palm ? "true" : "false"); }},
      {"replication",
       [](ExperimentConfig& c, const std::string& v) {
         c.replication = parse_unsigned("replication", v);
       },
       [](const ExperimentConfig& c) { return std::to_string(c.replication); }},
      {"view_radius",
       [](ExperimentConfig& c, const std::string& v) {
         c.view_radius = parse_positive("view_radius", v);
       },
       [](const ExperimentConfig& c) { return format_double(c.view_radius); }},
      {"function",
       [](ExperimentConfig& c, const std::string& v) {
         if (v != "gaussian" && v != "path-loss") {
           throw ConfigError("function", "expected gaussian or path-loss, got '" + v + "'");
         }
         c.function = v;
       },
       [](const ExperimentConfig& c) { return c.function; }},
      {"scale",
       [](ExperimentConfig& c, const std::string& v) { c.scale = parse_positive("scale", v); },
       [](const ExperimentConfig& c) { return format_double(c.scale); }},
      {"width",
       [](ExperimentConfig& c, const std::string& v) { c.width = parse_positive("width", v); },
       [](const ExperimentConfig& c) { return format_double(c.width); }},
      {"alpha",
       [](ExperimentConfig& c, const std::string& v) {
         c.alpha = parse_positive("alpha", v);
         if (!(c.alpha > 2.0)) throw ConfigError("alpha", "must exceed 2");
       },
       [](const ExperimentConfig& c) { return format_double(c.alpha); }},
      {"exclusion",
       [](ExperimentConfig& c, const std::string& v) {
         c.exclusion = parse_positive("exclusion", v);
       },
       [](const ExperimentConfig& c) { return format_double(c.exclusion); }},
      {"cutoff",
       [](ExperimentConfig& c, const std::string& v) {
         c.cutoff = parse_auto_positive("cutoff", v);
       },
       [](const ExperimentConfig& c) { return auto_or(c.cutoff); }},
      {"counting_radius",
       [](ExperimentConfig& c, const std::string& v) {
         c.counting_radius = parse_auto_positive("counting_radius", v);
       },
       [](const ExperimentConfig& c) { return auto_or(c.counting_radius); }},
      {"mu_sweep",
       [](ExperimentConfig& c, const std::string& v) {
         std::vector<double> mus;
         std::size_t start = 0;
         for (;;) {
           const auto comma = v.find(',', start);
           mus.push_back(parse_positive(
               "mu_sweep", trim(std::string_view(v).substr(
                               start, comma == std::string::npos ? comma : comma - start))));
           if (comma == std::string::npos) break;
           start = comma + 1;
         }
         for (std::size_t i = 1; i < mus.size(); ++i) {
           if (!(mus[i] > mus[i - 1])) throw ConfigError("mu_sweep", "must be increasing");
         }
         c.mu_sweep = std::move(mus);
       },
       [](const ExperimentConfig& c) { return join(c.mu_sweep); }},
      {"length_law",
       [](ExperimentConfig& c, const std::string& v) {
         if (v != "erlang" && v != "hull") {
           throw ConfigError("length_law", "expected erlang or hull, got '" + v + "'");
         }
         c.length_law = v;
       },
       [](const ExperimentConfig& c) { return c.length_law; }},
  };
  return table;
}

}  // namespace

double ExperimentConfig::resolved_buffer(double max_query_radius) const {
  return buffer ? *buffer : default_buffer(params, max_query_radius);
}

double ExperimentConfig::resolved_counting_radius() const {
  return counting_radius ? *counting_radius : default_counting_radius(params, obs_radius);
}

double ExperimentConfig::resolved_cutoff() const { return cutoff ? *cutoff : obs_radius; }

RawConfig parse_config_text(std::string_view text) {
  RawConfig raw;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    std::string_view line =
        text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no), "expected key=value");
    }
    std::string key = trim(std::string_view(trimmed).substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no), "empty key");
    raw[key] = trim(std::string_view(trimmed).substr(eq + 1));
  }
  return raw;
}

ExperimentConfig resolve_config(const RawConfig& raw) {
  for (const auto& [key, value] : raw) {
    const auto& table = fields();
    if (std::none_of(table.begin(), table.end(), [&](const Field& f) { return f.key == key; })) {
      throw ConfigError(key, "unknown key");
    }
  }
  ExperimentConfig config;
  for (const Field& f : fields()) {
    if (const auto it = raw.find(f.key); it != raw.end()) f.set(config, it->second);
  }
  for (const char* required : {"experiment", "lambda_l", "mu"}) {
    if (!raw.contains(required)) throw ConfigError(required, "missing required key");
  }
  if (config.grid.max < config.grid.min) throw ConfigError("grid_max", "must not be below grid_min");
  if (config.quad.rel_tol >= 1.0) throw ConfigError("quad_rel_tol", "must be below 1");
  if (config.counting_radius && *config.counting_radius > config.obs_radius) {
    throw ConfigError("counting_radius", "must not exceed obs_radius");
  }
  if (!config.counting_radius && config.experiment == "facets" &&
      config.resolved_counting_radius() <= 0.0) {
    throw ConfigError("obs_radius", "too small for the default counting radius");
  }
  if (config.exclusion >= config.resolved_cutoff() && config.function == "path-loss") {
    throw ConfigError("exclusion", "must be below the cutoff");
  }
  return config;
}

ExperimentConfig parse_config(std::string_view text, const RawConfig& overrides) {
  RawConfig raw = parse_config_text(text);
  for (const auto& [k, v] : overrides) raw[k] = v;
  return resolve_config(raw);
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const Field& f : fields()) out.push_back(f.key);
    return out;
  }();
  return keys;
}

Metadata config_metadata(const ExperimentConfig& config) {
  Metadata metadata;
  for (const Field& f : fields()) {
    if (f.key == "out_dir") continue;
    metadata.emplace_back(f.key, f.get(config));
  }
  metadata.emplace_back("master_seed", std::to_string(config.seed));
  metadata.emplace_back("generator", std::string(kGeneratorName));
  metadata.emplace_back("toolkit_version", std::string(kToolkitVersion));
  return metadata;
}

ExperimentConfig config_from_metadata(const Metadata& metadata) {
  RawConfig raw;
  const auto& keys = config_keys();
  for (const auto& [k, v] : metadata) {
    if (std::find(keys.begin(), keys.end(), k) != keys.end() && !raw.contains(k)) raw[k] = v;
  }
  return resolve_config(raw);
}

}  // namespace plcp::cli
