#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "plcp/analytics.hpp"
#include "plcp/io.hpp"
#include "plcp/quadrature.hpp"
#include "plcp/sampler.hpp"

namespace plcp::cli {

/// Invalid configuration; `key()` names the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

inline constexpr std::string_view kToolkitVersion = "plcp 0.1.0";

inline const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "sample", "nn-cdf", "nn-cdf-palm", "laplace", "facets", "typical-cell", "gqp", "render"};
  return names;
}

struct ExperimentConfig {
  std::string experiment;
  ModelParams params;
  double obs_radius = 5.0;
  std::optional<double> buffer;  // empty: default_buffer
  Grid grid{0.0, 3.0, 60};
  std::size_t n = 1000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  QuadratureSpec quad;
  std::string out_dir = ".";

  // sample, render, laplace
  bool palm = false;
  std::uint64_t replication = 0;
  double view_radius = 5.0;
  // laplace
  std::string function = "gaussian";  // gaussian | path-loss
  double scale = 1.0;
  double width = 1.0;
  double alpha = 4.0;
  double exclusion = 0.1;
  std::optional<double> cutoff;  // empty: obs_radius
  // facets
  std::optional<double> counting_radius;
  // typical-cell
  std::vector<double> mu_sweep{10.0, 100.0, 1000.0};
  std::string length_law = "erlang";  // erlang | hull

  double resolved_buffer(double max_query_radius = 0.0) const;
  double resolved_counting_radius() const;
  double resolved_cutoff() const;
};

/// Raw key=value pairs; later assignments win.
using RawConfig = std::map<std::string, std::string>;

/// Parses `key=value` lines with `#` comments into raw pairs. Only syntax is
/// checked here.
RawConfig parse_config_text(std::string_view text);

/// Validates and resolves raw pairs. Throws ConfigError naming the key for
/// unknown keys, malformed or out-of-range values and missing required keys
/// (experiment, lambda_l, mu).
ExperimentConfig resolve_config(const RawConfig& raw);

/// parse_config_text, then `overrides` on top, then resolve_config.
ExperimentConfig parse_config(std::string_view text, const RawConfig& overrides = {});

/// Every config key in canonical order.
const std::vector<std::string>& config_keys();

/// The resolved config as metadata (out_dir excluded) followed by the master
/// seed, generator and toolkit version.
Metadata config_metadata(const ExperimentConfig& config);

/// Recovers the config from artifact metadata, ignoring non-config keys.
ExperimentConfig config_from_metadata(const Metadata& metadata);

}  // namespace plcp::cli
