#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "plcp_cli/config.hpp"
#include "plcp_cli/experiments.hpp"

namespace {

using plcp::cli::ConfigError;
using plcp::cli::RawConfig;

// Turns leftover `--key value` and `--key=value` arguments into overrides.
RawConfig parse_overrides(const std::vector<std::string>& extras) {
  RawConfig overrides;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& arg = extras[i];
    if (!arg.starts_with("--") || arg.size() == 2) {
      throw ConfigError(arg, "unexpected argument");
    }
    std::string key = arg.substr(2);
    if (const auto eq = key.find('='); eq != std::string::npos) {
      overrides[key.substr(0, eq)] = key.substr(eq + 1);
      continue;
    }
    if (i + 1 == extras.size()) throw ConfigError(key, "flag needs a value");
    overrides[key] = extras[++i];
  }
  return overrides;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poisson line Cox process experiments"};
  app.usage("plcp <experiment> --config FILE [--key value ...]\n       plcp replay ARTIFACT [--out_dir DIR]");
  app.footer("experiments: sample nn-cdf nn-cdf-palm laplace facets typical-cell gqp render");
  app.allow_extras();
  std::string experiment;
  app.add_option("experiment", experiment, "experiment name, or replay")->required();
  std::string config_file;
  app.add_option("--config", config_file, "key=value configuration file");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : plcp::cli::kUsage;
  }

  try {
    std::vector<std::string> extras = app.remaining();
    if (experiment == "replay") {
      if (extras.empty() || extras.front().starts_with("--")) {
        throw ConfigError("artifact", "replay needs an artifact path");
      }
      const std::string artifact = extras.front();
      extras.erase(extras.begin());
      RawConfig overrides = parse_overrides(extras);
      std::optional<std::string> out_dir;
      if (const auto it = overrides.find("out_dir"); it != overrides.end()) {
        out_dir = it->second;
        overrides.erase(it);
      }
      if (!overrides.empty()) {
        throw ConfigError(overrides.begin()->first, "replay accepts only --out_dir");
      }
      return plcp::cli::replay(artifact, out_dir, std::cout, std::cerr);
    }
    RawConfig overrides = parse_overrides(extras);

    std::string text;
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      if (!in) throw ConfigError("config", "cannot read " + config_file);
      std::ostringstream buffer;
      buffer << in.rdbuf();
      text = buffer.str();
    }
    overrides["experiment"] = experiment;
    const plcp::cli::ExperimentConfig config = plcp::cli::parse_config(text, overrides);
    return plcp::cli::run_guarded(config, std::cout, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return plcp::cli::kUsage;
  }
}
