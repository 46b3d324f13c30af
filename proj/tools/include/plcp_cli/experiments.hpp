#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "plcp_cli/config.hpp"

namespace plcp::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 1, kToleranceViolation = 2, kNumericFailure = 3 };

struct RunResult {
  ExitCode exit_code = kSuccess;
  std::vector<std::filesystem::path> artifacts;
  /// One line per declared tolerance check.
  std::vector<std::string> checks;
};

/// Runs one experiment and writes its artifacts into config.out_dir. Library
/// errors propagate; see run_guarded for the exit-code mapping.
RunResult run(const ExperimentConfig& config);

/// run() with errors mapped to exit codes: configuration and unsupported
/// analytics to kUsage, quadrature/truncation/window/degeneracy failures to
/// kNumericFailure. Messages go to `err`, check lines to `log`.
int run_guarded(const ExperimentConfig& config, std::ostream& log, std::ostream& err);

/// Metadata of a CSV, SVG or JSON artifact.
Metadata read_artifact_metadata(const std::filesystem::path& artifact);

/// Re-runs the experiment recorded in an artifact's metadata header.
int replay(const std::filesystem::path& artifact, const std::optional<std::string>& out_dir,
           std::ostream& log, std::ostream& err);

}  // namespace plcp::cli
