#pragma once

#include <momentkit/report.hpp>

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace momentkit::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailed = 1, kUsageError = 2 };

struct RunReport {
  RunReport() = default;
  explicit RunReport(std::string name) : command(std::move(name)) {}

  std::string command;
  bool passed = true;
  std::vector<Report> checks;
  /// Command-specific results (lifts, mu, rank, ...), in output order.
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  /// Human-readable lines for the text output, after the checks.
  std::vector<std::string> lines;
  std::optional<double> seconds;
};

nlohmann::ordered_json to_json(const RunReport &r);
std::string to_text(const RunReport &r);

/// Runs `momentkit <args...>` and returns the exit code: 0 success,
/// 1 verification failure, 2 usage or parse error.
int run_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace momentkit::cli
