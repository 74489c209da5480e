#pragma once

#include <optional>
#include <string>

#include "json_io.hpp"

namespace tphk::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kNotFredholm = 2, kMismatch = 3 };

struct RunOptions {
  std::optional<int> oracle_size;  // overrides the problem's "N"
  bool no_oracle = false;
  std::optional<double> tol;       // null-space tolerance
};

struct Outcome {
  Json report;
  int exit_code = kOk;
};

/// Runs one problem. Never throws; failures are reported in the
/// "error" field with the matching exit code.
Outcome run(const Json& problem, const RunOptions& opt = {});
Outcome run_text(const std::string& text, const RunOptions& opt = {});

/// Fixed formatting used for every report.
std::string dump_report(const Json& report);

}  // namespace tphk::cli
