#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nqs/frontend.hpp"
#include "nqs/report.hpp"

namespace nqs {

/// Command-line flags; unset values fall back to the description's own options.
struct RunOptions {
  std::optional<NbarSpec> nbar;
  std::optional<ThetaBarConvention> theta_bar;
  bool relaxed_shape = false;
  Report::Format format = Report::Format::text;
  std::optional<unsigned> oracle_cutoff;
  ParamAssignment params;
};

enum ExitCode : int { exit_success = 0, exit_failed = 1, exit_input_error = 2 };

struct RunResult {
  int exit_code = exit_input_error;
  std::optional<Report> report;  ///< absent on input errors
  std::string output;            ///< rendered report
  std::string diagnostic;        ///< input error message
};

/// Commands: check, extract, synthesize, explain.
RunResult run(const std::string& command, const std::string& source, const RunOptions& options = {});

/// `name=value` pairs separated by commas; values are integers, fractions or decimals.
/// Throws Error on malformed text.
ParamAssignment parse_assignments(const std::string& text);

}  // namespace nqs
