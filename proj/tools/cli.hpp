#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bellrecycle::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kInfeasible = 3,
  kAuditViolation = 4,
};

/// Parses "start:stop:step" (endpoints included within 1e-12), a comma list,
/// or a single number. Throws bellrecycle::Error(InvalidArgument).
std::vector<double> parse_grid(const std::string& text);

/// Runs the command line; output goes to --output or `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bellrecycle::cli
