#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gradual::cli {

/// Exit statuses shared by every subcommand.
enum ExitCode : int {
  kOk = 0,          // converged / check passed
  kUsage = 1,       // usage, parse or configuration error
  kNotConverged = 2 // diverged, budget exhausted or check failed
};

/// Runs the command line `args` (program name excluded), writing reports to
/// `out` and diagnostics to `err`. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gradual::cli
