#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hardylab {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitHolds = 0,
  kExitViolated = 1,
  kExitInconclusive = 2,
  kExitUsage = 3,
};

/// Runs one subcommand. `args` excludes the program name. Machine output goes
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hardylab
