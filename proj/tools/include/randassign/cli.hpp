#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace randassign::cli {

/// Exit-code contract of the command-line tool.
enum ExitCode : int {
  kSuccess = 0,       // success, or the checked property holds
  kFalse = 1,         // property false, or the search found failures
  kUsage = 2,         // usage, parse, kind/size mismatch, resource cap
  kPrecondition = 3,  // method precondition violated
  kInfeasible = 4,    // certified infeasibility (no Dec-EF decomposition)
};

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`; returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace randassign::cli
