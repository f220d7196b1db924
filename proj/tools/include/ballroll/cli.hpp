#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ballroll::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 2,
  kNotRolling = 3,
  kNumericalFailure = 4,
};

/// Runs the command line `args` (without the program name). Normal output
/// goes to `out`, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ballroll::cli
