#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace motzkin::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitSolver = 3,
  kExitInconclusive = 4,
};

/// Runs the command line `args` (without the program name). Tables go to `out`
/// unless --out names a directory; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace motzkin::cli
