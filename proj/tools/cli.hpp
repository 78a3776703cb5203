#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dshlab::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDomain = 2,
  kSuiteFailure = 3,
};

/// Runs the tool on `args` (without the program name). Reports go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dshlab::cli
