#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hgr::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kParseError = 2,
  kConfigError = 3,
  kContractError = 4,
};

// Runs one command line (args[0] is the program name). Reports go to `out`,
// diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hgr::cli
