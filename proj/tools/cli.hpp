#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace newmod::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kValidation = 2,
  kExhausted = 3,
  kTruncation = 4,
  kIoError = 5,
};

/// Runs one subcommand; args exclude the program name. Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace newmod::cli
