#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fraclap::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kParseError = 2,
  kNumericFailure = 3,
  kViolation = 4,
};

/// Runs one `fraclap` invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace fraclap::cli
