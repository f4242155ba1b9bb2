#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace costquery::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidInstance = 1,
  kIoError = 2,
  kBadFlags = 3,
  kInconsistentOracle = 4,
  kBoundViolation = 5,
};

/// Runs the command line (args excludes the program name) against the given streams.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace costquery::cli
