#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace msign::cli {

enum ExitCode : int {
  kHolds = 0,
  kFails = 1,
  kUnknown = 2,
  kUsage = 64,
  kDataError = 65,
  kNoInput = 66,
  kInternal = 70,
  kCantCreate = 73,
};

/// Runs one command line (program name excluded) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace msign::cli
