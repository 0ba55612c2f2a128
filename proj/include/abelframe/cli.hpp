#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace abelframe::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 1,
  kNumericalFailure = 2,
};

/// Entry point shared by the abelframe executable and the tests. args excludes
/// the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace abelframe::cli
