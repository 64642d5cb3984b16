#pragma once
// Command-line front end.  run_cli is the whole program minus process setup,
// so tests can drive it in-process.

#include <iosfwd>
#include <string>
#include <vector>

namespace qsc::cli {

enum ExitCode : int {
    kSuccess = 0,
    kInputError = 2,
    kToleranceFailure = 3,
};

/// args excludes the program name.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qsc::cli
