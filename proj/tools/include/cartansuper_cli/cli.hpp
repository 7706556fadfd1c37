#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cartansuper::cli {

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,  // also internal errors
    kInputError = 2,
    kInconclusive = 3,
};

/// Runs the command line `args` (without the program name), writing reports
/// to `out` (or the --out file) and diagnostics to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cartansuper::cli
