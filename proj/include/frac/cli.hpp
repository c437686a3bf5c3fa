#pragma once

#include <iosfwd>

namespace frac::cli {

/// Exit codes of the `frac` tool.
enum ExitCode : int {
    kOk = 0,
    kLawFailed = 1,
    kUsageError = 2,
    kNumericalFailure = 3,
};

/// Entry point of the `frac` command line tool (eval | verify | convergence).
/// Results go to `out` unless a file is requested; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace frac::cli
