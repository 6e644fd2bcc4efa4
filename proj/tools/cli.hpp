#pragma once

#include <ostream>

namespace ampo::cli {

/// Exit codes of the ampo command.
enum ExitCode : int {
  kOk = 0,
  kOracleFailure = 1,
  kArgumentError = 2,
  kSolverError = 3,
};

/// Full command-line entry point. Results go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ampo::cli
