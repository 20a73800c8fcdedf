#pragma once

#include <ostream>

namespace toreq::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kVanishing = 3,
  kPrecision = 4,
  kNumeric = 5,
  kInterrupted = 130,
};

/// Runs one command line. Human-readable results go to `out`, diagnostics to
/// `err`; with --csv the machine-readable table is written to that path.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace toreq::cli
