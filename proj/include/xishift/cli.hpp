#pragma once

#include <iosfwd>

namespace xishift {

/// Exit codes of the command-line driver.
enum ExitCode : int { kExitOk = 0, kExitRuntime = 1, kExitVerification = 2, kExitUsage = 64 };

/// Entry point of the `xishift` tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace xishift
