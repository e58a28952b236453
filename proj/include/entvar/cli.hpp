#pragma once

#include <ostream>

namespace entvar {

inline constexpr int kExitPass = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitUsage = 2;

/// Largest sweep bound accepted by `verify`.
inline constexpr long kMaxSweepBound = 25;

/// Environment variable holding the default Monte Carlo thread count.
inline constexpr const char* kThreadsEnv = "ENTVAR_THREADS";

/// Runs the command line. The report goes to `out` (or the --out file),
/// diagnostics to `err`. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace entvar
