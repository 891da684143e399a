#pragma once

namespace citenet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;    // bad flags/config/unreadable input
inline constexpr int kExitEnv = 3;      // cache or output-directory failures

/// Entry point behind main(). Parses the build/centrality/analyze
/// subcommands and runs the pipeline; returns the process exit code.
int run(int argc, const char* const* argv);

}  // namespace citenet::cli
