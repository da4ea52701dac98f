#pragma once

#include <iosfwd>

namespace slcm::metrics {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitRuntime = 2;

/// Name of the environment variable that selects the output directory
/// when `--out` is absent.
inline constexpr const char* kOutDirEnv = "SLCM_OUT_DIR";

/// Subcommands: run, sweep, compare-broadcast, zkp-bench. Returns 0 on
/// success, 1 on config or usage errors, 2 on runtime failures.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace slcm::metrics
