#pragma once

#include "rosseland/config.hpp"

namespace rosseland {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitSolverFlag = 1;  // solver raised flags (soft fail)
inline constexpr int kExitConfigError = 2;

/// Validated run request: the command plus the raw config it was built from.
struct RunRequest {
  std::string command;  // cell | macro | fine | study | parabolic
  KeyValueConfig config;
  std::string out_dir = "out";
  int jobs = 1;
};

struct RunOutcome {
  int exit_code = kExitSuccess;
  std::vector<std::string> notes;  // human-readable flag descriptions
};

/// Execute a command end to end: validate the config, run the solves, write
/// the artifact files under out_dir. Identical requests produce byte-identical
/// outputs regardless of the job count. ConfigError propagates to the caller
/// (exit code 2 at the CLI).
RunOutcome run(RunRequest request);

}  // namespace rosseland
