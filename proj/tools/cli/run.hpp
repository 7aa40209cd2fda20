#pragma once
#include <ostream>

#include "cli/config.hpp"

namespace imbq::cli {

enum ExitCode : int { ok = 0, failure = 1, config_error = 2, non_convergence = 3 };

/// Executes the configured command, writing outputs under cfg.out. Progress
/// and one line per experiment row go to `log`, diagnostics to `err`.
int run(const RunConfig& cfg, std::ostream& log, std::ostream& err);

}  // namespace imbq::cli
