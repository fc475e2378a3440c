#pragma once

#include "run_config.hpp"

#include <ostream>

namespace matchdiff::cli {

/// Each returns an ExitCode. Reports go to `out`, progress to `log`.
int cmd_derive_atable(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_conjecture(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_census(const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// Validates cfg, dispatches on cfg.command and maps library exceptions to
/// exit codes.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& log);

}  // namespace matchdiff::cli
