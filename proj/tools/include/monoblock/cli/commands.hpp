#pragma once

#include "monoblock/cli/config.hpp"

#include <nlohmann/json.hpp>

#include <ostream>
#include <string>

namespace monoblock::cli {

enum ExitCode : int {
    kOk = 0,
    kSolverFailure = 1,
    kConfigError = 2,
    kVerifyFailure = 3,
};

/// Result of a command: the JSON written to disk and the intended exit status
struct CommandResult {
    nlohmann::json report;
    int exit_code = kOk;
};

/// March with the configured sweep(s) and write CSV snapshots plus report.json
CommandResult cmd_solve(const ExperimentConfig& cfg, std::ostream& log);

/// Jacobi against Gauss-Seidel in lockstep; writes compare.json
CommandResult cmd_compare(const ExperimentConfig& cfg, std::ostream& log);

/// Invariant and oracle checks; writes verify.json, exit 3 when any check fails
CommandResult cmd_verify(const ExperimentConfig& cfg, std::ostream& log);

/// Manufactured-solution convergence studies; writes convergence.json
CommandResult cmd_convergence(const ExperimentConfig& cfg, std::ostream& log);

}  // namespace monoblock::cli
