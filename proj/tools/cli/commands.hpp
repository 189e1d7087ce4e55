// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "config.hpp"

#include "bjorling/bjorling_data.hpp"
#include "bjorling/grid.hpp"
#include "bjorling/solver_ck.hpp"
#include "bjorling/strip.hpp"
#include "bjorling/validators.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace bjorling::cli {

/// Exit codes shared by every command.
enum ExitCode : int { kOk = 0, kCheckFailed = 1, kInputError = 2, kSolverError = 3 };

/// Parsed expressions and the grid of a run.
struct PreparedRun {
    BjorlingData data;
    PrescribedH h;
    SGrid grid;
};

/// Throws ParseError on malformed expressions.
PreparedRun prepare(const RunConfig& cfg);

struct SolveOutcome {
    SolutionStrip strip;
    std::optional<RadiusEstimate> radius; // series runs only
    double truncation_cap = 0.0;
};

/// Solve with the configured method. Automatic delta is the smaller of the
/// radius-based suggestion and the truncation cap.
SolveOutcome solve_run(const RunConfig& cfg, const PreparedRun& run);

/// Threshold for a named check: the configured value, else the default of
/// the series solver, relaxed to 1e-4 for the finite-difference solver.
double check_threshold(const RunConfig& cfg, const std::string& check);

/// The configured check list, or conformality and mean_curvature (plus the
/// two Moebius checks for Moebius runs) when none is given.
std::vector<std::string> effective_checks(const RunConfig& cfg);

/// Run the named checks on a solved strip.
std::vector<CheckReport> run_checks(const RunConfig& cfg, const PreparedRun& run, const SolveOutcome& solved,
                                    const std::vector<std::string>& checks);

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_solve(RunConfig cfg, const std::optional<std::string>& method, const std::optional<std::string>& out_path,
              std::ostream& out, std::ostream& err);
int cmd_verify(RunConfig cfg, const std::optional<std::string>& method, std::ostream& out, std::ostream& err);
int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_gallery(const std::optional<std::string>& name, std::ostream& out, std::ostream& err);

/// Command-line entry point: parses arguments, dispatches, and maps
/// exceptions onto exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace bjorling::cli
