#pragma once

#include <filesystem>
#include <iosfwd>

#include "pinsync/config.hpp"

namespace pinsync {

/// Subcommand bodies used by the CLI and by tests. Each writes its report
/// files into out_dir (created if missing) and a human-readable summary to
/// out. Errors are thrown; the CLI maps them to exit status 1.

/// Exit status 0 when the spectral condition is satisfied, 2 when not.
int cmd_check(const RunConfig& config, const std::filesystem::path& out_dir,
              std::ostream& out);

/// Runs the selection procedure and writes the trail as a table.
int cmd_select(const RunConfig& config, const std::filesystem::path& out_dir,
               std::ostream& out);

/// Runs the hybrid simulation and writes trace.csv, events.csv, summary.csv.
int cmd_simulate(const RunConfig& config, const std::filesystem::path& out_dir,
                 std::ostream& out);

/// Reads a completed run (events.csv, trace.csv) from run_dir and writes
/// bounds.csv / bounds_events.csv. Throws MissingRunArtifacts.
int cmd_bounds(const RunConfig& config, const std::filesystem::path& run_dir,
               const std::filesystem::path& out_dir, std::ostream& out);

/// Monte Carlo check of the one-sided growth bound; writes assumption.csv.
int cmd_verify_assumption(const RunConfig& config, const std::filesystem::path& out_dir,
                          std::ostream& out);

}  // namespace pinsync
