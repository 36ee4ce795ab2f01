// Subcommand implementations. Each returns a process exit code (0 = success)
// and reports human-readable progress on stdout; errors propagate as
// exceptions that main() maps to per-class exit codes.
#pragma once

#include <filesystem>
#include <string>

#include "runconfig.hpp"

namespace tdac::cli {

// Exit codes by error class.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;   // bad flags or config fields
inline constexpr int kExitFile = 3;    // missing/unreadable input files
inline constexpr int kExitData = 4;    // present but unusable data

int cmd_ingest(const RunConfig& cfg);
int cmd_wdseries(const RunConfig& cfg);
int cmd_compare(const RunConfig& cfg);
int cmd_stationarity(const RunConfig& cfg, const std::string& period_filter);
int cmd_causality(const RunConfig& cfg, const std::string& period_filter);

/// Re-renders DOT + counts from a stored network JSON; empty path means
/// every network_*.json under the run's output directory.
int cmd_network(const RunConfig& cfg, const std::filesystem::path& in);

int cmd_report(const RunConfig& cfg);
int cmd_synth(const RunConfig& cfg);

/// Output directory for this configuration: out_dir/<config hash>.
std::filesystem::path run_dir(const RunConfig& cfg);

}  // namespace tdac::cli
