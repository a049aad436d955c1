#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "frontwave/config.hpp"

namespace frontwave {

struct FileRecord {
  std::string name;  // path relative to the run directory
  std::uintmax_t bytes;
  std::string digest;
};

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 invariant/audit failure, 2 config error
  std::filesystem::path out_dir;
  std::vector<FileRecord> files;
};

struct RunOptions {
  ExperimentConfig config;
  std::filesystem::path out_dir;
  std::optional<RunMode> cli_mode;   // subcommand; must agree with config's
  std::optional<int> cli_workers;    // --workers; FRONTWAVE_WORKERS overrides
};

/// Dispatches to the mode pipeline, writes all artifacts plus manifest.json.
RunResult run(const RunOptions& options);

/// Writes plot.gp (gnuplot dialect) next to profiles.csv in run_dir,
/// drawing the three profiles at a few selected times with front markers.
void emit_plots(const std::filesystem::path& run_dir);

/// Resolved worker count: FRONTWAVE_WORKERS env var wins over the CLI
/// value, which wins over the config value.
int resolve_workers(const RunOptions& options);

}  // namespace frontwave
