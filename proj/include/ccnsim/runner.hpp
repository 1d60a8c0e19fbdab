#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ccnsim/scenario.hpp"
#include "ccnsim/simulation.hpp"

namespace ccnsim {

struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> duration_s;
  std::optional<std::uint64_t> catalog_size;           // all content servers
  std::optional<std::uint64_t> cs_capacity;            // all nodes
  std::optional<double> inter_download_interval_s;     // all download apps
};

void apply_overrides(ScenarioConfig& config, const RunOverrides& overrides);

struct RunResult {
  RunSummary summary;
  SummaryReport report;
  std::filesystem::path out_dir;
};

/// Runs one scenario and writes network_metrics.csv, node_metrics.csv and
/// summary.csv into out_dir (created if missing).
RunResult run_to_dir(ScenarioConfig config, const std::string& config_hash,
                     const std::filesystem::path& out_dir,
                     const std::optional<std::filesystem::path>& packet_dump = {});

/// FNV-1a of the raw scenario file bytes, as 16 hex digits.
std::string hash_file(const std::filesystem::path& path);

// Command-line entry points (exit-code semantics; errors go to stderr).
int cli_run(const std::filesystem::path& config_path, const RunOverrides& overrides,
            const std::filesystem::path& out_dir,
            const std::optional<std::filesystem::path>& packet_dump);

int cli_validate(const std::filesystem::path& config_path);

/// One run per (value, seed), each in its own subdirectory, plus a combined
/// sweep_summary.csv ordered by (value, seed).
int cli_sweep(const std::filesystem::path& config_path, const std::string& param,
              const std::vector<std::string>& values,
              const std::vector<std::uint64_t>& seeds,
              const std::filesystem::path& out_dir);

}  // namespace ccnsim
