#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ccnsim/mobility.hpp"

namespace ccnsim {

/// Node archetypes. The model fixes the face layout, the deployed apps and
/// which configuration keys apply.
enum class NodeModel : std::uint8_t {
  WirelessNode,         // one wireless client face + download app, mobile
  WirelessAccessRouter, // one wireless AP face + wired faces, static
  WirelessDtnNode,      // wireless client face + wireless direct face + download app
  WiredNode,            // one wired face + download app
  AccessRouter,         // >= 2 wired faces
  ContentServer,        // one wired face + server app
  CoreRouter,           // >= 2 wired faces
};

const char* node_model_name(NodeModel model);
std::optional<NodeModel> node_model_from_name(std::string_view name);

enum class MobilityKind : std::uint8_t { Static, RandomWaypoint };

struct SimulationSection {
  double duration_s = 0;  // required
  std::uint64_t seed = 1;
  double metric_sample_interval_s = 60;
  bool allow_partition = false;
};

struct ArenaSection {
  double width_m = 1000;
  double height_m = 1000;
  double position_update_interval_s = 1;
};

struct NodeSection {
  std::string id;
  NodeModel model = NodeModel::WiredNode;
  int line = 0;
  std::optional<std::uint64_t> cs_capacity;  // default depends on model

  // Placement / mobility (wireless-capable models).
  std::optional<MobilityKind> mobility;
  std::optional<double> x_m, y_m;
  WaypointParams waypoint;

  // Wireless transports.
  std::optional<double> wireless_data_rate_bps;
  std::optional<double> wireless_range_m;
  std::optional<double> direct_data_rate_bps;
  std::optional<double> direct_range_m;

  // Download application.
  std::optional<double> inter_download_interval_s;
  std::optional<bool> fixed_interval;
  std::optional<double> rto_s;
  std::optional<std::uint32_t> max_retries;
  std::vector<std::string> target_prefixes;  // empty: every server in the scenario

  // Content server catalog.
  std::optional<std::string> prefix;
  std::optional<std::uint64_t> catalog_size;
  std::optional<std::uint32_t> total_segments;
  std::optional<std::uint32_t> segment_size_bytes;
  std::optional<double> content_expiry_s;
};

struct LinkSection {
  std::string id;
  std::string from;
  std::string to;
  double data_rate_bps = 0;
  double delay_s = 0;
  int line = 0;
};

struct ScenarioConfig {
  SimulationSection simulation;
  ArenaSection arena;
  std::vector<NodeSection> nodes;
  std::vector<LinkSection> links;
};

struct ScenarioError {
  int line = 0;
  std::string message;
};

struct ParseResult {
  std::optional<ScenarioConfig> config;
  std::vector<ScenarioError> errors;

  bool ok() const { return errors.empty() && config.has_value(); }
};

/// Parses and statically validates the line-oriented scenario grammar:
/// [simulation] / [arena] / [node <id>] / [link <id>] section headers,
/// key = value pairs, '#' comments. Unknown keys, range violations and
/// dangling references are errors with line numbers.
ParseResult parse_scenario_text(std::string_view text);
ParseResult parse_scenario_file(const std::filesystem::path& path);

std::string format_errors(const std::vector<ScenarioError>& errors);

}  // namespace ccnsim
