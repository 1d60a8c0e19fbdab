#include "ccnsim/runner.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ccnsim/rng.hpp"

namespace ccnsim {

namespace {

bool has_download_app(NodeModel model) {
  return model == NodeModel::WirelessNode || model == NodeModel::WirelessDtnNode ||
         model == NodeModel::WiredNode;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << contents;
}

std::string read_summary_row(const std::filesystem::path& path, std::string* header) {
  std::ifstream in(path);
  std::string head, row;
  std::getline(in, head);
  std::getline(in, row);
  if (header) *header = head;
  return row;
}

}  // namespace

void apply_overrides(ScenarioConfig& config, const RunOverrides& overrides) {
  if (overrides.seed) {
    config.simulation.seed = *overrides.seed;
  }
  if (overrides.duration_s) {
    config.simulation.duration_s = *overrides.duration_s;
  }
  for (auto& node : config.nodes) {
    if (overrides.catalog_size && node.model == NodeModel::ContentServer) {
      node.catalog_size = *overrides.catalog_size;
    }
    if (overrides.cs_capacity) {
      node.cs_capacity = *overrides.cs_capacity;
    }
    if (overrides.inter_download_interval_s && has_download_app(node.model)) {
      node.inter_download_interval_s = *overrides.inter_download_interval_s;
    }
  }
}

std::string hash_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  std::uint64_t h = fnv1a64(buf.str());
  char out[17];
  static const char* digits = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xF];
    h >>= 4;
  }
  out[16] = '\0';
  return out;
}

RunResult run_to_dir(ScenarioConfig config, const std::string& config_hash,
                     const std::filesystem::path& out_dir,
                     const std::optional<std::filesystem::path>& packet_dump) {
  std::filesystem::create_directories(out_dir);

  Simulation sim(std::move(config));
  for (const auto& warning : sim.network().warnings) {
    std::cerr << "warning: " << warning << "\n";
  }
  if (packet_dump) {
    sim.enable_packet_dump(*packet_dump);
  }
  RunSummary summary = sim.run();

  SimTime end = SimTime::from_seconds(sim.config().simulation.duration_s);
  RunMeta meta{sim.config().simulation.seed, sim.config().simulation.duration_s,
               config_hash, summary.events_processed};

  {
    std::ostringstream out;
    sim.metrics().write_network_csv(out);
    write_file(out_dir / "network_metrics.csv", out.str());
  }
  {
    std::ostringstream out;
    sim.metrics().write_node_csv(out);
    write_file(out_dir / "node_metrics.csv", out.str());
  }
  {
    std::ostringstream out;
    sim.metrics().write_summary_csv(out, meta, end);
    write_file(out_dir / "summary.csv", out.str());
  }

  return RunResult{summary, sim.summary(), out_dir};
}

int cli_run(const std::filesystem::path& config_path, const RunOverrides& overrides,
            const std::filesystem::path& out_dir,
            const std::optional<std::filesystem::path>& packet_dump) {
  ParseResult parsed = parse_scenario_file(config_path);
  if (!parsed.ok()) {
    std::cerr << config_path.string() << ":\n" << format_errors(parsed.errors);
    return 1;
  }
  ScenarioConfig config = std::move(*parsed.config);
  apply_overrides(config, overrides);
  try {
    RunResult result = run_to_dir(std::move(config), hash_file(config_path), out_dir,
                                  packet_dump);
    std::cout << "run complete: " << result.summary.events_processed << " events in "
              << result.summary.wall_seconds << " s wall, outputs in "
              << result.out_dir.string() << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return 1;
  }
}

int cli_validate(const std::filesystem::path& config_path) {
  ParseResult parsed = parse_scenario_file(config_path);
  if (!parsed.ok()) {
    std::cerr << config_path.string() << ":\n" << format_errors(parsed.errors);
    return 1;
  }
  try {
    Network net = build_network(*parsed.config);
    for (const auto& warning : net.warnings) {
      std::cerr << "warning: " << warning << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << config_path.string() << ": " << e.what() << "\n";
    return 1;
  }
  std::cout << config_path.string() << ": OK\n";
  return 0;
}

int cli_sweep(const std::filesystem::path& config_path, const std::string& param,
              const std::vector<std::string>& values,
              const std::vector<std::uint64_t>& seeds,
              const std::filesystem::path& out_dir) {
  ParseResult parsed = parse_scenario_file(config_path);
  if (!parsed.ok()) {
    std::cerr << config_path.string() << ":\n" << format_errors(parsed.errors);
    return 1;
  }
  bool seed_param = param == "seed";
  bool numeric_param = param == "catalog_size" || param == "cs_capacity";
  bool interval_param = param == "inter_download_interval";
  if (!seed_param && !numeric_param && !interval_param) {
    std::cerr << "unknown sweep parameter '" << param
              << "' (expected catalog_size, cs_capacity, inter_download_interval or seed)\n";
    return 1;
  }
  if (seed_param && !seeds.empty()) {
    std::cerr << "--seeds cannot be combined with --param seed\n";
    return 1;
  }
  if (values.empty()) {
    std::cerr << "sweep needs at least one value\n";
    return 1;
  }

  std::vector<double> numeric_values;
  for (const auto& v : values) {
    double out = 0;
    auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size() || !(out > 0)) {
      std::cerr << "bad sweep value '" << v << "'\n";
      return 1;
    }
    numeric_values.push_back(out);
  }
  std::sort(numeric_values.begin(), numeric_values.end());

  std::vector<std::uint64_t> run_seeds = seeds;
  if (run_seeds.empty()) {
    run_seeds.push_back(parsed.config->simulation.seed);
  }
  std::sort(run_seeds.begin(), run_seeds.end());

  std::string config_hash = hash_file(config_path);
  std::filesystem::create_directories(out_dir);

  std::string combined_header;
  std::vector<std::string> combined_rows;
  for (double value : numeric_values) {
    for (std::uint64_t seed : run_seeds) {
      ScenarioConfig config = *parsed.config;
      RunOverrides overrides;
      std::string value_text;
      if (seed_param) {
        overrides.seed = static_cast<std::uint64_t>(value);
        value_text = std::to_string(static_cast<std::uint64_t>(value));
      } else {
        overrides.seed = seed;
        if (interval_param) {
          overrides.inter_download_interval_s = value;
          value_text = format_csv(value);
        } else {
          auto as_u64 = static_cast<std::uint64_t>(value);
          value_text = std::to_string(as_u64);
          if (param == "catalog_size") {
            overrides.catalog_size = as_u64;
          } else {
            overrides.cs_capacity = as_u64;
          }
        }
      }
      apply_overrides(config, overrides);

      std::string dir_name = seed_param
                                 ? "seed_" + value_text
                                 : param + "_" + value_text + "_seed_" + std::to_string(seed);
      std::filesystem::path run_dir = out_dir / dir_name;
      try {
        RunResult result = run_to_dir(std::move(config), config_hash, run_dir, {});
        std::cout << dir_name << ": " << result.summary.events_processed << " events, "
                  << "hit ratio " << format_csv(result.report.cache_hit_ratio) << "\n";
      } catch (const std::exception& e) {
        std::cerr << dir_name << ": run failed: " << e.what() << "\n";
        return 1;
      }
      std::string header;
      std::string row = read_summary_row(run_dir / "summary.csv", &header);
      if (combined_header.empty()) {
        combined_header = "param,value," + header;
      }
      combined_rows.push_back(param + "," + value_text + "," + row);
      if (seed_param) break;  // seeds loop is a single placeholder iteration
    }
  }

  std::string combined = combined_header + "\n";
  for (const auto& row : combined_rows) {
    combined += row + "\n";
  }
  write_file(out_dir / "sweep_summary.csv", combined);
  std::cout << "sweep summary: " << (out_dir / "sweep_summary.csv").string() << "\n";
  return 0;
}

}  // namespace ccnsim
