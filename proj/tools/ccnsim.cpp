// ccnsim — deterministic discrete-event simulator for Content Centric
// Networking. Subcommands: run, sweep, validate.

#include <CLI11.hpp>

#include "ccnsim/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"ccnsim: deterministic CCN network simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<double> duration_s;
  std::optional<std::uint64_t> catalog_size;
  std::optional<std::uint64_t> cs_capacity;
  std::optional<double> inter_download_interval_s;
  std::string packet_dump;

  auto* run = app.add_subcommand("run", "run one scenario and write the CSV outputs");
  run->add_option("--config", config_path, "scenario file")->required();
  run->add_option("--seed", seed, "override the master seed");
  run->add_option("--duration", duration_s, "override the duration, seconds");
  run->add_option("--out", out_dir, "output directory (default: out)");
  run->add_option("--catalog-size", catalog_size, "override every server's catalog size");
  run->add_option("--cs-capacity", cs_capacity, "override every node's content store capacity");
  run->add_option("--inter-download-interval", inter_download_interval_s,
                  "override the mean inter-download interval, seconds");
  run->add_option("--packet-dump", packet_dump, "write a binary packet dump to this file");

  std::string param;
  std::vector<std::string> values;
  std::vector<std::uint64_t> seeds;
  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
  sweep->add_option("--config", config_path, "scenario file")->required();
  sweep->add_option("--param", param,
                    "parameter to sweep: catalog_size, cs_capacity, "
                    "inter_download_interval or seed")
      ->required();
  sweep->add_option("--values", values, "comma-separated values")
      ->required()
      ->delimiter(',');
  sweep->add_option("--seeds", seeds, "comma-separated seeds")->delimiter(',');
  sweep->add_option("--out", out_dir, "output directory (default: out)");

  auto* validate = app.add_subcommand("validate", "parse and validate a scenario file");
  validate->add_option("--config", config_path, "scenario file")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    ccnsim::RunOverrides overrides{seed, duration_s, catalog_size, cs_capacity,
                                   inter_download_interval_s};
    std::optional<std::filesystem::path> dump;
    if (!packet_dump.empty()) {
      dump = packet_dump;
    }
    return ccnsim::cli_run(config_path, overrides, out_dir, dump);
  }
  if (sweep->parsed()) {
    return ccnsim::cli_sweep(config_path, param, values, seeds, out_dir);
  }
  return ccnsim::cli_validate(config_path);
}
