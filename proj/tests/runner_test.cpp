#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "ccnsim/runner.hpp"

using namespace ccnsim;

namespace {

std::filesystem::path scenario(const char* name) {
  return std::filesystem::path(CCNSIM_SCENARIO_DIR) / name;
}

std::filesystem::path fresh_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("ccnsim_runner_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t at = 0;
  while (at < text.size()) {
    auto nl = text.find('\n', at);
    if (nl == std::string::npos) break;
    lines.push_back(text.substr(at, nl - at));
    at = nl + 1;
  }
  return lines;
}

}  // namespace

TEST_CASE("run completes the shipped evaluation scenario and writes 3 files") {
  auto out = fresh_dir("run");
  RunOverrides overrides;
  CHECK(cli_run(scenario("catalog_sweep_medium.scn"), overrides, out, {}) == 0);
  for (const char* f : {"network_metrics.csv", "node_metrics.csv", "summary.csv"}) {
    CHECK(std::filesystem::exists(out / f));
  }
  // 2 h at 60 s samples: header + initial row + 120 samples.
  CHECK(lines_of(slurp(out / "network_metrics.csv")).size() == 122);
  std::filesystem::remove_all(out);
}

TEST_CASE("seed overrides change outputs; repeated seeds do not") {
  auto out1 = fresh_dir("seed1");
  auto out2 = fresh_dir("seed2");
  auto out3 = fresh_dir("seed3");
  RunOverrides base;
  base.duration_s = 600;
  RunOverrides reseeded = base;
  reseeded.seed = 99;
  CHECK(cli_run(scenario("catalog_sweep_medium.scn"), base, out1, {}) == 0);
  CHECK(cli_run(scenario("catalog_sweep_medium.scn"), base, out2, {}) == 0);
  CHECK(cli_run(scenario("catalog_sweep_medium.scn"), reseeded, out3, {}) == 0);
  CHECK(slurp(out1 / "network_metrics.csv") == slurp(out2 / "network_metrics.csv"));
  CHECK(slurp(out1 / "network_metrics.csv") != slurp(out3 / "network_metrics.csv"));
  std::filesystem::remove_all(out1);
  std::filesystem::remove_all(out2);
  std::filesystem::remove_all(out3);
}

TEST_CASE("validate accepts the fixtures and rejects broken configs") {
  CHECK(cli_validate(scenario("line3.scn")) == 0);
  CHECK(cli_validate(scenario("nonexistent.scn")) == 1);

  auto bad = std::filesystem::temp_directory_path() / "ccnsim_bad.scn";
  std::ofstream(bad) << "[simulation]\nduration_s = 10\n[node x]\nmodel = access_router\n";
  CHECK(cli_validate(bad) == 1);  // access router needs two links
  std::filesystem::remove(bad);
}

TEST_CASE("sweep produces one directory per (value, seed) and an ordered summary") {
  auto out = fresh_dir("sweep");
  // Shorter runs: sweep the low fixture trimmed by seedless duration is not
  // supported, so sweep the real fixture with a small value set.
  CHECK(cli_sweep(scenario("line3.scn"), "catalog_size", {"3", "2"}, {2, 1}, out) == 0);
  for (const char* dir :
       {"catalog_size_2_seed_1", "catalog_size_2_seed_2", "catalog_size_3_seed_1",
        "catalog_size_3_seed_2"}) {
    CHECK(std::filesystem::exists(out / dir / "summary.csv"));
  }
  auto rows = lines_of(slurp(out / "sweep_summary.csv"));
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].substr(0, 12) == "param,value,");
  // Ordered by (value, seed) despite the shuffled argument order; the first
  // row column after the value is the run's seed.
  CHECK(rows[1].find("catalog_size,2,1,") == 0);
  CHECK(rows[2].find("catalog_size,2,2,") == 0);
  CHECK(rows[3].find("catalog_size,3,1,") == 0);
  CHECK(rows[4].find("catalog_size,3,2,") == 0);
  std::filesystem::remove_all(out);
}

TEST_CASE("sweeping the seed itself") {
  auto out = fresh_dir("seedsweep");
  CHECK(cli_sweep(scenario("line3.scn"), "seed", {"5", "4"}, {}, out) == 0);
  CHECK(std::filesystem::exists(out / "seed_4" / "summary.csv"));
  CHECK(std::filesystem::exists(out / "seed_5" / "summary.csv"));
  auto rows = lines_of(slurp(out / "sweep_summary.csv"));
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].find("seed,4,") == 0);
  CHECK(rows[2].find("seed,5,") == 0);

  // Seeds list cannot be combined with a seed sweep.
  CHECK(cli_sweep(scenario("line3.scn"), "seed", {"5"}, {1}, out) == 1);
  CHECK(cli_sweep(scenario("line3.scn"), "banana", {"5"}, {}, out) == 1);
  std::filesystem::remove_all(out);
}

TEST_CASE("config hashes are stable fingerprints of the file bytes") {
  auto a = hash_file(scenario("line3.scn"));
  auto b = hash_file(scenario("line3.scn"));
  CHECK(a == b);
  CHECK(a.size() == 16);
  CHECK(a != hash_file(scenario("wireless_gap.scn")));
}
