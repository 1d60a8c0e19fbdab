#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ccnsim/scenario.hpp"
#include "ccnsim/topology.hpp"

using namespace ccnsim;

namespace {

ScenarioConfig load(const char* name) {
  auto result = parse_scenario_file(std::filesystem::path(CCNSIM_SCENARIO_DIR) / name);
  REQUIRE_MESSAGE(result.ok(), format_errors(result.errors));
  return *result.config;
}

NodeSection node_of(const std::string& id, NodeModel model) {
  NodeSection n;
  n.id = id;
  n.model = model;
  if (model == NodeModel::ContentServer) {
    n.prefix = "ccnx:/" + id;
  }
  return n;
}

LinkSection link_of(const std::string& id, const std::string& from,
                    const std::string& to) {
  LinkSection l;
  l.id = id;
  l.from = from;
  l.to = to;
  l.data_rate_bps = 1e7;
  l.delay_s = 0.001;
  return l;
}

}  // namespace

TEST_CASE("the catalog evaluation scenario builds with the documented shape") {
  Network net = build_network(load("catalog_sweep_medium.scn"));
  CHECK(net.nodes.size() == 10);  // 4 clients, war, ar, 2 cores, 2 servers
  CHECK(net.links.size() == 7);
  CHECK(net.warnings.empty());

  // Two wireless clients plus the access point populate the registry.
  CHECK(net.registry.endpoints().size() == 3);

  // Deterministic face layout: local app face is 0 everywhere.
  for (const auto& node : net.nodes) {
    REQUIRE(!node->faces.empty());
    CHECK(node->faces[0].id == kLocalAppFace);
    CHECK(node->faces[0].kind == FaceKind::LocalApp);
  }
  Node& war = net.by_name("war1");
  CHECK(war.faces.size() == 3);  // app, AP, wired to core1
  CHECK(war.faces[1].kind == FaceKind::WirelessAp);
  CHECK(war.faces[2].kind == FaceKind::Wired);

  // Wireless clients route everything through their client face.
  Node& c1 = net.by_name("c1");
  auto route = c1.forwarder.fib().longest_prefix_match(
      ContentName::parse("ccnx:/srv2/content7").with_segment(3));
  REQUIRE(route);
  CHECK(route->face == *c1.wireless_face);

  // Wired clients hold advertised routes for both servers.
  Node& c3 = net.by_name("c3");
  auto srv1_route = c3.forwarder.fib().longest_prefix_match(ContentName::parse("ccnx:/srv1"));
  auto srv2_route = c3.forwarder.fib().longest_prefix_match(ContentName::parse("ccnx:/srv2"));
  REQUIRE(srv1_route);
  REQUIRE(srv2_route);
  CHECK(srv1_route->metric == 4);  // c3 - ar1 - core2 - core1 - srv1
  CHECK(srv2_route->metric == 3);  // c3 - ar1 - core2 - srv2

  // Servers keep the declared catalog parameters.
  CHECK(net.by_name("srv1").server->catalog().catalog_size == 1000);
  CHECK(net.by_name("srv1").server->catalog().total_segments == 10);

  // Download apps target both servers by default.
  REQUIRE(c1.download);
  CHECK(c1.download->targets.size() == 2);
}

TEST_CASE("builds are reproducible for the same config") {
  auto cfg = load("catalog_sweep_medium.scn");
  Network a = build_network(cfg);
  Network b = build_network(cfg);
  REQUIRE(a.nodes.size() == b.nodes.size());
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    CHECK(a.nodes[i]->name == b.nodes[i]->name);
    CHECK(a.nodes[i]->faces.size() == b.nodes[i]->faces.size());
    auto fa = a.nodes[i]->forwarder.fib().entries();
    auto fb = b.nodes[i]->forwarder.fib().entries();
    REQUIRE(fa.size() == fb.size());
    for (std::size_t k = 0; k < fa.size(); ++k) {
      CHECK(fa[k].prefix == fb[k].prefix);
      CHECK(fa[k].face == fb[k].face);
      CHECK(fa[k].metric == fb[k].metric);
    }
    if (a.nodes[i]->mobility) {
      Position pa = a.nodes[i]->mobility->position_at(SimTime{});
      Position pb = b.nodes[i]->mobility->position_at(SimTime{});
      CHECK(pa.x == pb.x);
      CHECK(pa.y == pb.y);
    }
  }
}

TEST_CASE("preset violations are build errors naming the node") {
  ScenarioConfig cfg;
  cfg.simulation.duration_s = 1;
  cfg.nodes = {node_of("c", NodeModel::WiredNode), node_of("ar", NodeModel::AccessRouter),
               node_of("srv", NodeModel::ContentServer)};
  cfg.links = {link_of("l1", "c", "ar"), link_of("l2", "ar", "srv")};

  SUBCASE("wired node with two links") {
    cfg.links.push_back(link_of("l3", "c", "ar"));
    CHECK_THROWS_WITH_AS(build_network(cfg),
                         doctest::Contains("exactly one wired link"), BuildError);
  }
  SUBCASE("access router with one link") {
    cfg.links.pop_back();  // leaves ar with only l1
    cfg.nodes.pop_back();
    CHECK_THROWS_WITH_AS(build_network(cfg), doctest::Contains("at least two"),
                         BuildError);
  }
  SUBCASE("link to an unknown node") {
    cfg.links.push_back(link_of("l3", "ar", "ghost"));
    CHECK_THROWS_WITH_AS(build_network(cfg), doctest::Contains("ghost"), BuildError);
  }
  SUBCASE("wireless client with a wired link") {
    cfg.nodes.push_back(node_of("w", NodeModel::WirelessNode));
    cfg.links.push_back(link_of("l3", "w", "ar"));
    CHECK_THROWS_WITH_AS(build_network(cfg), doctest::Contains("cannot have wired"),
                         BuildError);
  }
  SUBCASE("the baseline builds") {
    CHECK_NOTHROW(build_network(cfg));
  }
}

TEST_CASE("a partitioned infrastructure earns a warning unless allowed") {
  ScenarioConfig cfg;
  cfg.simulation.duration_s = 1;
  cfg.nodes = {node_of("ar1", NodeModel::AccessRouter),
               node_of("ar2", NodeModel::AccessRouter),
               node_of("c1", NodeModel::WiredNode), node_of("c2", NodeModel::WiredNode),
               node_of("c3", NodeModel::WiredNode), node_of("c4", NodeModel::WiredNode),
               node_of("srv", NodeModel::ContentServer)};
  cfg.links = {link_of("l1", "c1", "ar1"), link_of("l2", "c2", "ar1"),
               link_of("l3", "c3", "ar2"), link_of("l4", "c4", "ar2"),
               link_of("l5", "srv", "ar1")};

  Network net = build_network(cfg);
  REQUIRE(net.warnings.size() == 1);
  CHECK(net.warnings[0].find("not connected") != std::string::npos);

  cfg.simulation.allow_partition = true;
  CHECK(build_network(cfg).warnings.empty());
}

TEST_CASE("dtn nodes carry both wireless faces and a default route") {
  ScenarioConfig cfg;
  cfg.simulation.duration_s = 1;
  cfg.nodes = {node_of("d", NodeModel::WirelessDtnNode),
               node_of("war", NodeModel::WirelessAccessRouter),
               node_of("srv", NodeModel::ContentServer)};
  cfg.nodes[0].direct_range_m = 30;
  cfg.nodes[1].x_m = 10;
  cfg.nodes[1].y_m = 10;
  cfg.links = {link_of("l1", "war", "srv")};

  Network net = build_network(cfg);
  Node& d = net.by_name("d");
  REQUIRE(d.faces.size() == 3);
  CHECK(d.faces[1].kind == FaceKind::WirelessClient);
  CHECK(d.faces[2].kind == FaceKind::WirelessDirect);
  CHECK(d.direct->range_m == 30);
  auto route = d.forwarder.fib().longest_prefix_match(ContentName::parse("ccnx:/srv"));
  REQUIRE(route);
  CHECK(route->face == 1);
  // Three endpoints: DTN client + DTN direct + AP.
  CHECK(net.registry.endpoints().size() == 3);
}
