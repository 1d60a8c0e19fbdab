#include "ccnsim/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

namespace ccnsim {

std::size_t default_cs_capacity(NodeModel model) {
  switch (model) {
    case NodeModel::WirelessAccessRouter:
    case NodeModel::AccessRouter:
    case NodeModel::CoreRouter:
      return 1000;
    case NodeModel::WirelessNode:
    case NodeModel::WirelessDtnNode:
    case NodeModel::WiredNode:
      return 100;
    case NodeModel::ContentServer:
      return 0;
  }
  return 0;
}

Node& Network::by_name(const std::string& name) {
  auto it = ids.find(name);
  if (it == ids.end()) {
    throw BuildError("unknown node id '" + name + "'");
  }
  return *nodes[it->second];
}

LinkEndpoint Network::wired_peer(NodeId node_id, FaceId face_id) const {
  const Node& n = *nodes.at(node_id);
  const Face& face = n.faces.at(face_id);
  const WiredLink& link = links.at(static_cast<std::size_t>(face.link));
  return link.end_a().node == node_id ? link.end_b() : link.end_a();
}

std::vector<std::string> Network::node_names() const {
  std::vector<std::string> names;
  names.reserve(nodes.size());
  for (const auto& n : nodes) {
    names.push_back(n->name);
  }
  return names;
}

namespace {

bool has_download_app(NodeModel model) {
  return model == NodeModel::WirelessNode || model == NodeModel::WirelessDtnNode ||
         model == NodeModel::WiredNode;
}

bool is_router_or_server(NodeModel model) {
  switch (model) {
    case NodeModel::WirelessAccessRouter:
    case NodeModel::AccessRouter:
    case NodeModel::CoreRouter:
    case NodeModel::ContentServer:
      return true;
    default:
      return false;
  }
}

[[noreturn]] void preset_error(const NodeSection& cfg, const std::string& what) {
  throw BuildError("node '" + cfg.id + "' (line " + std::to_string(cfg.line) +
                   ", model " + node_model_name(cfg.model) + "): " + what);
}

WirelessConfig wireless_config(const NodeSection& cfg, WirelessMode mode) {
  WirelessConfig wc;
  wc.mode = mode;
  if (mode == WirelessMode::Direct) {
    if (cfg.direct_data_rate_bps) {
      wc.data_rate_bps = static_cast<std::uint64_t>(std::llround(*cfg.direct_data_rate_bps));
    }
    if (cfg.direct_range_m) wc.range_m = *cfg.direct_range_m;
  } else {
    if (cfg.wireless_data_rate_bps) {
      wc.data_rate_bps = static_cast<std::uint64_t>(std::llround(*cfg.wireless_data_rate_bps));
    }
    if (cfg.wireless_range_m) wc.range_m = *cfg.wireless_range_m;
  }
  return wc;
}

CatalogConfig catalog_from(const NodeSection& cfg) {
  CatalogConfig cat;
  cat.prefix = ContentName::parse(*cfg.prefix);
  if (cfg.catalog_size) cat.catalog_size = *cfg.catalog_size;
  if (cfg.total_segments) cat.total_segments = *cfg.total_segments;
  if (cfg.segment_size_bytes) cat.segment_size = *cfg.segment_size_bytes;
  if (cfg.content_expiry_s) {
    cat.expiry_ms = static_cast<std::uint64_t>(std::llround(*cfg.content_expiry_s * 1e3));
  }
  return cat;
}

}  // namespace

Network build_network(const ScenarioConfig& config) {
  Network net;
  Arena arena{config.arena.width_m, config.arena.height_m};

  // Nodes, in declaration order.
  for (const auto& cfg : config.nodes) {
    if (net.ids.count(cfg.id)) {
      throw BuildError("duplicate node id '" + cfg.id + "' (line " +
                       std::to_string(cfg.line) + ")");
    }
    NodeId id = static_cast<NodeId>(net.nodes.size());
    std::size_t cs_capacity =
        cfg.cs_capacity ? *cfg.cs_capacity : default_cs_capacity(cfg.model);
    auto node = std::make_unique<Node>(id, cfg.id, cfg.model, cs_capacity);
    node->config_line = cfg.line;
    node->faces.push_back(Face{kLocalAppFace, FaceKind::LocalApp, -1});

    switch (cfg.model) {
      case NodeModel::WirelessNode: {
        node->wireless = wireless_config(cfg, WirelessMode::Client);
        node->wireless_face = 1;
        node->faces.push_back(Face{1, FaceKind::WirelessClient, -1});
        break;
      }
      case NodeModel::WirelessAccessRouter: {
        node->wireless = wireless_config(cfg, WirelessMode::AccessPoint);
        node->wireless_face = 1;
        node->faces.push_back(Face{1, FaceKind::WirelessAp, -1});
        break;
      }
      case NodeModel::WirelessDtnNode: {
        node->wireless = wireless_config(cfg, WirelessMode::Client);
        node->wireless_face = 1;
        node->faces.push_back(Face{1, FaceKind::WirelessClient, -1});
        node->direct = wireless_config(cfg, WirelessMode::Direct);
        node->direct_face = 2;
        node->faces.push_back(Face{2, FaceKind::WirelessDirect, -1});
        break;
      }
      default:
        break;
    }

    net.ids.emplace(cfg.id, id);
    net.nodes.push_back(std::move(node));
  }

  // Wired links; faces in link declaration order.
  for (std::size_t li = 0; li < config.links.size(); ++li) {
    const auto& cfg = config.links[li];
    auto attach = [&](const std::string& name) -> LinkEndpoint {
      auto it = net.ids.find(name);
      if (it == net.ids.end()) {
        throw BuildError("link '" + cfg.id + "' (line " + std::to_string(cfg.line) +
                         "): unknown node id '" + name + "'");
      }
      Node& n = *net.nodes[it->second];
      if (n.model == NodeModel::WirelessNode || n.model == NodeModel::WirelessDtnNode) {
        throw BuildError("link '" + cfg.id + "' (line " + std::to_string(cfg.line) +
                         "): " + node_model_name(n.model) + " '" + name +
                         "' cannot have wired links");
      }
      FaceId face = static_cast<FaceId>(n.faces.size());
      n.faces.push_back(Face{face, FaceKind::Wired, static_cast<std::int32_t>(li)});
      return LinkEndpoint{n.id, face};
    };
    LinkEndpoint a = attach(cfg.from);
    LinkEndpoint b = attach(cfg.to);
    net.links.emplace_back(a, b,
                           static_cast<std::uint64_t>(std::llround(cfg.data_rate_bps)),
                           duration_from_seconds(cfg.delay_s));
  }

  // Preset invariants on wired face counts.
  for (std::size_t i = 0; i < config.nodes.size(); ++i) {
    const auto& cfg = config.nodes[i];
    const Node& n = *net.nodes[i];
    std::size_t wired = 0;
    for (const auto& f : n.faces) {
      if (f.kind == FaceKind::Wired) ++wired;
    }
    switch (cfg.model) {
      case NodeModel::WiredNode:
        if (wired != 1) preset_error(cfg, "needs exactly one wired link, has " +
                                              std::to_string(wired));
        break;
      case NodeModel::ContentServer:
        if (wired != 1) preset_error(cfg, "needs exactly one wired link, has " +
                                              std::to_string(wired));
        break;
      case NodeModel::AccessRouter:
      case NodeModel::CoreRouter:
        if (wired < 2) preset_error(cfg, "needs at least two wired links, has " +
                                             std::to_string(wired));
        break;
      case NodeModel::WirelessAccessRouter:
        if (wired < 1) preset_error(cfg, "needs at least one wired link");
        break;
      default:
        break;  // wireless client models were rejected at link attach
    }
  }

  // Apps and mobility.
  std::vector<CatalogConfig> all_catalogs;
  for (std::size_t i = 0; i < config.nodes.size(); ++i) {
    const auto& cfg = config.nodes[i];
    if (cfg.model == NodeModel::ContentServer) {
      auto catalog = catalog_from(cfg);
      net.nodes[i]->server = std::make_unique<ContentServerApp>(catalog);
      all_catalogs.push_back(catalog);
    }
  }
  for (std::size_t i = 0; i < config.nodes.size(); ++i) {
    const auto& cfg = config.nodes[i];
    Node& node = *net.nodes[i];

    if (has_download_app(cfg.model)) {
      DownloadConfig dl;
      if (cfg.inter_download_interval_s) dl.inter_download_mean_s = *cfg.inter_download_interval_s;
      if (cfg.fixed_interval) dl.fixed_interval = *cfg.fixed_interval;
      if (cfg.rto_s) dl.rto_s = *cfg.rto_s;
      if (cfg.max_retries) dl.max_retries = *cfg.max_retries;
      if (cfg.target_prefixes.empty()) {
        dl.targets = all_catalogs;
      } else {
        for (const auto& text : cfg.target_prefixes) {
          ContentName want = ContentName::parse(text);
          auto it = std::find_if(all_catalogs.begin(), all_catalogs.end(),
                                 [&](const CatalogConfig& c) { return c.prefix == want; });
          if (it == all_catalogs.end()) {
            preset_error(cfg, "target prefix '" + text + "' matches no server");
          }
          dl.targets.push_back(*it);
        }
      }
      if (dl.targets.empty()) {
        preset_error(cfg, "download app has no content servers to target");
      }
      node.download = std::move(dl);
    }

    if (node.wireless || node.direct) {
      node.mobility_rng.emplace(config.simulation.seed, "mobility." + cfg.id);
      MobilityKind kind = cfg.mobility.value_or(
          cfg.model == NodeModel::WirelessAccessRouter ? MobilityKind::Static
                                                       : MobilityKind::RandomWaypoint);
      Position initial;
      if (cfg.x_m && cfg.y_m) {
        initial = Position{*cfg.x_m, *cfg.y_m};
      } else if (kind == MobilityKind::Static) {
        preset_error(cfg, "static placement needs x_m and y_m");
      } else {
        initial = draw_position(arena, *node.mobility_rng);
      }
      if (kind == MobilityKind::Static) {
        node.mobility = std::make_unique<StaticMobility>(initial);
      } else {
        node.mobility = std::make_unique<RandomWaypointMobility>(
            arena, cfg.waypoint, initial, SimTime{}, *node.mobility_rng);
      }

      if (node.wireless) {
        net.registry.add(WirelessEndpoint{node.id, *node.wireless_face,
                                          node.wireless->mode, node.wireless->range_m,
                                          node.wireless->data_rate_bps});
      }
      if (node.direct) {
        net.registry.add(WirelessEndpoint{node.id, *node.direct_face, node.direct->mode,
                                          node.direct->range_m,
                                          node.direct->data_rate_bps});
      }
      net.registry.update_position(node.id, node.mobility->position_at(SimTime{}));
    }
  }

  // Connectivity of the wired subgraph spanning routers and servers.
  {
    std::vector<NodeId> infra;
    for (const auto& n : net.nodes) {
      if (is_router_or_server(n->model)) {
        infra.push_back(n->id);
      }
    }
    if (infra.size() > 1) {
      std::set<NodeId> visited{infra.front()};
      std::deque<NodeId> queue{infra.front()};
      while (!queue.empty()) {
        NodeId cur = queue.front();
        queue.pop_front();
        for (const auto& face : net.nodes[cur]->faces) {
          if (face.kind != FaceKind::Wired) continue;
          NodeId peer = net.wired_peer(cur, face.id).node;
          if (visited.insert(peer).second) {
            queue.push_back(peer);
          }
        }
      }
      bool connected = std::all_of(infra.begin(), infra.end(),
                                   [&](NodeId id) { return visited.count(id) > 0; });
      if (!connected && !config.simulation.allow_partition) {
        net.warnings.push_back(
            "wired subgraph of routers and servers is not connected "
            "(set allow_partition = true if intentional)");
      }
    }
  }

  advertise_prefixes(net);
  return net;
}

}  // namespace ccnsim
