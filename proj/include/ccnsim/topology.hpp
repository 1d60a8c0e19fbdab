#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccnsim/apps.hpp"
#include "ccnsim/forwarder.hpp"
#include "ccnsim/mobility.hpp"
#include "ccnsim/scenario.hpp"
#include "ccnsim/transport.hpp"

namespace ccnsim {

struct BuildError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One instantiated node: forwarder, faces, app state and mobility. Face ids
/// are deterministic: 0 is the local application face, wireless faces follow
/// (client before direct), wired faces are numbered in link declaration order.
struct Node {
  NodeId id = 0;
  std::string name;
  NodeModel model = NodeModel::WiredNode;
  int config_line = 0;

  Forwarder forwarder;
  std::vector<Face> faces;

  std::optional<WirelessConfig> wireless;  // client or access-point face
  std::optional<WirelessConfig> direct;    // DTN direct face
  std::optional<FaceId> wireless_face;
  std::optional<FaceId> direct_face;

  std::optional<DownloadConfig> download;  // live app is created by the run
  std::unique_ptr<ContentServerApp> server;

  std::unique_ptr<MobilityModel> mobility;
  std::optional<RngStream> mobility_rng;

  Node(NodeId id, std::string name, NodeModel model, std::size_t cs_capacity)
      : id(id), name(std::move(name)), model(model), forwarder(cs_capacity) {}
};

struct Network {
  std::vector<std::unique_ptr<Node>> nodes;  // index == NodeId
  std::vector<WiredLink> links;
  WirelessRegistry registry;
  std::map<std::string, NodeId> ids;
  std::vector<std::string> warnings;

  Node& node(NodeId id) { return *nodes.at(id); }
  const Node& node(NodeId id) const { return *nodes.at(id); }
  Node& by_name(const std::string& name);

  /// The (node, face) on the other side of a wired face.
  LinkEndpoint wired_peer(NodeId node, FaceId face) const;

  std::vector<std::string> node_names() const;
};

/// Instantiates every node per its model preset, connects the wired links,
/// populates the wireless registry with initial positions, and runs the prefix
/// advertisement. Preset violations and dangling references throw BuildError
/// naming the offending scenario line.
Network build_network(const ScenarioConfig& config);

/// Default content-store capacities: routers cache, clients cache a little,
/// servers answer from the catalog.
std::size_t default_cs_capacity(NodeModel model);

}  // namespace ccnsim
