#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "ccnsim/forwarder.hpp"
#include "ccnsim/mobility.hpp"
#include "ccnsim/time.hpp"

namespace ccnsim {

using NodeId = std::uint32_t;

enum class FaceKind : std::uint8_t {
  LocalApp,
  Wired,
  WirelessClient,
  WirelessAp,
  WirelessDirect,
};

struct Face {
  FaceId id = 0;
  FaceKind kind = FaceKind::LocalApp;
  std::int32_t link = -1;  // wired: index into Network::links
};

struct LinkEndpoint {
  NodeId node = 0;
  FaceId face = 0;
};

/// Point-to-point wired link: lossless, order-preserving, one message in
/// transmission per direction. A message occupies the link for
/// size*8/data_rate seconds and arrives delay seconds later.
class WiredLink {
public:
  WiredLink(LinkEndpoint a, LinkEndpoint b, std::uint64_t data_rate_bps, Duration delay);

  struct Dispatch {
    SimTime tx_end;    // when the link becomes free again
    SimTime arrival;   // when the peer receives the message
    LinkEndpoint to;
  };

  /// Enqueues a message of the given size sent from `from_node` at `now`.
  Dispatch send(NodeId from_node, std::size_t bytes, SimTime now);

  const LinkEndpoint& end_a() const { return a_; }
  const LinkEndpoint& end_b() const { return b_; }
  std::uint64_t data_rate_bps() const { return data_rate_bps_; }
  Duration delay() const { return delay_; }

  /// Wire occupancy of `bytes` at `bps`, rounded up to whole nanoseconds.
  static Duration transmission_time(std::size_t bytes, std::uint64_t data_rate_bps);

private:
  LinkEndpoint a_, b_;
  std::uint64_t data_rate_bps_;
  Duration delay_;
  SimTime next_free_[2];  // per direction: [0] a->b, [1] b->a
};

enum class WirelessMode : std::uint8_t { Client, AccessPoint, Direct };

struct WirelessConfig {
  std::uint64_t data_rate_bps = 54'000'000;
  double range_m = 100;
  WirelessMode mode = WirelessMode::Client;
};

struct WirelessEndpoint {
  NodeId node = 0;
  FaceId face = 0;
  WirelessMode mode = WirelessMode::Client;
  double range_m = 0;
  std::uint64_t data_rate_bps = 0;
};

/// Network-wide directory of wireless-capable nodes: mode, range and the
/// position last published by the mobility layer. Eligibility between two
/// endpoints requires distance <= min(both ranges); per mode, clients talk to
/// access points (and vice versa) and direct faces talk to direct faces.
class WirelessRegistry {
public:
  void add(const WirelessEndpoint& ep);
  void update_position(NodeId node, Position p);
  Position position(NodeId node) const;
  bool has_node(NodeId node) const { return positions_.count(node) > 0; }

  /// Endpoints this endpoint can currently reach, ascending node id.
  std::vector<WirelessEndpoint> neighbors(const WirelessEndpoint& sender) const;

  /// Nearest eligible access point for a client endpoint; ties broken by
  /// lowest node id.
  std::optional<WirelessEndpoint> nearest_access_point(const WirelessEndpoint& client) const;

  const std::vector<WirelessEndpoint>& endpoints() const { return endpoints_; }

private:
  bool eligible(const WirelessEndpoint& from, const WirelessEndpoint& to) const;

  std::vector<WirelessEndpoint> endpoints_;  // sorted by (node, face)
  std::map<NodeId, Position> positions_;
};

}  // namespace ccnsim
