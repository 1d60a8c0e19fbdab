#include "ccnsim/transport.hpp"

#include <algorithm>
#include <stdexcept>

namespace ccnsim {

WiredLink::WiredLink(LinkEndpoint a, LinkEndpoint b, std::uint64_t data_rate_bps,
                     Duration delay)
    : a_(a), b_(b), data_rate_bps_(data_rate_bps), delay_(delay) {
  if (data_rate_bps_ == 0) {
    throw std::invalid_argument("wired link data rate must be > 0");
  }
  if (delay_.count() < 0) {
    throw std::invalid_argument("wired link delay must be >= 0");
  }
}

Duration WiredLink::transmission_time(std::size_t bytes, std::uint64_t data_rate_bps) {
  auto bits = static_cast<__uint128_t>(bytes) * 8;
  __uint128_t ns = (bits * 1'000'000'000u + data_rate_bps - 1) / data_rate_bps;
  return Duration{static_cast<std::int64_t>(ns)};
}

WiredLink::Dispatch WiredLink::send(NodeId from_node, std::size_t bytes, SimTime now) {
  int dir;
  LinkEndpoint to;
  if (from_node == a_.node) {
    dir = 0;
    to = b_;
  } else if (from_node == b_.node) {
    dir = 1;
    to = a_;
  } else {
    throw std::logic_error("wired send from a node not on this link");
  }
  SimTime start = std::max(now, next_free_[dir]);
  SimTime tx_end = start + transmission_time(bytes, data_rate_bps_);
  next_free_[dir] = tx_end;
  return Dispatch{tx_end, tx_end + delay_, to};
}

void WirelessRegistry::add(const WirelessEndpoint& ep) {
  auto pos = std::upper_bound(endpoints_.begin(), endpoints_.end(), ep,
                              [](const WirelessEndpoint& x, const WirelessEndpoint& y) {
                                return std::tie(x.node, x.face) < std::tie(y.node, y.face);
                              });
  endpoints_.insert(pos, ep);
  positions_.emplace(ep.node, Position{});
}

void WirelessRegistry::update_position(NodeId node, Position p) {
  positions_[node] = p;
}

Position WirelessRegistry::position(NodeId node) const {
  auto it = positions_.find(node);
  if (it == positions_.end()) {
    throw std::logic_error("node has no wireless position: " + std::to_string(node));
  }
  return it->second;
}

bool WirelessRegistry::eligible(const WirelessEndpoint& from,
                                const WirelessEndpoint& to) const {
  if (to.node == from.node) {
    return false;
  }
  switch (from.mode) {
    case WirelessMode::Client:
      if (to.mode != WirelessMode::AccessPoint) return false;
      break;
    case WirelessMode::AccessPoint:
      if (to.mode != WirelessMode::Client) return false;
      break;
    case WirelessMode::Direct:
      if (to.mode != WirelessMode::Direct) return false;
      break;
  }
  double reach = std::min(from.range_m, to.range_m);
  return distance_sq(position(from.node), position(to.node)) <= reach * reach;
}

std::vector<WirelessEndpoint> WirelessRegistry::neighbors(
    const WirelessEndpoint& sender) const {
  std::vector<WirelessEndpoint> out;
  for (const auto& ep : endpoints_) {
    if (eligible(sender, ep)) {
      out.push_back(ep);
    }
  }
  return out;
}

std::optional<WirelessEndpoint> WirelessRegistry::nearest_access_point(
    const WirelessEndpoint& client) const {
  std::optional<WirelessEndpoint> best;
  double best_d2 = 0;
  Position own = position(client.node);
  for (const auto& ep : endpoints_) {
    if (!eligible(client, ep)) {
      continue;
    }
    double d2 = distance_sq(own, position(ep.node));
    if (!best || d2 < best_d2) {  // ties keep the earlier (lowest node id) entry
      best = ep;
      best_d2 = d2;
    }
  }
  return best;
}

}  // namespace ccnsim
