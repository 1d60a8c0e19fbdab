#include "ccnsim/simulation.hpp"

#include <algorithm>

namespace ccnsim {

/// Per-node adapter giving apps timers and the local face.
class Simulation::Host final : public AppHost {
public:
  Host(Simulation& sim, NodeId node) : sim_(sim), node_(node) {}

  SimTime now() const override { return sim_.queue_.now(); }

  EventId schedule_in(Duration delay, std::function<void()> fn,
                      std::string label) override {
    return sim_.queue_.schedule_in(delay, std::move(fn),
                                   label + " " + sim_.net_.node(node_).name);
  }

  bool cancel_event(EventId id) override { return sim_.queue_.cancel(id); }

  void express_interest(const Interest& interest) override {
    sim_.deliver(node_, kLocalAppFace, interest);
  }

private:
  Simulation& sim_;
  NodeId node_;
};

Simulation::Simulation(ScenarioConfig config)
    : config_(std::move(config)),
      net_(build_network(config_)),
      metrics_(net_.node_names()) {
  runtime_.resize(net_.nodes.size());
  for (auto& node : net_.nodes) {
    auto& rt = runtime_[node->id];
    rt.host = std::make_unique<Host>(*this, node->id);
    if (node->download) {
      rt.app = std::make_unique<ContentDownloadApp>(
          *rt.host, metrics_.node(node->id),
          RngStream(config_.simulation.seed, "app." + node->name), *node->download);
    }
  }
}

Simulation::~Simulation() = default;

ContentDownloadApp* Simulation::download_app(NodeId id) {
  return runtime_.at(id).app.get();
}

std::uint64_t Simulation::total_cs_lookups() const {
  std::uint64_t total = 0;
  for (const auto& node : net_.nodes) {
    total += node->forwarder.cs().lookup_count();
  }
  return total;
}

std::size_t Simulation::total_pit_entries() const {
  std::size_t total = 0;
  for (const auto& node : net_.nodes) {
    total += node->forwarder.pit().size();
  }
  return total;
}

std::uint64_t Simulation::drops(DropAction::Reason reason) const {
  return drop_counts_[static_cast<std::size_t>(reason)];
}

void Simulation::enable_packet_dump(const std::filesystem::path& path) {
  dump_ = std::make_unique<PacketDumpWriter>(path);
}

void Simulation::schedule_mobility_transition(NodeId id) {
  Node& node = net_.node(id);
  auto at = node.mobility->next_transition();
  if (!at) {
    return;
  }
  queue_.schedule(*at,
                  [this, id] {
                    Node& n = net_.node(id);
                    n.mobility->advance(queue_.now(), *n.mobility_rng);
                    schedule_mobility_transition(id);
                  },
                  "mobility.leg");
}

RunSummary Simulation::run() {
  if (ran_) {
    throw std::logic_error("Simulation::run may be called only once");
  }
  ran_ = true;

  SimTime end = SimTime::from_seconds(config_.simulation.duration_s);
  Duration sample_interval =
      duration_from_seconds(config_.simulation.metric_sample_interval_s);
  Duration update_interval =
      duration_from_seconds(config_.arena.position_update_interval_s);

  // Initial time-series row, then one row per sample interval.
  sample_now();
  queue_.schedule_in(sample_interval, [this, sample_interval] { sample_tick(sample_interval); },
                     "metrics.sample");

  // Mobility: leg transitions per node, plus the periodic position publication
  // that the wireless layer reads.
  for (auto& node : net_.nodes) {
    if (node->mobility && node->mobility->next_transition()) {
      mobile_nodes_.push_back(node->id);
      schedule_mobility_transition(node->id);
    }
  }
  if (!mobile_nodes_.empty()) {
    queue_.schedule_in(update_interval,
                       [this, update_interval] { position_update_tick(update_interval); },
                       "mobility.update");
  }

  for (auto& rt : runtime_) {
    if (rt.app) {
      rt.app->start();
    }
  }

  RunSummary summary = queue_.run_until(end);

  if (metrics_.rows().empty() || metrics_.rows().back().time_s < end.seconds()) {
    sample_now();
  }
  summary_ = metrics_.finalize(end, total_cs_lookups());
  return summary;
}

void Simulation::sample_now() {
  check_invariants();
  metrics_.sample(queue_.now());
}

void Simulation::sample_tick(Duration interval) {
  sample_now();
  queue_.schedule_in(interval, [this, interval] { sample_tick(interval); },
                     "metrics.sample");
}

void Simulation::position_update_tick(Duration interval) {
  for (NodeId id : mobile_nodes_) {
    Node& n = net_.node(id);
    net_.registry.update_position(id, n.mobility->position_at(queue_.now()));
  }
  queue_.schedule_in(interval, [this, interval] { position_update_tick(interval); },
                     "mobility.update");
}

void Simulation::check_invariants() {
  SimTime now = queue_.now();
  for (const auto& node : net_.nodes) {
    const auto& cs = node->forwarder.cs();
    if (cs.size() > cs.capacity()) {
      ++cs_bound_violations_;
    }
    if (auto age = node->forwarder.pit().oldest_age(now)) {
      max_pit_age_seen_ = std::max(max_pit_age_seen_, *age);
    }
  }
}

void Simulation::deliver(NodeId node_id, FaceId face, const CcnMessage& msg) {
  Node& node = net_.node(node_id);
  if (face != kLocalAppFace) {
    if (dump_) {
      dump_->record(queue_.now(), node_id, static_cast<std::uint16_t>(face), false, msg);
    }
    if (const auto* interest = std::get_if<Interest>(&msg);
        interest && interest->retransmission) {
      metrics_.node(node_id).retransmitted_bytes_received += encoded_size(*interest);
    }
  }

  SimTime now = queue_.now();
  ForwarderActions actions;
  if (const auto* interest = std::get_if<Interest>(&msg)) {
    actions = node.forwarder.on_interest(face, *interest, now);
  } else if (const auto* obj = std::get_if<ContentObject>(&msg)) {
    actions = node.forwarder.on_content_object(face, *obj, now);
  } else {
    actions = node.forwarder.on_interest_return(face, std::get<InterestReturn>(msg), now);
  }
  metrics_.node(node_id).pit_update(now, node.forwarder.pit().size());
  execute(node_id, std::move(actions));
  sync_pit_timer(node_id);
}

void Simulation::execute(NodeId node_id, ForwarderActions actions) {
  Node& node = net_.node(node_id);
  NodeStats& stats = metrics_.node(node_id);
  for (auto& action : actions) {
    if (auto* send_action = std::get_if<SendAction>(&action)) {
      send(node_id, send_action->face, send_action->msg);
    } else if (auto* local = std::get_if<DeliverLocalAction>(&action)) {
      deliver_local(node_id, local->msg);
    } else if (auto* insert = std::get_if<CacheInsertAction>(&action)) {
      node.forwarder.apply_cache_insert(insert->obj, queue_.now());
    } else if (std::get_if<RecordHitAction>(&action)) {
      ++stats.cache_hits;
    } else if (std::get_if<RecordMissAction>(&action)) {
      ++stats.cache_misses;
    } else if (auto* drop = std::get_if<DropAction>(&action)) {
      ++drop_counts_[static_cast<std::size_t>(drop->reason)];
    }
  }
}

void Simulation::deliver_local(NodeId node_id, const CcnMessage& msg) {
  Node& node = net_.node(node_id);
  NodeRuntime& rt = runtime_[node_id];
  if (const auto* interest = std::get_if<Interest>(&msg)) {
    if (node.server) {
      auto response = node.server->serve(*interest);
      if (auto* obj = std::get_if<ContentObject>(&response)) {
        deliver(node_id, kLocalAppFace, *obj);
      } else {
        deliver(node_id, kLocalAppFace, std::get<InterestReturn>(response));
      }
      return;
    }
    // No application can serve; bounce an Interest Return through the PIT.
    deliver(node_id, kLocalAppFace, InterestReturn{*interest, ReturnCode::NoRoute});
    return;
  }
  if (const auto* obj = std::get_if<ContentObject>(&msg)) {
    if (rt.app) {
      rt.app->on_content_object(*obj);
    }
    return;
  }
  if (rt.app) {
    rt.app->on_interest_return(std::get<InterestReturn>(msg));
  }
}

void Simulation::send(NodeId node_id, FaceId face_id, const CcnMessage& msg) {
  Node& node = net_.node(node_id);
  const Face& face = node.faces.at(face_id);
  std::size_t bytes = encoded_size(msg);
  if (dump_) {
    dump_->record(queue_.now(), node_id, static_cast<std::uint16_t>(face_id), true, msg);
  }

  switch (face.kind) {
    case FaceKind::Wired: {
      WiredLink& link = net_.links[static_cast<std::size_t>(face.link)];
      auto dispatch = link.send(node_id, bytes, queue_.now());
      queue_.schedule(dispatch.arrival,
                      [this, to = dispatch.to, msg] { deliver(to.node, to.face, msg); },
                      "wired.deliver " + net_.node(dispatch.to.node).name);
      return;
    }
    case FaceKind::WirelessClient:
    case FaceKind::WirelessAp:
    case FaceKind::WirelessDirect: {
      const WirelessConfig& wc =
          face.kind == FaceKind::WirelessDirect ? *node.direct : *node.wireless;
      WirelessEndpoint sender{node_id, face_id, wc.mode, wc.range_m, wc.data_rate_bps};
      Duration tx = WiredLink::transmission_time(bytes, wc.data_rate_bps);
      if (wc.mode == WirelessMode::Client) {
        auto ap = net_.registry.nearest_access_point(sender);
        if (!ap) {
          ++wireless_discards_;  // silent; the app retransmits
          return;
        }
        queue_.schedule_in(tx,
                           [this, to = *ap, msg] { deliver(to.node, to.face, msg); },
                           "wireless.deliver " + net_.node(ap->node).name);
        return;
      }
      auto receivers = net_.registry.neighbors(sender);
      if (receivers.empty()) {
        ++wireless_discards_;
        return;
      }
      for (const auto& to : receivers) {
        queue_.schedule_in(tx,
                           [this, node = to.node, face = to.face, msg] {
                             deliver(node, face, msg);
                           },
                           "wireless.deliver " + net_.node(to.node).name);
      }
      return;
    }
    case FaceKind::LocalApp:
      deliver_local(node_id, msg);
      return;
  }
}

void Simulation::sync_pit_timer(NodeId node_id) {
  Node& node = net_.node(node_id);
  NodeRuntime& rt = runtime_[node_id];
  auto want = node.forwarder.pit().next_expiry();
  if (rt.pit_timer && want && rt.pit_timer_at == *want) {
    return;
  }
  if (rt.pit_timer) {
    queue_.cancel(*rt.pit_timer);
    rt.pit_timer.reset();
  }
  if (!want) {
    return;
  }
  rt.pit_timer_at = *want;
  rt.pit_timer = queue_.schedule(*want,
                                 [this, node_id] {
                                   NodeRuntime& r = runtime_[node_id];
                                   r.pit_timer.reset();
                                   Node& n = net_.node(node_id);
                                   n.forwarder.pit_expire(queue_.now());
                                   metrics_.node(node_id).pit_update(
                                       queue_.now(), n.forwarder.pit().size());
                                   sync_pit_timer(node_id);
                                 },
                                 "pit.expire " + node.name);
}

}  // namespace ccnsim
