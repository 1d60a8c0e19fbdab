#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <vector>

#include "ccnsim/apps.hpp"
#include "ccnsim/codec.hpp"
#include "ccnsim/event_queue.hpp"
#include "ccnsim/metrics.hpp"
#include "ccnsim/scenario.hpp"
#include "ccnsim/topology.hpp"

namespace ccnsim {

/// One simulation run: owns the event queue, the network, the live apps and
/// the metrics collectors. Runs are fully independent of one another.
class Simulation {
public:
  explicit Simulation(ScenarioConfig config);
  ~Simulation();

  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  /// Runs to the configured duration, sampling the time series and finalizing
  /// the metrics. Callable once.
  RunSummary run();

  void enable_packet_dump(const std::filesystem::path& path);

  const ScenarioConfig& config() const { return config_; }
  Network& network() { return net_; }
  const Network& network() const { return net_; }
  NetworkMetrics& metrics() { return metrics_; }
  EventQueue& queue() { return queue_; }
  const SummaryReport& summary() const { return summary_; }

  ContentDownloadApp* download_app(NodeId id);

  std::uint64_t total_cs_lookups() const;
  std::size_t total_pit_entries() const;

  // Invariant monitors, evaluated at every metrics sample.
  std::uint64_t cs_bound_violations() const { return cs_bound_violations_; }
  Duration max_pit_age_seen() const { return max_pit_age_seen_; }
  std::uint64_t wireless_discards() const { return wireless_discards_; }
  std::uint64_t drops(DropAction::Reason reason) const;

private:
  class Host;

  void deliver(NodeId node, FaceId face, const CcnMessage& msg);
  void execute(NodeId node, ForwarderActions actions);
  void deliver_local(NodeId node, const CcnMessage& msg);
  void send(NodeId node, FaceId face, const CcnMessage& msg);
  void sync_pit_timer(NodeId node);
  void schedule_mobility_transition(NodeId node);
  void sample_now();
  void sample_tick(Duration interval);
  void position_update_tick(Duration interval);
  void check_invariants();

  ScenarioConfig config_;
  EventQueue queue_;
  Network net_;
  NetworkMetrics metrics_;
  SummaryReport summary_;

  struct NodeRuntime {
    std::unique_ptr<Host> host;
    std::unique_ptr<ContentDownloadApp> app;
    std::optional<EventId> pit_timer;
    SimTime pit_timer_at;
  };
  std::vector<NodeRuntime> runtime_;
  std::vector<NodeId> mobile_nodes_;

  std::unique_ptr<PacketDumpWriter> dump_;
  bool ran_ = false;

  std::uint64_t cs_bound_violations_ = 0;
  Duration max_pit_age_seen_{0};
  std::uint64_t wireless_discards_ = 0;
  std::uint64_t drop_counts_[3] = {0, 0, 0};
};

}  // namespace ccnsim
