#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ccnsim/time.hpp"

namespace ccnsim {

/// Per-node statistics blackboard, shared by the forwarder and the apps of
/// one node.
struct NodeStats {
  // Forwarder side.
  std::uint64_t cache_hits = 0;
  std::uint64_t cache_misses = 0;
  std::uint64_t retransmitted_bytes_received = 0;

  // Download app side.
  std::uint64_t interests_sent = 0;
  std::uint64_t interest_bytes_sent = 0;
  std::uint64_t retransmitted_count = 0;
  std::uint64_t retransmitted_bytes = 0;
  std::uint64_t downloads_completed = 0;
  std::uint64_t downloads_failed = 0;
  Duration content_duration_sum{0};
  Duration segment_duration_sum{0};
  std::uint64_t segments_completed = 0;

  /// Advances the time-weighted PIT size integral; call on every size change.
  void pit_update(SimTime now, std::uint64_t size);
  /// Integral of |PIT| dt (entry-nanoseconds) up to `now`.
  __int128 pit_integral_at(SimTime now) const;
  /// Time-weighted average entry count over [0, end].
  double pit_time_weighted_avg(SimTime end) const;

  std::optional<double> hit_ratio() const;

  std::uint64_t pit_size_now = 0;

private:
  __int128 pit_integral_ns_ = 0;
  SimTime pit_last_change_;
};

/// One row of the network-wide time series.
struct TimeRow {
  double time_s = 0;
  std::uint64_t cache_hits_cum = 0;
  std::uint64_t cache_misses_cum = 0;
  std::optional<double> cache_hit_ratio_cum;
  std::optional<double> cache_hit_ratio_window;
  double avg_pit_count_window = 0;
  std::uint64_t interest_bytes_sent_cum = 0;
  std::uint64_t retransmission_bytes_cum = 0;
  std::uint64_t downloads_completed_cum = 0;
  std::optional<double> avg_content_download_s_cum;
  std::optional<double> avg_segment_download_s_cum;
};

struct RunMeta {
  std::uint64_t seed = 0;
  double duration_s = 0;
  std::string config_hash;
  std::uint64_t events_processed = 0;
};

/// Network-wide end-of-run values.
struct SummaryReport {
  std::uint64_t cache_hits = 0;
  std::uint64_t cache_misses = 0;
  std::optional<double> cache_hit_ratio;
  double avg_pit_count = 0;  // mean over nodes of the time-weighted average
  std::uint64_t interests_sent = 0;
  std::uint64_t interest_bytes_sent = 0;
  std::uint64_t retransmitted_interest_count = 0;
  std::uint64_t retransmission_bytes_sent = 0;
  std::uint64_t retransmission_bytes_received = 0;
  std::uint64_t downloads_completed = 0;
  std::uint64_t downloads_failed = 0;
  std::optional<double> avg_content_download_s;
  std::optional<double> avg_segment_download_s;
};

/// Aggregates the per-node blackboards into the time series and the
/// end-of-run summary, and writes the CSV outputs.
class NetworkMetrics {
public:
  explicit NetworkMetrics(std::vector<std::string> node_names);

  NodeStats& node(std::uint32_t id) { return stats_[id]; }
  const NodeStats& node(std::uint32_t id) const { return stats_[id]; }
  std::size_t node_count() const { return stats_.size(); }

  /// Appends one time-series row; call at t=0, every sample interval, and at
  /// the end of the run.
  void sample(SimTime now);

  SummaryReport finalize(SimTime end, std::uint64_t total_cs_lookups);

  const std::vector<TimeRow>& rows() const { return rows_; }

  void write_network_csv(std::ostream& out) const;
  void write_node_csv(std::ostream& out) const;
  void write_summary_csv(std::ostream& out, const RunMeta& meta, SimTime end) const;

private:
  SummaryReport totals(SimTime end) const;

  std::vector<std::string> node_names_;
  std::vector<NodeStats> stats_;
  std::vector<TimeRow> rows_;

  // Snapshot at the previous sample, for window columns.
  SimTime prev_time_;
  std::uint64_t prev_hits_ = 0;
  std::uint64_t prev_misses_ = 0;
  std::vector<__int128> prev_pit_integrals_;
};

/// Shortest round-trip decimal formatting; undefined optionals become the
/// empty string.
std::string format_csv(double value);
std::string format_csv(std::optional<double> value);

}  // namespace ccnsim
