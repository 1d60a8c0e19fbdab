#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "ccnsim/time.hpp"

namespace ccnsim {

using EventId = std::uint64_t;
using EventHandler = std::function<void()>;

struct RunSummary {
  std::uint64_t events_processed = 0;
  double wall_seconds = 0;
  SimTime end_time;
};

/// Ordered event queue with a virtual clock. Events with equal fire time are
/// delivered in insertion order (stable tie-break); cancelled events never
/// fire. Scheduling in the past is a programming error and aborts the run.
class EventQueue {
public:
  SimTime now() const { return now_; }

  EventId schedule(SimTime at, EventHandler handler, std::string label = {});
  EventId schedule_in(Duration delay, EventHandler handler, std::string label = {});

  /// True iff the event was pending and is now removed.
  bool cancel(EventId id);

  /// Processes every event with fire_at <= t_end in (fire_at, seq) order and
  /// leaves the clock at t_end (events at exactly t_end fire).
  RunSummary run_until(SimTime t_end);

  std::size_t pending_count() const { return pending_.size(); }

private:
  struct HeapItem {
    SimTime at;
    std::uint64_t seq;
    EventId id;
  };
  struct LaterFirst {
    bool operator()(const HeapItem& a, const HeapItem& b) const {
      if (a.at != b.at) return a.at > b.at;
      return a.seq > b.seq;
    }
  };
  struct Pending {
    EventHandler handler;
    std::string label;
  };

  std::priority_queue<HeapItem, std::vector<HeapItem>, LaterFirst> heap_;
  std::unordered_map<EventId, Pending> pending_;
  SimTime now_;
  EventId next_id_ = 1;
  std::uint64_t next_seq_ = 0;
};

}  // namespace ccnsim
