#include "ccnsim/event_queue.hpp"

#include <chrono>
#include <stdexcept>
#include <utility>

#include <charconv>

namespace ccnsim {

std::string format_time(SimTime t) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), t.seconds());
  return std::string(buf, res.ptr) + "s";
}

EventId EventQueue::schedule(SimTime at, EventHandler handler, std::string label) {
  if (at < now_) {
    throw std::logic_error("schedule in the past: at=" + format_time(at) +
                           " now=" + format_time(now_) +
                           (label.empty() ? "" : " event=" + label));
  }
  EventId id = next_id_++;
  heap_.push(HeapItem{at, next_seq_++, id});
  pending_.emplace(id, Pending{std::move(handler), std::move(label)});
  return id;
}

EventId EventQueue::schedule_in(Duration delay, EventHandler handler, std::string label) {
  return schedule(now_ + delay, std::move(handler), std::move(label));
}

bool EventQueue::cancel(EventId id) {
  return pending_.erase(id) > 0;  // heap entry is skipped lazily
}

RunSummary EventQueue::run_until(SimTime t_end) {
  if (t_end < now_) {
    throw std::logic_error("run_until into the past: t_end=" + format_time(t_end) +
                           " now=" + format_time(now_));
  }
  auto wall_start = std::chrono::steady_clock::now();
  RunSummary summary;
  while (!heap_.empty() && heap_.top().at <= t_end) {
    HeapItem item = heap_.top();
    heap_.pop();
    auto it = pending_.find(item.id);
    if (it == pending_.end()) {
      continue;  // cancelled
    }
    EventHandler handler = std::move(it->second.handler);
    std::string label = std::move(it->second.label);
    pending_.erase(it);
    now_ = item.at;
    try {
      handler();
    } catch (const std::exception& e) {
      throw std::runtime_error("event handler fault at t=" + format_time(now_) +
                               (label.empty() ? "" : " event=" + label) + ": " + e.what());
    }
    ++summary.events_processed;
  }
  now_ = t_end;
  summary.end_time = now_;
  summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  return summary;
}

}  // namespace ccnsim
