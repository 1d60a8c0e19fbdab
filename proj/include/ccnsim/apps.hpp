#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "ccnsim/event_queue.hpp"
#include "ccnsim/messages.hpp"
#include "ccnsim/metrics.hpp"
#include "ccnsim/rng.hpp"

namespace ccnsim {

/// One server's content catalog: items named <prefix>/content<i> for
/// i in [0, catalog_size), each split into total_segments segments of
/// segment_size bytes.
struct CatalogConfig {
  ContentName prefix;
  std::uint64_t catalog_size = 1;
  std::uint32_t total_segments = 10;
  std::uint32_t segment_size = 1000;
  std::uint64_t expiry_ms = 3'600'000;
};

struct DownloadConfig {
  double inter_download_mean_s = 300;
  bool fixed_interval = false;  // exponential by default
  double rto_s = 4;
  std::uint32_t max_retries = 5;
  std::vector<CatalogConfig> targets;  // catalogs this app downloads from
};

struct SegmentTiming {
  SimTime first_issued;  // retransmissions keep the first time
  std::optional<SimTime> completed;
};

struct DownloadRecord {
  ContentName content;  // no segment
  SimTime started_at;
  std::optional<SimTime> finished_at;
  std::vector<SegmentTiming> segments;  // indexed by segment number
  bool failed = false;
  std::uint32_t retransmissions = 0;
  std::uint64_t retransmission_bytes = 0;

  Duration duration() const { return *finished_at - started_at; }
};

/// Node services an application needs: timers and the local face.
class AppHost {
public:
  virtual ~AppHost() = default;
  virtual SimTime now() const = 0;
  virtual EventId schedule_in(Duration delay, std::function<void()> fn,
                              std::string label) = 0;
  virtual bool cancel_event(EventId id) = 0;
  virtual void express_interest(const Interest& interest) = 0;
};

/// Initiates content downloads: picks a catalog and an item uniformly, fetches
/// segments sequentially (window of one), re-issues an identical Interest when
/// the retransmission timeout elapses or an Interest Return terminates the
/// attempt, and gives up on a download after max_retries re-issues of one
/// segment. Downloads may overlap; each is tracked independently.
class ContentDownloadApp {
public:
  ContentDownloadApp(AppHost& host, NodeStats& stats, RngStream rng,
                     DownloadConfig config);

  /// Schedules the first download one drawn interval from now.
  void start();
  void on_content_object(const ContentObject& obj);
  void on_interest_return(const InterestReturn& ret);

  const std::vector<DownloadRecord>& records() const { return records_; }
  std::size_t active_downloads() const { return active_.size(); }
  /// True iff the app ever issued an Interest for exactly this (name, segment).
  bool ever_requested(const ContentName& name_with_segment) const;
  /// Content Objects delivered that match no Interest this app ever sent.
  std::uint64_t unmatched_deliveries() const { return unmatched_deliveries_; }

private:
  struct Download {
    std::uint64_t id = 0;
    std::size_t record_index = 0;
    ContentName content;  // no segment
    std::uint32_t segment = 0;
    std::optional<std::uint32_t> total_segments;
    SimTime first_issued;  // of the pending segment; retransmissions keep it
    std::uint32_t retransmissions = 0;  // of the pending segment
    EventId rto_timer = 0;
  };

  void tick();
  void schedule_next_tick();
  void issue(Download& d, bool retransmission);
  void on_timeout(std::uint64_t download_id);
  void attempt_terminated(Download& d);
  void segment_received(Download& d, const ContentObject& obj);
  void abort_download(Download& d);

  AppHost& host_;
  NodeStats& stats_;
  RngStream rng_;
  DownloadConfig config_;
  std::map<std::uint64_t, Download> active_;
  std::vector<DownloadRecord> records_;
  std::set<ContentName> requested_;  // with segment
  std::uint64_t unmatched_deliveries_ = 0;
  std::uint64_t next_download_id_ = 1;
};

/// Answers Interests for the hosted catalog; out-of-catalog or out-of-range
/// requests get an Interest Return (NoRoute). Serving is instantaneous.
class ContentServerApp {
public:
  explicit ContentServerApp(CatalogConfig catalog);

  std::variant<ContentObject, InterestReturn> serve(const Interest& interest);

  const CatalogConfig& catalog() const { return catalog_; }
  std::uint64_t served_count() const { return served_; }
  std::uint64_t returned_count() const { return returned_; }

private:
  CatalogConfig catalog_;
  std::uint64_t served_ = 0;
  std::uint64_t returned_ = 0;
};

struct Network;

/// Control-plane prefix dissemination, run once at build time in zero
/// simulated time. Every content server seeds its own FIB (prefix -> local
/// face, metric 0) and floods (prefix, 1) over its wired faces; a node
/// receiving (prefix, m) on face f installs (prefix -> f, metric m) iff m
/// improves the stored metric (ties keep the incumbent) and re-floods with
/// m+1. Flooding order is stable: servers in node order, faces ascending.
/// Wireless client and DTN nodes install a default route to their client face.
void advertise_prefixes(Network& net);

}  // namespace ccnsim
