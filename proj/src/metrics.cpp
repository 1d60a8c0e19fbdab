#include "ccnsim/metrics.hpp"

#include <charconv>
#include <stdexcept>
#include <utility>

namespace ccnsim {

void NodeStats::pit_update(SimTime now, std::uint64_t size) {
  pit_integral_ns_ +=
      static_cast<__int128>(pit_size_now) * (now - pit_last_change_).count();
  pit_last_change_ = now;
  pit_size_now = size;
}

__int128 NodeStats::pit_integral_at(SimTime now) const {
  return pit_integral_ns_ +
         static_cast<__int128>(pit_size_now) * (now - pit_last_change_).count();
}

double NodeStats::pit_time_weighted_avg(SimTime end) const {
  if (end.ns() == 0) {
    return 0;
  }
  return static_cast<double>(pit_integral_at(end)) / static_cast<double>(end.ns());
}

std::optional<double> NodeStats::hit_ratio() const {
  std::uint64_t total = cache_hits + cache_misses;
  if (total == 0) {
    return std::nullopt;
  }
  return static_cast<double>(cache_hits) / static_cast<double>(total);
}

std::string format_csv(double value) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string format_csv(std::optional<double> value) {
  return value ? format_csv(*value) : std::string{};
}

NetworkMetrics::NetworkMetrics(std::vector<std::string> node_names)
    : node_names_(std::move(node_names)),
      stats_(node_names_.size()),
      prev_pit_integrals_(node_names_.size(), 0) {}

void NetworkMetrics::sample(SimTime now) {
  TimeRow row;
  row.time_s = now.seconds();
  std::uint64_t hits = 0, misses = 0;
  for (const auto& s : stats_) {
    hits += s.cache_hits;
    misses += s.cache_misses;
    row.interest_bytes_sent_cum += s.interest_bytes_sent;
    row.retransmission_bytes_cum += s.retransmitted_bytes;
    row.downloads_completed_cum += s.downloads_completed;
  }
  row.cache_hits_cum = hits;
  row.cache_misses_cum = misses;
  if (hits + misses > 0) {
    row.cache_hit_ratio_cum = static_cast<double>(hits) / static_cast<double>(hits + misses);
  }
  std::uint64_t window_hits = hits - prev_hits_;
  std::uint64_t window_misses = misses - prev_misses_;
  if (window_hits + window_misses > 0) {
    row.cache_hit_ratio_window = static_cast<double>(window_hits) /
                                 static_cast<double>(window_hits + window_misses);
  }
  Duration window = now - prev_time_;
  if (window.count() > 0 && !stats_.empty()) {
    double sum = 0;
    for (std::size_t i = 0; i < stats_.size(); ++i) {
      __int128 integral = stats_[i].pit_integral_at(now) - prev_pit_integrals_[i];
      sum += static_cast<double>(integral) / static_cast<double>(window.count());
    }
    row.avg_pit_count_window = sum / static_cast<double>(stats_.size());
  }
  Duration content_sum{0}, segment_sum{0};
  std::uint64_t content_n = 0, segment_n = 0;
  for (const auto& s : stats_) {
    content_sum += s.content_duration_sum;
    content_n += s.downloads_completed;
    segment_sum += s.segment_duration_sum;
    segment_n += s.segments_completed;
  }
  if (content_n > 0) {
    row.avg_content_download_s_cum =
        duration_seconds(content_sum) / static_cast<double>(content_n);
  }
  if (segment_n > 0) {
    row.avg_segment_download_s_cum =
        duration_seconds(segment_sum) / static_cast<double>(segment_n);
  }
  rows_.push_back(row);

  prev_time_ = now;
  prev_hits_ = hits;
  prev_misses_ = misses;
  for (std::size_t i = 0; i < stats_.size(); ++i) {
    prev_pit_integrals_[i] = stats_[i].pit_integral_at(now);
  }
}

SummaryReport NetworkMetrics::totals(SimTime end) const {
  SummaryReport r;
  double pit_sum = 0;
  Duration content_sum{0}, segment_sum{0};
  std::uint64_t segment_n = 0;
  for (const auto& s : stats_) {
    r.cache_hits += s.cache_hits;
    r.cache_misses += s.cache_misses;
    r.interests_sent += s.interests_sent;
    r.interest_bytes_sent += s.interest_bytes_sent;
    r.retransmitted_interest_count += s.retransmitted_count;
    r.retransmission_bytes_sent += s.retransmitted_bytes;
    r.retransmission_bytes_received += s.retransmitted_bytes_received;
    r.downloads_completed += s.downloads_completed;
    r.downloads_failed += s.downloads_failed;
    content_sum += s.content_duration_sum;
    segment_sum += s.segment_duration_sum;
    segment_n += s.segments_completed;
    pit_sum += s.pit_time_weighted_avg(end);
  }
  if (r.cache_hits + r.cache_misses > 0) {
    r.cache_hit_ratio = static_cast<double>(r.cache_hits) /
                        static_cast<double>(r.cache_hits + r.cache_misses);
  }
  if (!stats_.empty()) {
    r.avg_pit_count = pit_sum / static_cast<double>(stats_.size());
  }
  if (r.downloads_completed > 0) {
    r.avg_content_download_s =
        duration_seconds(content_sum) / static_cast<double>(r.downloads_completed);
  }
  if (segment_n > 0) {
    r.avg_segment_download_s =
        duration_seconds(segment_sum) / static_cast<double>(segment_n);
  }
  return r;
}

SummaryReport NetworkMetrics::finalize(SimTime end, std::uint64_t total_cs_lookups) {
  SummaryReport r = totals(end);
  if (r.cache_hits + r.cache_misses != total_cs_lookups) {
    throw std::logic_error("cache hit/miss conservation violated: " +
                           std::to_string(r.cache_hits) + "+" +
                           std::to_string(r.cache_misses) +
                           " != " + std::to_string(total_cs_lookups) + " lookups");
  }
  return r;
}

void NetworkMetrics::write_network_csv(std::ostream& out) const {
  out << "time_s,cache_hits_cum,cache_misses_cum,cache_hit_ratio_cum,"
         "cache_hit_ratio_window,avg_pit_count_window,interest_bytes_sent_cum,"
         "retransmission_bytes_cum,downloads_completed_cum,"
         "avg_content_download_s_cum,avg_segment_download_s_cum\n";
  for (const auto& row : rows_) {
    out << format_csv(row.time_s) << ',' << row.cache_hits_cum << ','
        << row.cache_misses_cum << ',' << format_csv(row.cache_hit_ratio_cum) << ','
        << format_csv(row.cache_hit_ratio_window) << ','
        << format_csv(row.avg_pit_count_window) << ',' << row.interest_bytes_sent_cum
        << ',' << row.retransmission_bytes_cum << ',' << row.downloads_completed_cum
        << ',' << format_csv(row.avg_content_download_s_cum) << ','
        << format_csv(row.avg_segment_download_s_cum) << '\n';
  }
}

void NetworkMetrics::write_node_csv(std::ostream& out) const {
  out << "node_id,cache_hits,cache_misses,cache_hit_ratio,avg_pit_count,"
         "interests_sent,interest_bytes_sent,retransmitted_interest_count,"
         "retransmission_bytes_sent,retransmission_bytes_received,"
         "downloads_completed,downloads_failed,avg_content_download_s,"
         "avg_segment_download_s\n";
  SimTime end = prev_time_;  // last sample is the end of the run
  for (std::size_t i = 0; i < stats_.size(); ++i) {
    const auto& s = stats_[i];
    std::optional<double> content_avg, segment_avg;
    if (s.downloads_completed > 0) {
      content_avg = duration_seconds(s.content_duration_sum) /
                    static_cast<double>(s.downloads_completed);
    }
    if (s.segments_completed > 0) {
      segment_avg = duration_seconds(s.segment_duration_sum) /
                    static_cast<double>(s.segments_completed);
    }
    out << node_names_[i] << ',' << s.cache_hits << ',' << s.cache_misses << ','
        << format_csv(s.hit_ratio()) << ',' << format_csv(s.pit_time_weighted_avg(end))
        << ',' << s.interests_sent << ',' << s.interest_bytes_sent << ','
        << s.retransmitted_count << ',' << s.retransmitted_bytes << ','
        << s.retransmitted_bytes_received << ',' << s.downloads_completed << ','
        << s.downloads_failed << ',' << format_csv(content_avg) << ','
        << format_csv(segment_avg) << '\n';
  }
}

void NetworkMetrics::write_summary_csv(std::ostream& out, const RunMeta& meta,
                                       SimTime end) const {
  SummaryReport r = totals(end);
  out << "seed,duration_s,config_hash,events_processed,cache_hits,cache_misses,"
         "cache_hit_ratio,avg_pit_count,interests_sent,interest_bytes_sent,"
         "retransmitted_interest_count,retransmission_bytes_sent,"
         "retransmission_bytes_received,downloads_completed,downloads_failed,"
         "avg_content_download_s,avg_segment_download_s\n";
  out << meta.seed << ',' << format_csv(meta.duration_s) << ',' << meta.config_hash
      << ',' << meta.events_processed << ',' << r.cache_hits << ',' << r.cache_misses
      << ',' << format_csv(r.cache_hit_ratio) << ',' << format_csv(r.avg_pit_count)
      << ',' << r.interests_sent << ',' << r.interest_bytes_sent << ','
      << r.retransmitted_interest_count << ',' << r.retransmission_bytes_sent << ','
      << r.retransmission_bytes_received << ',' << r.downloads_completed << ','
      << r.downloads_failed << ',' << format_csv(r.avg_content_download_s) << ','
      << format_csv(r.avg_segment_download_s) << '\n';
}

}  // namespace ccnsim
