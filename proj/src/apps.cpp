#include "ccnsim/apps.hpp"

#include <charconv>
#include <deque>

#include "ccnsim/codec.hpp"
#include "ccnsim/topology.hpp"

namespace ccnsim {

ContentDownloadApp::ContentDownloadApp(AppHost& host, NodeStats& stats, RngStream rng,
                                       DownloadConfig config)
    : host_(host), stats_(stats), rng_(std::move(rng)), config_(std::move(config)) {}

void ContentDownloadApp::start() {
  schedule_next_tick();
}

void ContentDownloadApp::schedule_next_tick() {
  double delay_s = config_.fixed_interval ? config_.inter_download_mean_s
                                          : rng_.exponential(config_.inter_download_mean_s);
  host_.schedule_in(duration_from_seconds(delay_s), [this] { tick(); }, "app.download");
}

void ContentDownloadApp::tick() {
  const CatalogConfig& target =
      config_.targets[rng_.uniform_index(config_.targets.size())];
  std::uint64_t item = rng_.uniform_index(target.catalog_size);
  ContentName content = target.prefix.with_appended("content" + std::to_string(item));

  Download d;
  d.id = next_download_id_++;
  d.record_index = records_.size();
  d.content = content;
  d.segment = 0;
  DownloadRecord record;
  record.content = content;
  record.started_at = host_.now();
  records_.push_back(std::move(record));
  auto [it, inserted] = active_.emplace(d.id, std::move(d));
  issue(it->second, false);

  schedule_next_tick();
}

void ContentDownloadApp::issue(Download& d, bool retransmission) {
  Interest interest;
  interest.name = d.content.with_segment(d.segment);
  interest.retransmission = retransmission;
  std::uint64_t bytes = encoded_size(interest);

  ++stats_.interests_sent;
  stats_.interest_bytes_sent += bytes;
  if (retransmission) {
    ++d.retransmissions;
    ++stats_.retransmitted_count;
    stats_.retransmitted_bytes += bytes;
    auto& record = records_[d.record_index];
    ++record.retransmissions;
    record.retransmission_bytes += bytes;
  } else {
    d.first_issued = host_.now();
    d.retransmissions = 0;
    records_[d.record_index].segments.push_back(SegmentTiming{host_.now(), std::nullopt});
  }
  requested_.insert(interest.name);
  std::uint64_t id = d.id;
  d.rto_timer = host_.schedule_in(duration_from_seconds(config_.rto_s),
                                  [this, id] { on_timeout(id); }, "app.rto");
  // Expressing the interest can be satisfied synchronously from the node's
  // own content store, re-entering this app and possibly completing (and
  // erasing) this download. It must be the last access to `d` in every frame.
  host_.express_interest(interest);
}

void ContentDownloadApp::on_timeout(std::uint64_t download_id) {
  auto it = active_.find(download_id);
  if (it == active_.end()) {
    return;
  }
  attempt_terminated(it->second);
}

void ContentDownloadApp::attempt_terminated(Download& d) {
  if (d.retransmissions >= config_.max_retries) {
    abort_download(d);
    return;
  }
  issue(d, true);
}

void ContentDownloadApp::abort_download(Download& d) {
  host_.cancel_event(d.rto_timer);
  records_[d.record_index].failed = true;
  ++stats_.downloads_failed;
  active_.erase(d.id);
}

void ContentDownloadApp::on_content_object(const ContentObject& obj) {
  if (!requested_.count(obj.name)) {
    ++unmatched_deliveries_;
    return;
  }
  std::vector<std::uint64_t> matched;
  for (const auto& [id, d] : active_) {
    if (obj.name.segment() && d.segment == *obj.name.segment() &&
        d.content == obj.name.without_segment()) {
      matched.push_back(id);
    }
  }
  for (std::uint64_t id : matched) {
    auto it = active_.find(id);
    if (it != active_.end()) {
      segment_received(it->second, obj);
    }
  }
}

void ContentDownloadApp::segment_received(Download& d, const ContentObject& obj) {
  host_.cancel_event(d.rto_timer);
  stats_.segment_duration_sum += host_.now() - d.first_issued;
  ++stats_.segments_completed;
  records_[d.record_index].segments[d.segment].completed = host_.now();
  if (!d.total_segments) {
    d.total_segments = obj.total_segments;
  }
  if (d.segment + 1 < *d.total_segments) {
    ++d.segment;
    issue(d, false);
    return;
  }
  auto& record = records_[d.record_index];
  record.finished_at = host_.now();
  ++stats_.downloads_completed;
  stats_.content_duration_sum += host_.now() - record.started_at;
  active_.erase(d.id);
}

void ContentDownloadApp::on_interest_return(const InterestReturn& ret) {
  const ContentName& name = ret.original.name;
  if (!name.segment()) {
    return;
  }
  std::vector<std::uint64_t> matched;
  for (const auto& [id, d] : active_) {
    if (d.segment == *name.segment() && d.content == name.without_segment()) {
      matched.push_back(id);
    }
  }
  for (std::uint64_t id : matched) {
    auto it = active_.find(id);
    if (it != active_.end()) {
      host_.cancel_event(it->second.rto_timer);
      attempt_terminated(it->second);
    }
  }
}

bool ContentDownloadApp::ever_requested(const ContentName& name_with_segment) const {
  return requested_.count(name_with_segment) > 0;
}

ContentServerApp::ContentServerApp(CatalogConfig catalog) : catalog_(std::move(catalog)) {}

namespace {

/// Parses "content<i>"; returns the index or nullopt.
std::optional<std::uint64_t> content_index(const std::string& component) {
  constexpr std::string_view kStem = "content";
  if (component.size() <= kStem.size() || component.compare(0, kStem.size(), kStem) != 0) {
    return std::nullopt;
  }
  const char* first = component.data() + kStem.size();
  const char* last = component.data() + component.size();
  std::uint64_t value = 0;
  auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last) {
    return std::nullopt;
  }
  return value;
}

}  // namespace

std::variant<ContentObject, InterestReturn> ContentServerApp::serve(
    const Interest& interest) {
  const ContentName& name = interest.name;
  bool ok = catalog_.prefix.is_prefix_of(name) &&
            name.component_count() == catalog_.prefix.component_count() + 1 &&
            name.segment().has_value();
  if (ok) {
    auto index = content_index(name.components().back());
    ok = index && *index < catalog_.catalog_size &&
         *name.segment() < catalog_.total_segments;
  }
  if (!ok) {
    ++returned_;
    return InterestReturn{interest, ReturnCode::NoRoute};
  }
  ++served_;
  ContentObject obj;
  obj.name = name;
  obj.payload_size = catalog_.segment_size;
  obj.expiry_ms = catalog_.expiry_ms;
  obj.total_segments = catalog_.total_segments;
  return obj;
}

void advertise_prefixes(Network& net) {
  struct Advertisement {
    NodeId node;
    FaceId in_face;
    ContentName prefix;
    std::uint32_t metric;
  };
  std::deque<Advertisement> queue;

  auto flood = [&](const Node& node, FaceId except, const ContentName& prefix,
                   std::uint32_t metric) {
    for (const auto& face : node.faces) {
      if (face.kind != FaceKind::Wired || face.id == except) {
        continue;
      }
      LinkEndpoint peer = net.wired_peer(node.id, face.id);
      queue.push_back(Advertisement{peer.node, peer.face, prefix, metric});
    }
  };

  for (const auto& node : net.nodes) {
    if (node->model != NodeModel::ContentServer || !node->server) {
      continue;
    }
    const ContentName& prefix = node->server->catalog().prefix;
    node->forwarder.fib().install_best(prefix, kLocalAppFace, 0);
    flood(*node, kLocalAppFace, prefix, 1);
  }

  while (!queue.empty()) {
    Advertisement ad = queue.front();
    queue.pop_front();
    Node& node = *net.nodes[ad.node];
    auto stored = node.forwarder.fib().best_metric(ad.prefix);
    if (stored && *stored <= ad.metric) {
      continue;  // ties keep the incumbent
    }
    node.forwarder.fib().install_best(ad.prefix, ad.in_face, ad.metric);
    flood(node, ad.in_face, ad.prefix, ad.metric + 1);
  }

  // Clients reach everything through their wireless client face.
  for (const auto& node : net.nodes) {
    if (node->model == NodeModel::WirelessNode ||
        node->model == NodeModel::WirelessDtnNode) {
      node->forwarder.fib().install_best(ContentName{}, *node->wireless_face, 0);
    }
  }
}

}  // namespace ccnsim
