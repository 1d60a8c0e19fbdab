#include "ccnsim/forwarder.hpp"

#include <algorithm>

namespace ccnsim {

void Fib::install(const ContentName& prefix, FaceId face, std::uint32_t metric) {
  table_[prefix.without_segment()][face] = metric;
}

void Fib::install_best(const ContentName& prefix, FaceId face, std::uint32_t metric) {
  auto& hops = table_[prefix.without_segment()];
  hops.clear();
  hops[face] = metric;
}

std::optional<std::uint32_t> Fib::best_metric(const ContentName& prefix) const {
  auto it = table_.find(prefix.without_segment());
  if (it == table_.end() || it->second.empty()) {
    return std::nullopt;
  }
  std::uint32_t best = it->second.begin()->second;
  for (const auto& [face, metric] : it->second) {
    best = std::min(best, metric);
  }
  return best;
}

std::optional<FibEntry> Fib::longest_prefix_match(const ContentName& name) const {
  // Walk exact prefixes from longest to shortest; length 0 is the default route.
  for (std::size_t len = name.component_count() + 1; len-- > 0;) {
    auto it = table_.find(name.prefix_of_length(len));
    if (it == table_.end() || it->second.empty()) {
      continue;
    }
    FibEntry best{it->first, 0, 0};
    bool first = true;
    for (const auto& [face, metric] : it->second) {
      if (first || metric < best.metric || (metric == best.metric && face < best.face)) {
        best.face = face;
        best.metric = metric;
        first = false;
      }
    }
    return best;
  }
  return std::nullopt;
}

std::vector<FibEntry> Fib::entries() const {
  std::vector<FibEntry> out;
  for (const auto& [prefix, hops] : table_) {
    for (const auto& [face, metric] : hops) {
      out.push_back(FibEntry{prefix, face, metric});
    }
  }
  return out;
}

std::size_t Fib::size() const {
  std::size_t n = 0;
  for (const auto& [prefix, hops] : table_) {
    n += hops.size();
  }
  return n;
}

const ContentObject* ContentStore::lookup(const ContentName& key) {
  ++lookup_count_;
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second.object;
}

bool ContentStore::contains(const ContentName& key) const {
  return entries_.count(key) > 0;
}

std::optional<CsEntry> ContentStore::insert(const ContentObject& obj, SimTime now) {
  if (capacity_ == 0) {
    return std::nullopt;
  }
  auto it = entries_.find(obj.name);
  if (it != entries_.end()) {
    it->second.object = obj;  // refresh payload, keep fifo position
    return std::nullopt;
  }
  std::optional<CsEntry> evicted;
  if (entries_.size() >= capacity_) {
    auto oldest = fifo_.begin();
    auto victim = entries_.find(oldest->second);
    evicted = std::move(victim->second);
    entries_.erase(victim);
    fifo_.erase(oldest);
  }
  std::uint64_t seq = next_seq_++;
  entries_.emplace(obj.name, CsEntry{obj, now, seq});
  fifo_.emplace(seq, obj.name);
  return evicted;
}

PitEntry* Pit::find(const ContentName& key) {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

const PitEntry* Pit::find(const ContentName& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

PitEntry& Pit::create(const ContentName& key, SimTime now, SimTime expiry_at) {
  auto [it, inserted] = entries_.emplace(
      key, PitEntry{key, {}, {}, now, expiry_at, next_id_++});
  return it->second;
}

void Pit::remove(const ContentName& key) {
  entries_.erase(key);
}

std::optional<SimTime> Pit::next_expiry() const {
  std::optional<SimTime> earliest;
  for (const auto& [key, entry] : entries_) {
    if (!earliest || entry.expiry_at < *earliest) {
      earliest = entry.expiry_at;
    }
  }
  return earliest;
}

std::optional<Duration> Pit::oldest_age(SimTime now) const {
  std::optional<Duration> oldest;
  for (const auto& [key, entry] : entries_) {
    Duration age = now - entry.created_at;
    if (!oldest || age > *oldest) {
      oldest = age;
    }
  }
  return oldest;
}

std::size_t Pit::expire_due(SimTime now) {
  std::size_t removed = 0;
  for (auto it = entries_.begin(); it != entries_.end();) {
    if (it->second.expiry_at <= now) {
      it = entries_.erase(it);
      ++removed;
    } else {
      ++it;
    }
  }
  return removed;
}

namespace {

/// Local-face effects become DeliverLocal, everything else a Send.
ForwarderAction emit(FaceId face, CcnMessage msg) {
  if (face == kLocalAppFace) {
    return DeliverLocalAction{std::move(msg)};
  }
  return SendAction{face, std::move(msg)};
}

}  // namespace

ForwarderActions Forwarder::on_interest(FaceId in_face, const Interest& interest,
                                        SimTime now) {
  ForwarderActions actions;
  const ContentName& key = interest.name;

  PitEntry* entry = pit_.find(key);
  if (entry && entry->out_faces.count(in_face)) {
    // Interest came back on the face we forwarded it out of.
    actions.push_back(DropAction{DropAction::Reason::LoopGuard});
    return actions;
  }

  Interest fwd = interest;
  if (fwd.hop_limit > 0) {
    --fwd.hop_limit;
  }

  if (const ContentObject* cached = cs_.lookup(key)) {
    actions.push_back(RecordHitAction{});
    actions.push_back(emit(in_face, *cached));
    return actions;
  }
  actions.push_back(RecordMissAction{});

  std::optional<FibEntry> route = fib_.longest_prefix_match(key);

  if (fwd.hop_limit == 0) {
    // Out of hops: only a local application can still satisfy this.
    bool local = route && route->face == kLocalAppFace;
    if (!local) {
      actions.push_back(emit(in_face, InterestReturn{fwd, ReturnCode::HopLimitExceeded}));
      return actions;
    }
  }

  if (entry) {
    // Aggregation: remember the requester, do not forward, do not refresh expiry.
    entry->in_faces.insert(in_face);
    return actions;
  }

  if (!route || route->face == in_face) {
    actions.push_back(emit(in_face, InterestReturn{fwd, ReturnCode::NoRoute}));
    return actions;
  }

  PitEntry& fresh = pit_.create(key, now, now + Duration(fwd.lifetime));
  fresh.in_faces.insert(in_face);
  fresh.out_faces.insert(route->face);
  actions.push_back(emit(route->face, fwd));
  return actions;
}

ForwarderActions Forwarder::on_content_object(FaceId in_face, const ContentObject& obj,
                                              SimTime now) {
  (void)in_face;
  (void)now;
  ForwarderActions actions;
  PitEntry* entry = pit_.find(obj.name);
  if (!entry) {
    actions.push_back(DropAction{DropAction::Reason::Unsolicited});
    return actions;
  }
  actions.push_back(CacheInsertAction{obj});  // leave a copy everywhere
  for (FaceId face : entry->in_faces) {
    actions.push_back(emit(face, obj));
  }
  pit_.remove(obj.name);
  return actions;
}

ForwarderActions Forwarder::on_interest_return(FaceId in_face, const InterestReturn& ret,
                                               SimTime now) {
  (void)in_face;
  (void)now;
  ForwarderActions actions;
  PitEntry* entry = pit_.find(ret.original.name);
  if (!entry) {
    actions.push_back(DropAction{DropAction::Reason::NoPitEntry});
    return actions;
  }
  for (FaceId face : entry->in_faces) {
    actions.push_back(emit(face, ret));
  }
  pit_.remove(ret.original.name);
  return actions;
}

ForwarderActions Forwarder::pit_expire(SimTime now) {
  pit_.expire_due(now);
  return {};
}

}  // namespace ccnsim
