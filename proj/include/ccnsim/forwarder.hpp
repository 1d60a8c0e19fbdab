#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "ccnsim/messages.hpp"
#include "ccnsim/time.hpp"

namespace ccnsim {

using FaceId = std::uint32_t;

/// Node-local applications sit behind a distinguished local face.
constexpr FaceId kLocalAppFace = 0;

struct PitEntry {
  ContentName name;  // with segment
  std::set<FaceId> in_faces;
  std::set<FaceId> out_faces;
  SimTime created_at;
  SimTime expiry_at;
  std::uint64_t id = 0;
};

struct FibEntry {
  ContentName prefix;  // no segment; may be the empty (default) prefix
  FaceId face = 0;
  std::uint32_t metric = 0;
};

struct CsEntry {
  ContentObject object;
  SimTime inserted_at;
  std::uint64_t fifo_seq = 0;
};

// Effects emitted by the forwarder, executed in list order by the node shell.
struct SendAction {
  FaceId face;
  CcnMessage msg;
};
struct DeliverLocalAction {
  CcnMessage msg;
};
struct CacheInsertAction {
  ContentObject obj;
};
struct RecordHitAction {};
struct RecordMissAction {};
struct DropAction {
  enum class Reason { Unsolicited, LoopGuard, NoPitEntry };
  Reason reason;
};

using ForwarderAction = std::variant<SendAction, DeliverLocalAction, CacheInsertAction,
                                     RecordHitAction, RecordMissAction, DropAction>;
using ForwarderActions = std::vector<ForwarderAction>;

/// Name-prefix routing table. Entries are keyed (prefix, face) with a hop
/// metric; longest-prefix match walks exact prefixes from longest to shortest,
/// breaking ties by smallest metric, then smallest face id.
class Fib {
public:
  void install(const ContentName& prefix, FaceId face, std::uint32_t metric);
  /// Replaces every next hop for `prefix` with the single given one.
  void install_best(const ContentName& prefix, FaceId face, std::uint32_t metric);
  std::optional<std::uint32_t> best_metric(const ContentName& prefix) const;

  std::optional<FibEntry> longest_prefix_match(const ContentName& name) const;

  std::vector<FibEntry> entries() const;
  std::size_t size() const;

private:
  // prefix -> face -> metric
  std::map<ContentName, std::map<FaceId, std::uint32_t>> table_;
};

/// FIFO content store with Leave-Copy-Everywhere semantics driven by the
/// forwarder. Capacity 0 disables caching.
class ContentStore {
public:
  explicit ContentStore(std::size_t capacity) : capacity_(capacity) {}

  const ContentObject* lookup(const ContentName& name_with_segment);
  /// Duplicate insert refreshes the object but keeps its queue position; at
  /// capacity the oldest entry is evicted and returned.
  std::optional<CsEntry> insert(const ContentObject& obj, SimTime now);

  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }
  std::uint64_t lookup_count() const { return lookup_count_; }
  bool contains(const ContentName& name_with_segment) const;

private:
  std::size_t capacity_;
  std::uint64_t next_seq_ = 0;
  std::uint64_t lookup_count_ = 0;
  std::map<ContentName, CsEntry> entries_;
  std::map<std::uint64_t, ContentName> fifo_;  // seq -> key
};

class Pit {
public:
  PitEntry* find(const ContentName& name_with_segment);
  const PitEntry* find(const ContentName& name_with_segment) const;
  PitEntry& create(const ContentName& name_with_segment, SimTime now, SimTime expiry_at);
  void remove(const ContentName& name_with_segment);

  std::size_t size() const { return entries_.size(); }
  std::optional<SimTime> next_expiry() const;
  std::optional<Duration> oldest_age(SimTime now) const;

  /// Removes every entry with expiry_at <= now (silently).
  std::size_t expire_due(SimTime now);

private:
  std::uint64_t next_id_ = 1;
  std::map<ContentName, PitEntry> entries_;
};

/// Per-node CCN message processing over PIT, FIB and CS, as a pure state
/// machine: handlers mutate the tables and return the effects for the node
/// shell to execute.
class Forwarder {
public:
  explicit Forwarder(std::size_t cs_capacity) : cs_(cs_capacity) {}

  ForwarderActions on_interest(FaceId in_face, const Interest& interest, SimTime now);
  ForwarderActions on_content_object(FaceId in_face, const ContentObject& obj, SimTime now);
  ForwarderActions on_interest_return(FaceId in_face, const InterestReturn& ret, SimTime now);
  /// Fired by the node shell when the earliest PIT expiry is due. Expiry is
  /// silent: recovery is the application's retransmission timeout.
  ForwarderActions pit_expire(SimTime now);

  /// Applies a CacheInsertAction.
  void apply_cache_insert(const ContentObject& obj, SimTime now) { cs_.insert(obj, now); }

  Fib& fib() { return fib_; }
  const Fib& fib() const { return fib_; }
  ContentStore& cs() { return cs_; }
  const ContentStore& cs() const { return cs_; }
  Pit& pit() { return pit_; }
  const Pit& pit() const { return pit_; }

private:
  Fib fib_;
  Pit pit_;
  ContentStore cs_;
};

}  // namespace ccnsim
