#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace eccsim {

/// Radius estimates start at infinity; serialized as "inf" in traces.
inline constexpr int32_t kInfRadius = std::numeric_limits<int32_t>::max();

std::string radius_to_string(int32_t r);

enum class TupleKind : uint8_t {
  Bfs,      // <bfs, origin, hops>
  Diam,     // <diam, value>
  Rad,      // <rad, value>
  EnvWake,  // wake-up marker from the environment node, simulator-internal
};

/// One protocol tuple. For Bfs, `value` is the origin id and `hops` the hop
/// counter; for Diam/Rad, `value` carries the estimate and `hops` is 0.
struct Tuple {
  TupleKind kind = TupleKind::Bfs;
  int32_t value = 0;
  int32_t hops = 0;

  auto operator<=>(const Tuple&) const = default;

  static Tuple bfs(int32_t origin, int32_t hops) { return {TupleKind::Bfs, origin, hops}; }
  static Tuple diam(int32_t value) { return {TupleKind::Diam, value, 0}; }
  static Tuple rad(int32_t value) { return {TupleKind::Rad, value, 0}; }
  static Tuple env_wake() { return {TupleKind::EnvWake, 0, 0}; }
};

/// Tuple sets are sorted, duplicate-free vectors; duplicates from different
/// neighbors collapse when sets are merged.
using TupleSet = std::vector<Tuple>;

void sort_unique(TupleSet& ts);
TupleSet merge_tuple_sets(const std::vector<TupleSet>& sets);

enum class Status : uint8_t { Quiescent, Active, Terminated };

std::string status_to_string(Status s);

enum class Variant : uint8_t { FullSet, SlidingWindow };

std::string variant_to_string(Variant v);

/// Per-node protocol state.
///
/// `known` holds every BFS origin ever received (full-set variant); under the
/// sliding-window variant `known`/`window` hold only the origins received in
/// the previous and current round. Both vectors are sorted.
struct NodeState {
  int32_t self = -1;
  int32_t e = 0;             // eccentricity estimate, non-decreasing
  int32_t d = 0;             // diameter estimate, non-decreasing
  int32_t r = kInfRadius;    // radius estimate, non-increasing
  Status status = Status::Quiescent;
  std::vector<int32_t> known;
  std::vector<int32_t> window;  // sliding-window variant only
  int32_t c = 0;             // consecutive rounds with no new BFS origin
  TupleSet outbox;           // message to broadcast next round
  Variant variant = Variant::FullSet;

  bool knows(int32_t origin) const;
  /// Ids currently held in node storage (|known| + |window|).
  int32_t stored_ids() const { return static_cast<int32_t>(known.size() + window.size()); }
};

NodeState initial_state(int32_t self, Variant variant = Variant::FullSet);

/// The message a node hands to every neighbor this round: its outbox, or
/// nothing once terminated. The empty set represents absence of a message.
TupleSet message_generation(const NodeState& s);

struct TransitionStats {
  int32_t new_bfs = 0;  // distinct new BFS origins absorbed this round
};

/// Applies one round's state transition in place. `inbox` is the merged
/// union of all received tuple sets (it may contain an EnvWake marker).
/// Throws ContractViolationError if the node is already terminated.
void apply_transition(NodeState& s, const TupleSet& inbox, TransitionStats* stats = nullptr);

/// Pure form: `received` is the collection of per-neighbor tuple sets (plus
/// possibly an environment wake); sender identities are not distinguished.
NodeState state_transition(const NodeState& s, const std::vector<TupleSet>& received);

/// Local convergence criteria. Once one of these holds, the corresponding
/// estimate equals the true network value.
bool ecc_converged(const NodeState& s);   // c >= 2
bool diam_converged(const NodeState& s);  // c >= 2 and c > d
bool rad_converged(const NodeState& s);   // r finite and c >= 2r

/// A node stops one round after both the diameter and radius criteria held.
bool should_terminate(const NodeState& s, int32_t rounds_since_both_criteria);

}  // namespace eccsim
