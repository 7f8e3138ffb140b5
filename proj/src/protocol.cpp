#include "eccsim/protocol.hpp"

#include <algorithm>

#include "eccsim/errors.hpp"

namespace eccsim {

std::string radius_to_string(int32_t r) {
  return r == kInfRadius ? "inf" : std::to_string(r);
}

std::string status_to_string(Status s) {
  switch (s) {
    case Status::Quiescent: return "quiescent";
    case Status::Active: return "active";
    case Status::Terminated: return "terminated";
  }
  return "?";
}

std::string variant_to_string(Variant v) {
  return v == Variant::FullSet ? "full" : "sliding";
}

void sort_unique(TupleSet& ts) {
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
}

TupleSet merge_tuple_sets(const std::vector<TupleSet>& sets) {
  TupleSet merged;
  for (const TupleSet& s : sets) merged.insert(merged.end(), s.begin(), s.end());
  sort_unique(merged);
  return merged;
}

bool NodeState::knows(int32_t origin) const {
  return std::binary_search(known.begin(), known.end(), origin) ||
         std::binary_search(window.begin(), window.end(), origin);
}

NodeState initial_state(int32_t self, Variant variant) {
  NodeState s;
  s.self = self;
  s.variant = variant;
  return s;
}

TupleSet message_generation(const NodeState& s) {
  if (s.status == Status::Terminated) return {};
  return s.outbox;
}

void apply_transition(NodeState& s, const TupleSet& inbox, TransitionStats* stats) {
  if (s.status == Status::Terminated)
    throw ContractViolationError("state transition applied to terminated node " +
                                 std::to_string(s.self));
  if (stats) stats->new_bfs = 0;
  if (s.status == Status::Quiescent && inbox.empty()) return;

  const int32_t prev_d = s.d;
  const int32_t prev_r = s.r;

  // Relay every BFS tuple whose origin is not yet known, hop count
  // incremented; a freshly woken node adds its own origin at hop 0.
  TupleSet fresh;
  std::vector<int32_t> new_origins;
  int32_t max_hop = 0;
  for (const Tuple& t : inbox) {
    if (t.kind != TupleKind::Bfs || s.knows(t.value)) continue;
    fresh.push_back(Tuple::bfs(t.value, t.hops + 1));
    max_hop = std::max(max_hop, t.hops + 1);
    if (new_origins.empty() || new_origins.back() != t.value) new_origins.push_back(t.value);
  }
  if (s.status == Status::Quiescent) {
    fresh.push_back(Tuple::bfs(s.self, 0));
    new_origins.push_back(s.self);
    sort_unique(fresh);
    std::sort(new_origins.begin(), new_origins.end());
    new_origins.erase(std::unique(new_origins.begin(), new_origins.end()), new_origins.end());
  }

  s.c = fresh.empty() ? s.c + 1 : 0;
  s.e = std::max(s.e, max_hop);

  int32_t d = std::max(s.d, s.e);
  int32_t r = s.r;
  for (const Tuple& t : inbox) {
    if (t.kind == TupleKind::Diam) d = std::max(d, t.value);
    else if (t.kind == TupleKind::Rad) r = std::min(r, t.value);
  }
  // The radius seed from the node's own eccentricity fires exactly in the
  // round where c reaches 2; c grows by single steps so this round is unique.
  if (s.c == 2) r = std::min(r, s.e);
  s.d = d;
  s.r = r;
  s.status = Status::Active;

  if (s.variant == Variant::FullSet) {
    size_t mid = s.known.size();
    s.known.insert(s.known.end(), new_origins.begin(), new_origins.end());
    std::inplace_merge(s.known.begin(), s.known.begin() + static_cast<ptrdiff_t>(mid),
                       s.known.end());
  } else {
    s.known.swap(s.window);
    s.window = new_origins;
  }

  s.outbox = std::move(fresh);
  if (s.d > prev_d) s.outbox.push_back(Tuple::diam(s.d));
  if (s.r < prev_r) s.outbox.push_back(Tuple::rad(s.r));
  sort_unique(s.outbox);

  if (stats) stats->new_bfs = static_cast<int32_t>(new_origins.size());
}

NodeState state_transition(const NodeState& s, const std::vector<TupleSet>& received) {
  NodeState next = s;
  apply_transition(next, merge_tuple_sets(received));
  return next;
}

bool ecc_converged(const NodeState& s) { return s.c >= 2; }

bool diam_converged(const NodeState& s) { return s.c >= 2 && s.c > s.d; }

bool rad_converged(const NodeState& s) {
  return s.r != kInfRadius && static_cast<int64_t>(s.c) >= 2 * static_cast<int64_t>(s.r);
}

bool should_terminate(const NodeState& s, int32_t rounds_since_both_criteria) {
  return diam_converged(s) && rad_converged(s) && rounds_since_both_criteria >= 1;
}

}  // namespace eccsim
