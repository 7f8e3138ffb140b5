#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "eccsim/graph.hpp"
#include "eccsim/oracle.hpp"
#include "eccsim/protocol.hpp"

namespace eccsim {

/// Environment wake-up schedule, keyed by external node id. A node absent
/// from the schedule is woken only by neighbor messages.
struct WakeSchedule {
  std::map<int64_t, int32_t> wakes;

  static WakeSchedule single(int64_t node) { return {{{node, 0}}}; }
  static WakeSchedule all_at_zero(const Graph& g);

  /// Shifts all wake rounds so the earliest is 0. Round counting starts at
  /// the first activation; leading all-quiescent rounds carry no information.
  WakeSchedule normalized() const;

  /// Nonempty, rounds >= 0, minimum round 0, every node present in g.
  void validate(const Graph& g) const;
};

/// End-of-round snapshot of one node's probed variables.
struct TraceEntry {
  int32_t round = 0;
  int32_t node = 0;  // dense index
  int32_t e = 0;
  int32_t d = 0;
  int32_t c = 0;
  int32_t r = kInfRadius;
  Status s = Status::Quiescent;
  int32_t new_bfs = 0;
  int32_t out_tuples = 0;

  auto operator<=>(const TraceEntry&) const = default;
};

/// First round at whose end each local predicate held; -1 until it does.
struct DetectionRounds {
  int32_t ecc = -1;
  int32_t diam = -1;
  int32_t rad = -1;
  int32_t termination = -1;

  auto operator<=>(const DetectionRounds&) const = default;
};

struct FinalValues {
  int32_t e = 0;
  int32_t d = 0;
  int32_t r = kInfRadius;

  auto operator<=>(const FinalValues&) const = default;
};

/// Transmission counts. Broadcast counts are per outgoing message (one per
/// tuple regardless of degree); link counts multiply by the sender's degree.
struct NodeAccounting {
  int64_t bfs_broadcasts = 0;
  int64_t diam_broadcasts = 0;
  int64_t rad_broadcasts = 0;

  auto operator<=>(const NodeAccounting&) const = default;
};

struct Accounting {
  std::vector<NodeAccounting> per_node;
  int64_t link_tuples_total = 0;
  int64_t link_tuples_bfs = 0;
  int64_t link_tuples_diam = 0;
  int64_t link_tuples_rad = 0;
  /// Encoding estimate: 2-bit tag, ceil(log2 |V|) bits per id and per
  /// hop/diam/rad value, summed over directed-link transmissions.
  int64_t estimated_bits = 0;
};

/// One BFS origin reaching a receiver in a given round (deduplicated per
/// round). A node's own origin is recorded at its wake round.
struct Delivery {
  int32_t origin = 0;
  int32_t receiver = 0;
  int32_t round = 0;

  auto operator<=>(const Delivery&) const = default;
};

struct RunOptions {
  Variant variant = Variant::FullSet;
  ExecPolicy exec = ExecPolicy::Parallel;
  std::vector<int64_t> probes;  // external ids to trace
  bool probe_all = false;
  int32_t max_rounds = 1 << 20;
  bool record_deliveries = true;
};

struct SimulationResult {
  std::vector<TraceEntry> trace;             // probed nodes only
  std::vector<DetectionRounds> detection;    // per dense node
  std::vector<FinalValues> final_values;     // per dense node
  Accounting accounting;
  int32_t rounds_executed = 0;               // index of the last executed round
  std::vector<int32_t> wake_rounds;          // per dense node, -1 before wake
  std::vector<Delivery> deliveries;
  std::vector<int32_t> peak_stored_ids;      // per dense node
  int32_t last_tuple_round = -1;             // last round any tuple was sent
  Variant variant = Variant::FullSet;
};

/// Deterministic synchronous-round engine. Each round: collect every active
/// node's outbox onto all its links, deliver environment wakes to scheduled
/// still-quiescent nodes, then transition every node on the merged union of
/// what it received. Within a round node transitions only read the previous
/// round's snapshot, so the parallel policy runs them under OpenMP with
/// results identical to the serial reference.
class Simulation {
 public:
  Simulation(const Graph& g, const WakeSchedule& schedule, RunOptions opts = {});

  /// Executes the next round (round indices start at 0). Returns true while
  /// at least one node has not terminated. Throws RunawayError past
  /// opts.max_rounds.
  bool step();

  int32_t last_round() const { return round_; }
  bool all_terminated() const { return terminated_ == n_; }
  const std::vector<NodeState>& states() const { return states_; }
  const Graph& graph() const { return *g_; }

  /// Finalizes and moves the accumulated result out; the engine is spent.
  SimulationResult finish();

 private:
  void step_node(int32_t j, int32_t round);

  const Graph* g_ = nullptr;
  RunOptions opts_;
  int32_t n_ = 0;
  std::vector<int32_t> sched_;  // dense wake round, -1 if unscheduled
  std::vector<NodeState> states_;
  std::vector<Status> prev_status_;
  std::vector<TupleSet> prev_outbox_;
  std::vector<int32_t> both_met_round_;
  std::vector<int32_t> round_new_bfs_;
  std::vector<std::vector<int32_t>> round_deliveries_;
  std::vector<uint8_t> probed_;
  int32_t round_ = -1;
  int32_t terminated_ = 0;
  SimulationResult res_;
};

/// Runs until every node has terminated.
SimulationResult run(const Graph& g, const WakeSchedule& schedule, const RunOptions& opts = {});

/// Nodes whose BFS flood can have reached `node` by the end of `round`,
/// computed from oracle distances and recorded wake rounds: all j with
/// dist(node,j) <= round that were awake after round - dist(node,j).
std::vector<int32_t> visibility_set(const OracleMetrics& oracle,
                                    const std::vector<int32_t>& wake_rounds, int32_t node,
                                    int32_t round);

}  // namespace eccsim
