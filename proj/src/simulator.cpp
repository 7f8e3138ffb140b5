#include "eccsim/simulator.hpp"

#include <algorithm>
#include <bit>

#include "eccsim/errors.hpp"

namespace eccsim {

WakeSchedule WakeSchedule::all_at_zero(const Graph& g) {
  WakeSchedule ws;
  for (int64_t id : g.ids()) ws.wakes[id] = 0;
  return ws;
}

WakeSchedule WakeSchedule::normalized() const {
  if (wakes.empty()) return *this;
  int32_t min_round = wakes.begin()->second;
  for (const auto& [_, r] : wakes) min_round = std::min(min_round, r);
  WakeSchedule out;
  for (const auto& [id, r] : wakes) out.wakes[id] = r - min_round;
  return out;
}

void WakeSchedule::validate(const Graph& g) const {
  if (wakes.empty()) throw InvalidParameterError("wake schedule is empty");
  int32_t min_round = wakes.begin()->second;
  for (const auto& [id, r] : wakes) {
    if (r < 0) throw InvalidParameterError("negative wake round for node " + std::to_string(id));
    if (!g.index_of(id))
      throw InvalidParameterError("wake schedule names unknown node " + std::to_string(id));
    min_round = std::min(min_round, r);
  }
  if (min_round != 0) throw InvalidParameterError("wake schedule must start at round 0");
}

namespace {

int32_t id_bits(int32_t n) { return static_cast<int32_t>(std::bit_width(static_cast<uint32_t>(n - 1))); }

int64_t tuple_bits(const Tuple& t, int32_t w) {
  // 2-bit tag; ids and hop/diam/rad values each take w bits
  switch (t.kind) {
    case TupleKind::Bfs: return 2 + 2 * w;
    case TupleKind::Diam:
    case TupleKind::Rad: return 2 + w;
    case TupleKind::EnvWake: return 0;  // not a link transmission
  }
  return 0;
}

}  // namespace

Simulation::Simulation(const Graph& g, const WakeSchedule& schedule, RunOptions opts)
    : g_(&g), opts_(std::move(opts)), n_(g.num_nodes()) {
  if (opts_.max_rounds < 1) throw InvalidParameterError("max_rounds must be >= 1");
  WakeSchedule norm = schedule.normalized();
  norm.validate(g);

  sched_.assign(n_, -1);
  for (const auto& [id, r] : norm.wakes) sched_[*g.index_of(id)] = r;

  states_.reserve(n_);
  for (int32_t i = 0; i < n_; ++i) states_.push_back(initial_state(i, opts_.variant));
  prev_status_.assign(n_, Status::Quiescent);
  prev_outbox_.assign(n_, {});
  both_met_round_.assign(n_, -1);
  round_new_bfs_.assign(n_, 0);
  round_deliveries_.assign(n_, {});

  probed_.assign(n_, opts_.probe_all ? 1 : 0);
  for (int64_t id : opts_.probes) {
    auto idx = g.index_of(id);
    if (!idx) throw InvalidParameterError("probe names unknown node " + std::to_string(id));
    probed_[*idx] = 1;
  }

  res_.detection.assign(n_, {});
  res_.final_values.assign(n_, {});
  res_.accounting.per_node.assign(n_, {});
  res_.wake_rounds.assign(n_, -1);
  res_.peak_stored_ids.assign(n_, 0);
  res_.variant = opts_.variant;
}

bool Simulation::step() {
  const int32_t r = ++round_;
  if (r > opts_.max_rounds)
    throw RunawayError("no global termination after " + std::to_string(opts_.max_rounds) +
                       " rounds");

  // Message generation: snapshot every node's outbox and status, then charge
  // the accounting at the sender (one broadcast per tuple, one link
  // transmission per tuple per incident link).
  const int32_t w = id_bits(n_);
  bool sent_any = false;
  for (int32_t i = 0; i < n_; ++i) {
    NodeState& s = states_[i];
    prev_status_[i] = s.status;
    prev_outbox_[i].clear();
    if (s.status == Status::Active && !s.outbox.empty()) {
      prev_outbox_[i].swap(s.outbox);
      sent_any = true;
      const int64_t deg = g_->degree(i);
      NodeAccounting& acc = res_.accounting.per_node[i];
      for (const Tuple& t : prev_outbox_[i]) {
        switch (t.kind) {
          case TupleKind::Bfs:
            ++acc.bfs_broadcasts;
            res_.accounting.link_tuples_bfs += deg;
            break;
          case TupleKind::Diam:
            ++acc.diam_broadcasts;
            res_.accounting.link_tuples_diam += deg;
            break;
          case TupleKind::Rad:
            ++acc.rad_broadcasts;
            res_.accounting.link_tuples_rad += deg;
            break;
          case TupleKind::EnvWake: break;
        }
        res_.accounting.estimated_bits += tuple_bits(t, w) * deg;
      }
      res_.accounting.link_tuples_total += static_cast<int64_t>(prev_outbox_[i].size()) * deg;
    } else {
      s.outbox.clear();
    }
  }
  if (sent_any) res_.last_tuple_round = r;

  // State transitions. Each node reads only the snapshot taken above, so the
  // loop is order-independent and safe to run in parallel.
  if (opts_.exec == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(static)
    for (int32_t j = 0; j < n_; ++j) step_node(j, r);
  } else {
    for (int32_t j = 0; j < n_; ++j) step_node(j, r);
  }

  // Deterministic bookkeeping in node order.
  terminated_ = 0;
  for (int32_t j = 0; j < n_; ++j) {
    const NodeState& s = states_[j];
    if (s.status == Status::Terminated) ++terminated_;
    for (int32_t origin : round_deliveries_[j]) res_.deliveries.push_back({origin, j, r});
    round_deliveries_[j].clear();
    if (probed_[j]) {
      res_.trace.push_back({r, j, s.e, s.d, s.c, s.r, s.status, round_new_bfs_[j],
                            static_cast<int32_t>(s.outbox.size())});
    }
  }
  res_.rounds_executed = r;
  return !all_terminated();
}

void Simulation::step_node(int32_t j, int32_t r) {
  const Status before = prev_status_[j];

  TupleSet inbox;
  for (int32_t u : g_->neighbors(j)) {
    if (prev_status_[u] == Status::Active && !prev_outbox_[u].empty())
      inbox.insert(inbox.end(), prev_outbox_[u].begin(), prev_outbox_[u].end());
  }
  sort_unique(inbox);

  if (opts_.record_deliveries && !inbox.empty()) {
    int32_t last = -1;
    for (const Tuple& t : inbox) {
      if (t.kind != TupleKind::Bfs) break;  // sorted: bfs tuples come first
      if (t.value != last) {
        round_deliveries_[j].push_back(t.value);
        last = t.value;
      }
    }
  }

  round_new_bfs_[j] = 0;
  if (before == Status::Terminated) return;  // late tuples are dropped unprocessed

  if (sched_[j] == r && before == Status::Quiescent)
    inbox.push_back(Tuple::env_wake());  // EnvWake sorts after all link tuples
  if (before == Status::Quiescent && inbox.empty()) return;

  NodeState& s = states_[j];
  TransitionStats stats;
  apply_transition(s, inbox, &stats);
  round_new_bfs_[j] = stats.new_bfs;

  if (before == Status::Quiescent) {
    res_.wake_rounds[j] = r;
    if (opts_.record_deliveries) round_deliveries_[j].push_back(j);  // own origin absorbed
  }
  res_.peak_stored_ids[j] = std::max(res_.peak_stored_ids[j], s.stored_ids());

  DetectionRounds& det = res_.detection[j];
  if (det.ecc < 0 && ecc_converged(s)) det.ecc = r;
  if (det.diam < 0 && diam_converged(s)) det.diam = r;
  if (det.rad < 0 && rad_converged(s)) det.rad = r;
  if (both_met_round_[j] < 0) {
    if (diam_converged(s) && rad_converged(s)) both_met_round_[j] = r;
  } else if (should_terminate(s, r - both_met_round_[j])) {
    s.status = Status::Terminated;
    det.termination = r;
  }
}

SimulationResult Simulation::finish() {
  for (int32_t i = 0; i < n_; ++i) res_.final_values[i] = {states_[i].e, states_[i].d, states_[i].r};
  return std::move(res_);
}

SimulationResult run(const Graph& g, const WakeSchedule& schedule, const RunOptions& opts) {
  Simulation sim(g, schedule, opts);
  while (sim.step()) {
  }
  return sim.finish();
}

std::vector<int32_t> visibility_set(const OracleMetrics& oracle,
                                    const std::vector<int32_t>& wake_rounds, int32_t node,
                                    int32_t round) {
  std::vector<int32_t> out;
  const auto& dist = oracle.dist[node];
  for (int32_t j = 0; j < static_cast<int32_t>(dist.size()); ++j) {
    if (dist[j] > round) continue;
    if (wake_rounds[j] >= 0 && wake_rounds[j] <= round - dist[j]) out.push_back(j);
  }
  return out;
}

}  // namespace eccsim
