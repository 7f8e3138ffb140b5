#include "eccsim/verify.hpp"

#include <algorithm>
#include <chrono>

#include "eccsim/errors.hpp"
#include "eccsim/rng.hpp"

namespace eccsim {

std::string Violation::to_string() const {
  std::string s = check;
  if (node >= 0) s += " node=" + std::to_string(node);
  if (round >= 0) s += " round=" + std::to_string(round);
  if (!variable.empty()) s += " " + variable;
  s += " got=" + got + " expected=" + expected;
  return s;
}

namespace {

void add_violation(CheckReport& rep, int32_t node, int32_t round, const std::string& variable,
                   const std::string& got, const std::string& expected) {
  rep.pass = false;
  rep.violations.push_back({rep.name, node, round, variable, got, expected});
}

}  // namespace

CheckReport check_criteria_safety(const SimulationResult& res, const OracleMetrics& oracle) {
  CheckReport rep{"criteria_safety"};
  for (const TraceEntry& t : res.trace) {
    if (t.c >= 2 && t.e != oracle.ecc[t.node])
      add_violation(rep, t.node, t.round, "e", std::to_string(t.e),
                    std::to_string(oracle.ecc[t.node]));
    if (t.c >= 2 && t.c > t.d && t.d != oracle.diameter)
      add_violation(rep, t.node, t.round, "d", std::to_string(t.d),
                    std::to_string(oracle.diameter));
    if (t.r != kInfRadius && static_cast<int64_t>(t.c) >= 2 * static_cast<int64_t>(t.r) &&
        t.r != oracle.radius)
      add_violation(rep, t.node, t.round, "r", radius_to_string(t.r),
                    std::to_string(oracle.radius));
  }
  rep.details["trace_entries"] = res.trace.size();
  return rep;
}

BoundReport check_bounds(const SimulationResult& res, const OracleMetrics& oracle) {
  BoundReport report;
  const int32_t n = static_cast<int32_t>(res.detection.size());
  const int64_t D = oracle.diameter;
  const int64_t R = oracle.radius;
  for (int32_t i = 0; i < n; ++i) {
    const DetectionRounds& det = res.detection[i];
    const int64_t ecc = oracle.ecc[i];
    auto row = [&](const std::string& claim, int64_t bound, int64_t observed, bool hard) {
      BoundRow r{i, claim, bound, observed, bound - observed, hard, true};
      if (observed < 0 || (hard && r.slack < 0)) r.pass = false;
      if (!r.pass && hard) report.pass = false;
      report.rows.push_back(r);
    };
    row("ecc", D + ecc + 2, det.ecc, true);
    row("diam", 2 * D + ecc + 2, det.diam, true);
    row("diam_tight", 2 * D + ecc + 1, det.diam, false);
    row("rad", D + ecc + 2 * R, det.rad, true);
    row("ecc_global", 2 * D + 2, det.ecc, true);
    row("diam_global", 3 * D + 1, det.diam, true);
    row("rad_global", 2 * D + 2 * R, det.rad, true);
  }
  return report;
}

CheckReport check_bounds_report(const SimulationResult& res, const OracleMetrics& oracle) {
  CheckReport rep{"bounds"};
  BoundReport br = check_bounds(res, oracle);
  int64_t min_tight_slack = 0;
  bool have_tight = false;
  for (const BoundRow& row : br.rows) {
    if (!row.pass && row.hard)
      add_violation(rep, row.node, static_cast<int32_t>(row.observed), row.claim,
                    std::to_string(row.observed), "<= " + std::to_string(row.bound));
    if (row.claim == "diam_tight") {
      min_tight_slack = have_tight ? std::min(min_tight_slack, row.slack) : row.slack;
      have_tight = true;
    }
  }
  rep.details["rows"] = br.rows.size();
  if (have_tight) rep.details["diam_tight_min_slack"] = min_tight_slack;
  return rep;
}

CheckReport check_variant_equivalence(const Graph& g, const WakeSchedule& schedule) {
  CheckReport rep{"variant_equivalence"};
  RunOptions full_opts, slide_opts;
  full_opts.variant = Variant::FullSet;
  slide_opts.variant = Variant::SlidingWindow;
  full_opts.exec = slide_opts.exec = ExecPolicy::Serial;
  full_opts.record_deliveries = slide_opts.record_deliveries = false;
  Simulation full(g, schedule, full_opts);
  Simulation slide(g, schedule, slide_opts);

  bool more = true;
  while (more) {
    bool m1 = full.step();
    bool m2 = slide.step();
    const int32_t r = full.last_round();
    if (m1 != m2) {
      add_violation(rep, -1, r, "termination", m1 ? "full running" : "full done",
                    m2 ? "sliding running" : "sliding done");
      break;
    }
    more = m1;
    const auto& sf = full.states();
    const auto& ss = slide.states();
    for (int32_t j = 0; j < g.num_nodes(); ++j) {
      const NodeState& a = sf[j];
      const NodeState& b = ss[j];
      if (a.e != b.e || a.d != b.d || a.r != b.r || a.c != b.c || a.status != b.status) {
        add_violation(rep, j, r, "state",
                      "(" + std::to_string(a.e) + "," + std::to_string(a.d) + "," +
                          radius_to_string(a.r) + "," + std::to_string(a.c) + "," +
                          status_to_string(a.status) + ")",
                      "(" + std::to_string(b.e) + "," + std::to_string(b.d) + "," +
                          radius_to_string(b.r) + "," + std::to_string(b.c) + "," +
                          status_to_string(b.status) + ")");
      }
      if (a.outbox != b.outbox)
        add_violation(rep, j, r, "outbox", std::to_string(a.outbox.size()) + " tuples",
                      std::to_string(b.outbox.size()) + " tuples");
    }
    if (!rep.pass) break;
  }

  SimulationResult rf = full.finish();
  SimulationResult rs = slide.finish();
  int32_t peak_full = 0, peak_slide = 0;
  for (int32_t v : rf.peak_stored_ids) peak_full = std::max(peak_full, v);
  for (int32_t v : rs.peak_stored_ids) peak_slide = std::max(peak_slide, v);
  rep.details["peak_stored_ids_full"] = rf.peak_stored_ids;
  rep.details["peak_stored_ids_sliding"] = rs.peak_stored_ids;
  rep.details["peak_full_max"] = peak_full;
  rep.details["peak_sliding_max"] = peak_slide;
  return rep;
}

CheckReport check_arrival_window(const SimulationResult& res, const OracleMetrics& oracle) {
  CheckReport rep{"arrival_window"};
  for (const Delivery& d : res.deliveries) {
    const int32_t wake = res.wake_rounds[d.origin];
    const int32_t base = wake + oracle.dist[d.origin][d.receiver];
    if (d.round < base || d.round > base + 2)
      add_violation(rep, d.receiver, d.round, "bfs origin " + std::to_string(d.origin),
                    "round " + std::to_string(d.round),
                    "rounds " + std::to_string(base) + ".." + std::to_string(base + 2));
  }
  rep.details["deliveries"] = res.deliveries.size();
  return rep;
}

CheckReport check_accounting(const Graph& g, const SimulationResult& res,
                             const OracleMetrics& oracle) {
  CheckReport rep{"accounting"};
  const int32_t n = g.num_nodes();
  for (int32_t i = 0; i < n; ++i) {
    const NodeAccounting& acc = res.accounting.per_node[i];
    if (acc.bfs_broadcasts != n)
      add_violation(rep, i, -1, "bfs broadcasts", std::to_string(acc.bfs_broadcasts),
                    std::to_string(n));
    if (acc.diam_broadcasts > oracle.diameter)
      add_violation(rep, i, -1, "diam broadcasts", std::to_string(acc.diam_broadcasts),
                    "<= " + std::to_string(oracle.diameter));
    const int64_t rad_cap = oracle.ecc[i] - oracle.radius + 1;
    if (acc.rad_broadcasts > rad_cap)
      add_violation(rep, i, -1, "rad broadcasts", std::to_string(acc.rad_broadcasts),
                    "<= " + std::to_string(rad_cap));
  }
  const int64_t expected_bfs_links = static_cast<int64_t>(n) * 2 * g.num_edges();
  if (res.accounting.link_tuples_bfs != expected_bfs_links)
    add_violation(rep, -1, -1, "bfs link transmissions",
                  std::to_string(res.accounting.link_tuples_bfs),
                  std::to_string(expected_bfs_links));
  rep.details["link_tuples_total"] = res.accounting.link_tuples_total;
  rep.details["estimated_bits"] = res.accounting.estimated_bits;
  return rep;
}

CheckReport check_termination(const SimulationResult& res, const OracleMetrics& oracle) {
  CheckReport rep{"termination"};
  const int32_t n = static_cast<int32_t>(res.detection.size());
  int32_t max_wake = 0;
  for (int32_t w : res.wake_rounds) max_wake = std::max(max_wake, w);
  const int32_t cap = max_wake + 3 * oracle.diameter + 2 * oracle.radius + 3;

  int32_t last_termination = -1;
  for (int32_t i = 0; i < n; ++i) {
    const DetectionRounds& det = res.detection[i];
    if (det.termination < 0) {
      add_violation(rep, i, -1, "status", "not terminated", "terminated");
      continue;
    }
    last_termination = std::max(last_termination, det.termination);
    if (det.termination != std::max(det.diam, det.rad) + 1)
      add_violation(rep, i, det.termination, "termination round",
                    std::to_string(det.termination),
                    std::to_string(std::max(det.diam, det.rad) + 1));
    if (det.ecc > det.diam || det.ecc > det.rad)
      add_violation(rep, i, det.ecc, "detection order",
                    "ecc=" + std::to_string(det.ecc) + " diam=" + std::to_string(det.diam) +
                        " rad=" + std::to_string(det.rad),
                    "ecc <= diam and ecc <= rad");
  }
  if (res.rounds_executed > cap)
    add_violation(rep, -1, res.rounds_executed, "rounds executed",
                  std::to_string(res.rounds_executed), "<= " + std::to_string(cap));
  if (last_termination >= 0 && res.last_tuple_round > last_termination)
    add_violation(rep, -1, res.last_tuple_round, "last tuple round",
                  std::to_string(res.last_tuple_round),
                  "<= " + std::to_string(last_termination));
  rep.details["rounds_executed"] = res.rounds_executed;
  rep.details["round_cap"] = cap;
  return rep;
}

CheckReport check_final_values(const SimulationResult& res, const OracleMetrics& oracle) {
  CheckReport rep{"final_values"};
  for (int32_t i = 0; i < static_cast<int32_t>(res.final_values.size()); ++i) {
    const FinalValues& f = res.final_values[i];
    if (f.e != oracle.ecc[i])
      add_violation(rep, i, -1, "e", std::to_string(f.e), std::to_string(oracle.ecc[i]));
    if (f.d != oracle.diameter)
      add_violation(rep, i, -1, "d", std::to_string(f.d), std::to_string(oracle.diameter));
    if (f.r != oracle.radius)
      add_violation(rep, i, -1, "r", radius_to_string(f.r), std::to_string(oracle.radius));
  }
  return rep;
}

CheckReport check_neighbor_propagation(const Graph& g, const SimulationResult& res) {
  CheckReport rep{"neighbor_propagation"};
  // both criteria first hold one round before the node stops
  auto met = [&](int32_t i) { return std::max(res.detection[i].diam, res.detection[i].rad); };
  for (int32_t i = 0; i < g.num_nodes(); ++i) {
    if (res.detection[i].diam < 0 || res.detection[i].rad < 0) continue;
    for (int32_t j : g.neighbors(i)) {
      if (met(j) > met(i) + 1)
        add_violation(rep, j, met(j), "criteria met round", std::to_string(met(j)),
                      "<= " + std::to_string(met(i) + 1) + " (neighbor " + std::to_string(i) +
                          " met at " + std::to_string(met(i)) + ")");
    }
  }
  return rep;
}

std::vector<CheckReport> check_all(const Graph& g, const WakeSchedule& schedule, Variant variant) {
  OracleMetrics oracle = oracle_metrics(g, ExecPolicy::Serial);
  RunOptions opts;
  opts.variant = variant;
  opts.exec = ExecPolicy::Serial;
  opts.probe_all = true;
  SimulationResult res = run(g, schedule, opts);

  std::vector<CheckReport> reports;
  reports.push_back(check_criteria_safety(res, oracle));
  reports.push_back(check_bounds_report(res, oracle));
  reports.push_back(check_variant_equivalence(g, schedule));
  reports.push_back(check_arrival_window(res, oracle));
  reports.push_back(check_accounting(g, res, oracle));
  reports.push_back(check_termination(res, oracle));
  reports.push_back(check_final_values(res, oracle));
  reports.push_back(check_neighbor_propagation(g, res));
  return reports;
}

WakeSchedule random_wake_schedule(const Graph& g, Rng& rng) {
  WakeSchedule ws;
  const int32_t n = g.num_nodes();
  const int32_t initiators = 1 + static_cast<int32_t>(rng.below(std::min<uint32_t>(4, n)));
  for (int32_t k = 0; k < initiators; ++k) {
    int64_t id = g.id_of(static_cast<int32_t>(rng.below(static_cast<uint32_t>(n))));
    int32_t round = (k == 0) ? 0 : static_cast<int32_t>(rng.below(static_cast<uint32_t>(n) + 1));
    auto [it, inserted] = ws.wakes.emplace(id, round);
    if (!inserted) it->second = std::min(it->second, round);
  }
  return ws;
}

SuiteOutcome run_random_suite(const SuiteConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  SuiteOutcome outcome;
  outcome.runs = cfg.runs;

  std::vector<std::vector<CheckReport>> all_reports(cfg.runs);

  auto one_run = [&](int32_t k) {
    Rng rng(cfg.seed ^ (0x9E3779B97F4A7C15ull * static_cast<uint64_t>(k + 1)));
    const int32_t n = 2 + static_cast<int32_t>(rng.below(static_cast<uint32_t>(cfg.max_n - 1)));
    const double u = rng.unit();
    const double p = std::clamp(u * u, 0.02, 1.0);
    Graph g = random_connected_graph(n, p, rng.next_u64());
    WakeSchedule ws = cfg.all_wake_zero ? WakeSchedule::all_at_zero(g) : random_wake_schedule(g, rng);
    all_reports[k] = check_all(g, ws);
  };

  if (cfg.parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int32_t k = 0; k < cfg.runs; ++k) one_run(k);
  } else {
    for (int32_t k = 0; k < cfg.runs; ++k) one_run(k);
  }

  for (const auto& reports : all_reports) {
    for (const CheckReport& rep : reports) {
      outcome.violation_counts[rep.name] += static_cast<int64_t>(rep.violations.size());
      if (!rep.pass) {
        outcome.pass = false;
        for (const Violation& v : rep.violations) {
          if (outcome.samples.size() < 10) outcome.samples.push_back(v);
        }
      }
    }
  }
  outcome.elapsed_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return outcome;
}

CheckReport run_self_test() {
  CheckReport rep{"self_test"};
  Graph g = path_graph(11);
  OracleMetrics oracle = oracle_metrics(g, ExecPolicy::Serial);
  RunOptions opts;
  opts.exec = ExecPolicy::Serial;
  opts.probe_all = true;
  SimulationResult base = run(g, WakeSchedule::single(0), opts);

  Json fired = Json::object();
  auto expect_flags = [&](const std::string& name, const CheckReport& corrupted,
                          size_t expected_violations) {
    const bool ok = !corrupted.pass && (expected_violations == 0 ||
                                        corrupted.violations.size() == expected_violations);
    fired[name] = ok;
    if (!ok)
      add_violation(rep, -1, -1, name, "detector silent or miscounted", "detector fires");
  };

  {
    SimulationResult res = base;
    for (TraceEntry& t : res.trace) {
      if (t.c >= 2 && t.c > t.d) {  // first diameter-detection entry
        t.d -= 1;
        break;
      }
    }
    expect_flags("criteria_safety", check_criteria_safety(res, oracle), 1);
  }
  {
    SimulationResult res = base;
    res.detection[0].ecc += 100;
    expect_flags("bounds", check_bounds_report(res, oracle), 0);
  }
  {
    SimulationResult res = base;
    res.deliveries.at(res.deliveries.size() / 2).round += 5;
    expect_flags("arrival_window", check_arrival_window(res, oracle), 1);
  }
  {
    SimulationResult res = base;
    res.accounting.per_node[0].bfs_broadcasts += 1;
    expect_flags("accounting", check_accounting(g, res, oracle), 0);
  }
  {
    SimulationResult res = base;
    res.detection[0].termination += 1;
    expect_flags("termination", check_termination(res, oracle), 1);
  }
  {
    SimulationResult res = base;
    res.final_values[0].d -= 1;
    expect_flags("final_values", check_final_values(res, oracle), 1);
  }
  {
    SimulationResult res = base;
    res.detection[5].diam += 50;
    res.detection[5].rad += 50;
    expect_flags("neighbor_propagation", check_neighbor_propagation(g, res), 0);
  }

  rep.details["detectors"] = fired;
  return rep;
}

Json violation_to_json(const Violation& v) {
  Json j = Json::object();
  j["check"] = v.check;
  if (v.node >= 0) j["node"] = v.node;
  if (v.round >= 0) j["round"] = v.round;
  j["variable"] = v.variable;
  j["got"] = v.got;
  j["expected"] = v.expected;
  return j;
}

Json report_to_json(const std::vector<CheckReport>& reports) {
  Json j = Json::object();
  bool pass = true;
  Json checks = Json::array();
  for (const CheckReport& rep : reports) {
    pass = pass && rep.pass;
    Json c = Json::object();
    c["name"] = rep.name;
    c["pass"] = rep.pass;
    c["violation_count"] = rep.violations.size();
    Json vs = Json::array();
    for (size_t i = 0; i < rep.violations.size() && i < 50; ++i)
      vs.push_back(violation_to_json(rep.violations[i]));
    c["violations"] = vs;
    c["details"] = rep.details;
    checks.push_back(c);
  }
  j["pass"] = pass;
  j["checks"] = checks;
  return j;
}

Json suite_to_json(const SuiteOutcome& outcome) {
  Json j = Json::object();
  j["pass"] = outcome.pass;
  j["runs"] = outcome.runs;
  j["elapsed_sec"] = outcome.elapsed_sec;
  Json counts = Json::object();
  for (const auto& [name, count] : outcome.violation_counts) counts[name] = count;
  j["violation_counts"] = counts;
  Json samples = Json::array();
  for (const Violation& v : outcome.samples) samples.push_back(violation_to_json(v));
  j["sample_violations"] = samples;
  return j;
}

}  // namespace eccsim
