#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "eccsim/graph.hpp"
#include "eccsim/oracle.hpp"
#include "eccsim/simulator.hpp"
#include "eccsim/verify.hpp"

using namespace eccsim;

namespace {

SimulationResult full_run(const Graph& g, const WakeSchedule& ws) {
  RunOptions opts;
  opts.probe_all = true;
  opts.exec = ExecPolicy::Serial;
  return run(g, ws, opts);
}

const BoundRow& find_row(const BoundReport& rep, int32_t node, const std::string& claim) {
  for (const BoundRow& row : rep.rows)
    if (row.node == node && row.claim == claim) return row;
  static BoundRow missing;
  REQUIRE_MESSAGE(false, "missing bound row");
  return missing;
}

}  // namespace

TEST_CASE("all checks pass on the calibration configurations") {
  for (const auto& reports : {check_all(path_graph(11), WakeSchedule::single(0)),
                              check_all(t_graph(5, 5, 4), WakeSchedule::single(14)),
                              check_all(path_graph(2), WakeSchedule::single(0)),
                              check_all(random_connected_graph(30, 0.1, 7), WakeSchedule::single(0))}) {
    for (const CheckReport& rep : reports) {
      INFO(rep.name);
      CHECK(rep.pass);
      CHECK(rep.violations.empty());
    }
  }
}

TEST_CASE("bound rows on the path-11 run") {
  Graph g = path_graph(11);
  OracleMetrics oracle = oracle_metrics(g);
  SimulationResult res = full_run(g, WakeSchedule::single(0));
  BoundReport rep = check_bounds(res, oracle);
  CHECK(rep.pass);

  // the center sits exactly on its eccentricity bound
  const BoundRow& ecc5 = find_row(rep, 5, "ecc");
  CHECK_EQ(ecc5.bound, 17);
  CHECK_EQ(ecc5.observed, 17);
  CHECK_EQ(ecc5.slack, 0);

  // the initiator sits exactly on the tight diameter bound
  const BoundRow& diam0 = find_row(rep, 0, "diam_tight");
  CHECK_EQ(diam0.bound, 31);
  CHECK_EQ(diam0.observed, 31);
  CHECK_EQ(diam0.slack, 0);
  CHECK_FALSE(diam0.hard);
  CHECK_EQ(find_row(rep, 0, "diam").bound, 32);

  // and exactly on the radius bound
  const BoundRow& rad0 = find_row(rep, 0, "rad");
  CHECK_EQ(rad0.bound, 30);
  CHECK_EQ(rad0.observed, 30);
  CHECK_EQ(rad0.slack, 0);

  // the far end detects its eccentricity in the wake burst, well under bound
  const BoundRow& ecc10 = find_row(rep, 10, "ecc");
  CHECK_EQ(ecc10.bound, 22);
  CHECK_EQ(ecc10.observed, 12);
  CHECK_EQ(ecc10.slack, 10);

  // global forms
  CHECK_EQ(find_row(rep, 0, "ecc_global").bound, 22);
  CHECK_EQ(find_row(rep, 0, "diam_global").bound, 31);
  CHECK_EQ(find_row(rep, 0, "rad_global").bound, 30);
}

TEST_CASE("criteria safety flags a corrupted diameter exactly once") {
  Graph g = path_graph(11);
  OracleMetrics oracle = oracle_metrics(g);
  SimulationResult res = full_run(g, WakeSchedule::single(0));
  CHECK(check_criteria_safety(res, oracle).pass);

  for (TraceEntry& t : res.trace) {
    if (t.c >= 2 && t.c > t.d) {
      t.d -= 1;
      break;
    }
  }
  CheckReport rep = check_criteria_safety(res, oracle);
  CHECK_FALSE(rep.pass);
  CHECK_EQ(rep.violations.size(), 1u);
  CHECK_EQ(rep.violations[0].variable, "d");
}

TEST_CASE("each detector fires on its corruption") {
  Graph g = path_graph(11);
  OracleMetrics oracle = oracle_metrics(g);
  SimulationResult base = full_run(g, WakeSchedule::single(0));

  {
    SimulationResult res = base;
    res.detection[3].ecc += 50;
    CHECK_FALSE(check_bounds_report(res, oracle).pass);
  }
  {
    SimulationResult res = base;
    res.deliveries[5].round += 7;
    CheckReport rep = check_arrival_window(res, oracle);
    CHECK_FALSE(rep.pass);
    CHECK_EQ(rep.violations.size(), 1u);
  }
  {
    SimulationResult res = base;
    res.accounting.per_node[4].bfs_broadcasts -= 1;
    CHECK_FALSE(check_accounting(g, res, oracle).pass);
  }
  {
    SimulationResult res = base;
    res.detection[2].termination += 3;
    CHECK_FALSE(check_termination(res, oracle).pass);
  }
  {
    SimulationResult res = base;
    res.final_values[7].r = 4;
    CHECK_FALSE(check_final_values(res, oracle).pass);
  }
  {
    SimulationResult res = base;
    res.last_tuple_round = res.rounds_executed + 1;
    CHECK_FALSE(check_termination(res, oracle).pass);
  }
  {
    SimulationResult res = base;
    res.detection[5].diam += 50;
    res.detection[5].rad += 50;
    CHECK_FALSE(check_neighbor_propagation(g, res).pass);
  }
}

TEST_CASE("criteria spread to neighbors within one round") {
  Graph g = t_graph(4, 3, 6);
  SimulationResult res = full_run(g, WakeSchedule::single(2));
  CHECK(check_neighbor_propagation(g, res).pass);
  for (int32_t i = 0; i < g.num_nodes(); ++i) {
    int32_t met_i = std::max(res.detection[i].diam, res.detection[i].rad);
    for (int32_t j : g.neighbors(i))
      CHECK(std::max(res.detection[j].diam, res.detection[j].rad) <= met_i + 1);
  }
}

TEST_CASE("self test exercises every detector") {
  CheckReport rep = run_self_test();
  CHECK(rep.pass);
  for (const auto& [name, fired] : rep.details["detectors"].items()) {
    INFO(name);
    CHECK(fired.get<bool>());
  }
}

TEST_CASE("small random suite is clean") {
  SuiteConfig cfg;
  cfg.runs = 15;
  cfg.max_n = 25;
  cfg.seed = 1234;
  SuiteOutcome outcome = run_random_suite(cfg);
  CHECK(outcome.pass);
  CHECK_EQ(outcome.runs, 15);
  for (const auto& [name, count] : outcome.violation_counts) {
    INFO(name);
    CHECK_EQ(count, 0);
  }

  SuiteConfig sync = cfg;
  sync.all_wake_zero = true;
  CHECK(run_random_suite(sync).pass);
}

TEST_CASE("report serialization") {
  auto reports = check_all(path_graph(4), WakeSchedule::single(0));
  Json j = report_to_json(reports);
  CHECK(j["pass"].get<bool>());
  CHECK_EQ(j["checks"].size(), reports.size());
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("name"));
    CHECK(c.contains("pass"));
    CHECK(c.contains("violations"));
  }

  SuiteConfig cfg;
  cfg.runs = 3;
  cfg.max_n = 10;
  Json sj = suite_to_json(run_random_suite(cfg));
  CHECK(sj["pass"].get<bool>());
  CHECK_EQ(sj["runs"].get<int>(), 3);
}
