#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "eccsim/oracle.hpp"
#include "eccsim/simulator.hpp"

namespace eccsim {

using Json = nlohmann::ordered_json;

struct Violation {
  std::string check;
  int32_t node = -1;
  int32_t round = -1;
  std::string variable;
  std::string got;
  std::string expected;

  std::string to_string() const;
};

struct CheckReport {
  std::string name;
  bool pass = true;
  std::vector<Violation> violations;
  Json details = Json::object();
};

/// One bound claim evaluated at one node.
struct BoundRow {
  int32_t node = -1;
  std::string claim;
  int64_t bound = 0;
  int64_t observed = 0;
  int64_t slack = 0;  // bound - observed; negative on violation
  bool hard = true;   // advisory rows report slack but never fail the check
  bool pass = true;
};

struct BoundReport {
  std::vector<BoundRow> rows;
  bool pass = true;
};

/// Wherever a convergence predicate holds in the trace, the corresponding
/// variable must equal the oracle value. Requires a full-node trace.
CheckReport check_criteria_safety(const SimulationResult& res, const OracleMetrics& oracle);

/// Detection-round bounds per node (ecc <= D+ecc(i)+2, diam <= 2D+ecc(i)+2,
/// rad <= D+ecc(i)+2R) plus the global 2D+2 / 3D+1 / 2D+2R forms. The
/// tighter 2D+ecc(i)+1 diameter bound is reported as an advisory row.
BoundReport check_bounds(const SimulationResult& res, const OracleMetrics& oracle);
CheckReport check_bounds_report(const SimulationResult& res, const OracleMetrics& oracle);

/// Runs both storage variants in lockstep and requires identical per-round
/// (e, d, r, c, s) and outgoing tuple sets at every node. Details carry the
/// peak stored-id counts per node for each variant.
CheckReport check_variant_equivalence(const Graph& g, const WakeSchedule& schedule);

/// Every BFS delivery of origin i at node j must fall in rounds
/// wake(i)+dist(i,j) .. wake(i)+dist(i,j)+2.
CheckReport check_arrival_window(const SimulationResult& res, const OracleMetrics& oracle);

/// Each node broadcasts exactly |V| distinct BFS origins, at most diam(G)
/// diam messages and at most ecc(i)-radius+1 rad messages; link totals match.
CheckReport check_accounting(const Graph& g, const SimulationResult& res,
                             const OracleMetrics& oracle);

/// All nodes terminated, within max-wake + 3D + 2R + 3 rounds, nothing sent
/// after the last termination, and per-node detection rounds well-ordered.
CheckReport check_termination(const SimulationResult& res, const OracleMetrics& oracle);

/// Final (e, d, r) at every node equal (ecc(i), diam, radius).
CheckReport check_final_values(const SimulationResult& res, const OracleMetrics& oracle);

/// Once a node meets both convergence criteria, every neighbor meets them at
/// most one round later.
CheckReport check_neighbor_propagation(const Graph& g, const SimulationResult& res);

/// Runs every check against one simulation of the given configuration.
std::vector<CheckReport> check_all(const Graph& g, const WakeSchedule& schedule,
                                   Variant variant = Variant::FullSet);

class Rng;

/// 1-4 initiators; the first wakes at round 0, the rest at random rounds.
WakeSchedule random_wake_schedule(const Graph& g, Rng& rng);

struct SuiteConfig {
  int32_t runs = 200;
  int32_t max_n = 60;
  uint64_t seed = 1;
  bool all_wake_zero = false;  // synchronized start instead of random schedules
  bool parallel = true;        // distribute runs over OpenMP threads
};

struct SuiteOutcome {
  int32_t runs = 0;
  std::map<std::string, int64_t> violation_counts;  // per check name
  std::vector<Violation> samples;                   // first few violations
  bool pass = true;
  double elapsed_sec = 0.0;
};

/// Random graphs (n in [2, max_n], varied density) with either randomized
/// multi-initiator schedules or synchronized start, every check applied to
/// every run. Deterministic for a fixed config.
SuiteOutcome run_random_suite(const SuiteConfig& cfg);

/// Deliberately corrupts known-good results and reruns the checkers; each
/// corruption must be flagged. details["detectors"] lists what fired.
CheckReport run_self_test();

Json report_to_json(const std::vector<CheckReport>& reports);
Json suite_to_json(const SuiteOutcome& outcome);

}  // namespace eccsim
