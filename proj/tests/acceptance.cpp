// Acceptance suite. Runs each numbered criterion and prints one PASS/FAIL
// line; exits nonzero if any criterion failed. A criterion number may be
// given as the only argument to run just that one.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "eccsim/graph.hpp"
#include "eccsim/oracle.hpp"
#include "eccsim/simulator.hpp"
#include "eccsim/verify.hpp"

using namespace eccsim;
using Clock = std::chrono::steady_clock;

namespace {

constexpr uint64_t kSuiteSeed = 20260808;

struct Criterion {
  int id = 0;
  bool pass = true;
  std::vector<std::string> failures;
  std::string note;
};

void expect(Criterion& c, bool ok, const std::string& what) {
  if (!ok) {
    c.pass = false;
    c.failures.push_back(what);
  }
}

SuiteOutcome& suite(bool all_wake_zero) {
  static std::map<bool, SuiteOutcome> cache;
  auto it = cache.find(all_wake_zero);
  if (it == cache.end()) {
    SuiteConfig cfg;
    cfg.runs = 200;
    cfg.max_n = 60;
    cfg.seed = kSuiteSeed;
    cfg.all_wake_zero = all_wake_zero;
    it = cache.emplace(all_wake_zero, run_random_suite(cfg)).first;
  }
  return it->second;
}

int64_t suite_violations(const SuiteOutcome& s, const std::string& check) {
  auto it = s.violation_counts.find(check);
  return it == s.violation_counts.end() ? 0 : it->second;
}

void expect_clean(Criterion& c, const SuiteOutcome& s, const std::string& check) {
  const int64_t count = suite_violations(s, check);
  expect(c, count == 0, check + " violations across suite: " + std::to_string(count));
  for (const Violation& v : s.samples)
    if (v.check == check && c.failures.size() < 6) c.failures.push_back("  e.g. " + v.to_string());
}

// Path-11 golden run, wake node 0 at round 0: eccentricity detection rounds
// exactly {0: 22, 5: 17, 10: 22}, diameter detection rounds exactly
// {0: 31, 5: 26, 10: 21}, final radius 5 at all nodes, in under a second.
Criterion criterion1() {
  Criterion c{1};
  RunOptions opts;
  opts.probe_all = true;
  auto t0 = Clock::now();
  SimulationResult res = run(path_graph(11), WakeSchedule::single(0), opts);
  double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();

  const std::map<int32_t, int32_t> ecc_expected{{0, 22}, {5, 17}, {10, 22}};
  const std::map<int32_t, int32_t> diam_expected{{0, 31}, {5, 26}, {10, 21}};
  for (const auto& [node, round] : ecc_expected)
    expect(c, res.detection[node].ecc == round,
           "ecc detection at node " + std::to_string(node) + ": got " +
               std::to_string(res.detection[node].ecc) + ", required " + std::to_string(round));
  for (const auto& [node, round] : diam_expected)
    expect(c, res.detection[node].diam == round,
           "diam detection at node " + std::to_string(node) + ": got " +
               std::to_string(res.detection[node].diam) + ", required " + std::to_string(round));
  for (int32_t i = 0; i < 11; ++i)
    expect(c, res.final_values[i].r == 5,
           "final radius at node " + std::to_string(i) + ": got " +
               radius_to_string(res.final_values[i].r) + ", required 5");
  expect(c, elapsed < 1.0, "runtime " + std::to_string(elapsed) + "s, required < 1s");
  return c;
}

// 200 random connected graphs (n <= 60, varied density, randomized
// multi-initiator schedules): every detection round within the per-node
// bounds, zero violations, under 60 seconds.
Criterion criterion2() {
  Criterion c{2};
  const SuiteOutcome& s = suite(false);
  expect_clean(c, s, "bounds");
  expect(c, s.elapsed_sec < 60.0,
         "suite runtime " + std::to_string(s.elapsed_sec) + "s, required < 60s");
  c.note = std::to_string(s.runs) + " runs in " + std::to_string(s.elapsed_sec) + "s";
  return c;
}

// Same suite: whenever a convergence predicate holds, the variable equals
// the brute-force oracle value; final values match the oracle everywhere.
Criterion criterion3() {
  Criterion c{3};
  const SuiteOutcome& s = suite(false);
  expect_clean(c, s, "criteria_safety");
  expect_clean(c, s, "final_values");
  return c;
}

// All nodes woken at round 0: eccentricity known by 2D+2, diameter by 3D+1,
// radius by 2D+2R.
Criterion criterion4() {
  Criterion c{4};
  const SuiteOutcome& s = suite(true);
  expect_clean(c, s, "bounds");
  c.note = std::to_string(s.runs) + " synchronized runs";
  return c;
}

// Full-set and sliding-window runs produce identical trajectories and
// message sets; sliding-window peak stored ids on path graphs <= 3.
Criterion criterion5() {
  Criterion c{5};
  const SuiteOutcome& s = suite(false);
  expect_clean(c, s, "variant_equivalence");

  RunOptions opts;
  opts.variant = Variant::SlidingWindow;
  opts.record_deliveries = false;
  SimulationResult end_wake = run(path_graph(11), WakeSchedule::single(0), opts);
  Graph p11 = path_graph(11);
  SimulationResult sync_wake = run(p11, WakeSchedule::all_at_zero(p11), opts);
  const int32_t peak_end =
      *std::max_element(end_wake.peak_stored_ids.begin(), end_wake.peak_stored_ids.end());
  const int32_t peak_sync =
      *std::max_element(sync_wake.peak_stored_ids.begin(), sync_wake.peak_stored_ids.end());
  expect(c, peak_end <= 3,
         "sliding-window peak stored ids on path-11 (wake 0:0): got " +
             std::to_string(peak_end) + ", required <= 3");
  expect(c, peak_sync <= 3,
         "sliding-window peak stored ids on path-11 (all:0): got " + std::to_string(peak_sync) +
             ", required <= 3");
  return c;
}

// Every BFS delivery falls within the three-round arrival window.
Criterion criterion6() {
  Criterion c{6};
  expect_clean(c, suite(false), "arrival_window");
  return c;
}

// Message accounting: exactly |V| distinct BFS origins broadcast per node,
// at most diam(G) diam messages.
Criterion criterion7() {
  Criterion c{7};
  expect_clean(c, suite(false), "accounting");
  return c;
}

// Every run ends with all nodes terminated within max-wake + 3D + 2R + 3
// rounds and nothing on the wire afterwards.
Criterion criterion8() {
  Criterion c{8};
  expect_clean(c, suite(false), "termination");
  expect_clean(c, suite(false), "neighbor_propagation");
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  if (argc > 1) {
    for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  } else {
    for (int i = 1; i <= 8; ++i) which.push_back(i);
  }

  bool all_pass = true;
  for (int id : which) {
    Criterion c;
    switch (id) {
      case 1: c = criterion1(); break;
      case 2: c = criterion2(); break;
      case 3: c = criterion3(); break;
      case 4: c = criterion4(); break;
      case 5: c = criterion5(); break;
      case 6: c = criterion6(); break;
      case 7: c = criterion7(); break;
      case 8: c = criterion8(); break;
      default:
        std::fprintf(stderr, "unknown criterion %d\n", id);
        return 2;
    }
    all_pass = all_pass && c.pass;
    std::printf("criterion %d: %s%s%s\n", c.id, c.pass ? "PASS" : "FAIL",
                c.note.empty() ? "" : " — ", c.note.c_str());
    for (const std::string& f : c.failures) std::printf("  %s\n", f.c_str());
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
