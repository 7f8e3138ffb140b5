// Compares the serial reference implementations against the OpenMP kernels:
// the per-source BFS oracle and the per-round node transitions of the
// simulation engine.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "eccsim/graph.hpp"
#include "eccsim/oracle.hpp"
#include "eccsim/simulator.hpp"

using namespace eccsim;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename F>
double timed(F&& f) {
  auto start = Clock::now();
  f();
  return seconds_since(start);
}

void bench_oracle(const char* name, const Graph& g) {
  OracleMetrics serial, parallel;
  double ts = timed([&] { serial = oracle_metrics(g, ExecPolicy::Serial); });
  double tp = timed([&] { parallel = oracle_metrics(g, ExecPolicy::Parallel); });
  const bool same = serial.dist == parallel.dist && serial.ecc == parallel.ecc;
  std::printf("oracle   %-18s n=%-6d m=%-7lld serial %8.3fs  parallel %8.3fs  speedup %5.2fx  %s\n",
              name, g.num_nodes(), static_cast<long long>(g.num_edges()), ts, tp, ts / tp,
              same ? "identical" : "MISMATCH");
}

void bench_engine(const char* name, const Graph& g, const WakeSchedule& ws) {
  RunOptions serial_opts, parallel_opts;
  serial_opts.exec = ExecPolicy::Serial;
  parallel_opts.exec = ExecPolicy::Parallel;
  serial_opts.record_deliveries = parallel_opts.record_deliveries = false;

  SimulationResult rs, rp;
  double ts = timed([&] { rs = run(g, ws, serial_opts); });
  double tp = timed([&] { rp = run(g, ws, parallel_opts); });
  const bool same = rs.detection == rp.detection && rs.final_values == rp.final_values &&
                    rs.rounds_executed == rp.rounds_executed;
  std::printf("engine   %-18s n=%-6d rounds=%-5d serial %8.3fs  parallel %8.3fs  speedup %5.2fx  %s\n",
              name, g.num_nodes(), rs.rounds_executed, ts, tp, ts / tp,
              same ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled; both columns run serially\n");
#endif

  bench_oracle("path:1200", path_graph(1200));
  bench_oracle("random:1500", random_connected_graph(1500, 0.004, 1));
  bench_oracle("random:800-dense", random_connected_graph(800, 0.08, 2));

  bench_engine("path:600", path_graph(600), WakeSchedule::single(0));
  bench_engine("random:1500", random_connected_graph(1500, 0.004, 1), WakeSchedule::single(0));
  Graph sync = random_connected_graph(1200, 0.01, 3);
  bench_engine("random:1200-sync", sync, WakeSchedule::all_at_zero(sync));
  return 0;
}
