#include "eccsim/oracle.hpp"

#include <algorithm>

#include "eccsim/errors.hpp"

namespace eccsim {

namespace {

void bfs_row(const Graph& g, int32_t src, std::vector<int32_t>& dist) {
  const int32_t n = g.num_nodes();
  dist.assign(n, -1);
  dist[src] = 0;
  // plain frontier sweep; avoids a queue allocation per source
  std::vector<int32_t> frontier{src}, next;
  while (!frontier.empty()) {
    next.clear();
    for (int32_t v : frontier) {
      for (int32_t u : g.neighbors(v)) {
        if (dist[u] < 0) {
          dist[u] = dist[v] + 1;
          next.push_back(u);
        }
      }
    }
    frontier.swap(next);
  }
}

}  // namespace

OracleMetrics oracle_metrics(const Graph& g, ExecPolicy policy) {
  const int32_t n = g.num_nodes();
  OracleMetrics m;
  m.dist.assign(n, {});

  if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (int32_t i = 0; i < n; ++i) bfs_row(g, i, m.dist[i]);
  } else {
    for (int32_t i = 0; i < n; ++i) bfs_row(g, i, m.dist[i]);
  }

  m.ecc.assign(n, 0);
  for (int32_t i = 0; i < n; ++i) {
    for (int32_t dij : m.dist[i]) {
      if (dij < 0) throw ValidationError("oracle ran on a disconnected graph");
      m.ecc[i] = std::max(m.ecc[i], dij);
    }
  }
  m.diameter = *std::max_element(m.ecc.begin(), m.ecc.end());
  m.radius = *std::min_element(m.ecc.begin(), m.ecc.end());
  for (int32_t i = 0; i < n; ++i) {
    if (m.ecc[i] == m.radius) m.centers.push_back(i);
    if (m.ecc[i] == m.diameter) m.periphery.push_back(i);
  }
  return m;
}

}  // namespace eccsim
