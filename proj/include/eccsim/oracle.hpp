#pragma once

#include <cstdint>
#include <vector>

#include "eccsim/graph.hpp"

namespace eccsim {

enum class ExecPolicy : uint8_t { Serial, Parallel };

/// Ground-truth metrics from one BFS per source node, O(|V|*|E|) total.
struct OracleMetrics {
  std::vector<std::vector<int32_t>> dist;  // dist[i][j] over dense indices
  std::vector<int32_t> ecc;                // ecc[i] = max_j dist[i][j]
  int32_t diameter = 0;                    // max_i ecc[i]
  int32_t radius = 0;                      // min_i ecc[i]
  std::vector<int32_t> centers;            // ecc == radius, sorted
  std::vector<int32_t> periphery;          // ecc == diameter, sorted
};

/// The per-source BFS rows are independent; the parallel policy runs them
/// under OpenMP, the serial policy is the reference used by tests and the
/// benchmark. Both produce identical results.
OracleMetrics oracle_metrics(const Graph& g, ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace eccsim
