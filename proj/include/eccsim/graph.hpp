#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace eccsim {

/// Simple connected undirected unweighted graph with stable node identifiers.
///
/// External identifiers are arbitrary non-negative integers; internally nodes
/// are addressed by dense indices 0..num_nodes()-1 (ids sorted ascending).
/// All simulation state uses dense indices and is mapped back to external ids
/// only at the I/O boundary. Instances are immutable after construction and
/// safe to share across concurrent runs.
class Graph {
 public:
  /// Builds and validates a graph from an undirected edge list.
  /// Duplicate edges collapse; self-loops, fewer than 2 nodes, and
  /// disconnected inputs are rejected.
  static Graph from_edges(const std::vector<std::pair<int64_t, int64_t>>& edges);

  int32_t num_nodes() const { return static_cast<int32_t>(ids_.size()); }
  int64_t num_edges() const { return num_edges_; }
  std::span<const int32_t> neighbors(int32_t v) const { return adj_[v]; }
  int32_t degree(int32_t v) const { return static_cast<int32_t>(adj_[v].size()); }
  int64_t id_of(int32_t v) const { return ids_[v]; }
  std::optional<int32_t> index_of(int64_t id) const;
  const std::vector<int64_t>& ids() const { return ids_; }

 private:
  Graph() = default;

  std::vector<int64_t> ids_;               // dense index -> external id
  std::vector<std::vector<int32_t>> adj_;  // sorted neighbor lists, dense
  int64_t num_edges_ = 0;
};

/// Checks all structural invariants (symmetry, simplicity, connectivity,
/// |V| >= 2). from_edges already guarantees them; kept as an explicit
/// validator for tests and for graphs arriving from untrusted input paths.
void validate(const Graph& g);

/// Path 0-1-...-(n-1). Requires n >= 2.
Graph path_graph(int32_t n);

/// A horizontal path of left+right+1 nodes with a vertical path of `stem`
/// nodes attached to the junction node. Ids are assigned path first, then
/// stem, increasing; the junction is node `left`. All arms must be >= 1.
Graph t_graph(int32_t left, int32_t right, int32_t stem);

/// Connected random graph: a uniform random spanning tree (Pruefer decode)
/// plus each remaining edge independently with probability edge_prob.
/// Deterministic for fixed (n, edge_prob, seed). Requires n >= 2 and
/// edge_prob in (0, 1].
Graph random_connected_graph(int32_t n, double edge_prob, uint64_t seed);

/// Parses whitespace-separated "u v" pairs, one edge per line. Blank lines
/// and `#` comments are ignored. Errors name the offending line.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list(const std::string& text);
Graph parse_edge_list_file(const std::string& path);

/// Deterministic edge-list text: one "u v" line per edge, u < v, sorted.
std::string to_edge_list(const Graph& g);

}  // namespace eccsim
