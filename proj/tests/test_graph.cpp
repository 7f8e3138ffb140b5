#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "eccsim/errors.hpp"
#include "eccsim/graph.hpp"
#include "eccsim/oracle.hpp"
#include "eccsim/rng.hpp"

using namespace eccsim;

namespace {

// Independent distance oracle: Floyd-Warshall, O(n^3). Only used to
// cross-check the per-source BFS metrics on small graphs.
std::vector<std::vector<int32_t>> floyd_warshall(const Graph& g) {
  const int32_t n = g.num_nodes();
  const int32_t inf = 1 << 28;
  std::vector<std::vector<int32_t>> d(n, std::vector<int32_t>(n, inf));
  for (int32_t v = 0; v < n; ++v) {
    d[v][v] = 0;
    for (int32_t u : g.neighbors(v)) d[v][u] = 1;
  }
  for (int32_t k = 0; k < n; ++k)
    for (int32_t i = 0; i < n; ++i)
      for (int32_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

Graph complete_graph(int32_t n) {
  std::vector<std::pair<int64_t, int64_t>> edges;
  for (int32_t i = 0; i < n; ++i)
    for (int32_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph::from_edges(edges);
}

}  // namespace

TEST_CASE("path graph shape") {
  Graph g = path_graph(11);
  CHECK_EQ(g.num_nodes(), 11);
  CHECK_EQ(g.num_edges(), 10);
  CHECK_EQ(g.degree(0), 1);
  CHECK_EQ(g.degree(5), 2);
  CHECK_EQ(g.degree(10), 1);

  Graph g2 = path_graph(2);
  CHECK_EQ(g2.num_nodes(), 2);
  CHECK_EQ(g2.num_edges(), 1);

  CHECK_THROWS_AS(path_graph(1), InvalidParameterError);
  CHECK_THROWS_AS(path_graph(0), InvalidParameterError);
}

TEST_CASE("path graph oracle values") {
  OracleMetrics m = oracle_metrics(path_graph(11));
  CHECK_EQ(m.diameter, 10);
  CHECK_EQ(m.radius, 5);
  CHECK_EQ(m.ecc[0], 10);
  CHECK_EQ(m.ecc[5], 5);
  CHECK_EQ(m.ecc[10], 10);
  CHECK_EQ(m.centers, std::vector<int32_t>{5});
  CHECK_EQ(m.periphery, std::vector<int32_t>{0, 10});

  OracleMetrics m3 = oracle_metrics(path_graph(3));
  CHECK_EQ(m3.diameter, 2);
  CHECK_EQ(m3.radius, 1);
  CHECK_EQ(m3.centers, std::vector<int32_t>{1});

  OracleMetrics m4 = oracle_metrics(path_graph(4));
  CHECK_EQ(m4.ecc, std::vector<int32_t>({3, 2, 2, 3}));
  CHECK_EQ(m4.radius, 2);
  CHECK_EQ(m4.diameter, 3);

  OracleMetrics m2 = oracle_metrics(path_graph(2));
  CHECK_EQ(m2.diameter, 1);
  CHECK_EQ(m2.radius, 1);
}

TEST_CASE("t graph shape and metrics") {
  Graph g = t_graph(5, 5, 4);
  CHECK_EQ(g.num_nodes(), 15);
  CHECK_EQ(g.num_edges(), 14);
  CHECK_EQ(g.degree(5), 3);  // junction
  CHECK_EQ(g.degree(14), 1);

  OracleMetrics m = oracle_metrics(g);
  CHECK_EQ(m.diameter, 10);
  CHECK_EQ(m.radius, 5);
  CHECK_EQ(m.ecc[14], 9);
  CHECK_EQ(m.dist[14][5], 4);
  CHECK_EQ(m.dist[14][0], 9);

  // degenerate T is a star on 4 nodes
  Graph star = t_graph(1, 1, 1);
  CHECK_EQ(star.num_nodes(), 4);
  OracleMetrics sm = oracle_metrics(star);
  CHECK_EQ(sm.diameter, 2);
  CHECK_EQ(sm.radius, 1);
  CHECK_EQ(sm.centers, std::vector<int32_t>{1});

  CHECK_THROWS_AS(t_graph(0, 5, 4), InvalidParameterError);
  CHECK_THROWS_AS(t_graph(5, 5, 0), InvalidParameterError);
}

TEST_CASE("complete graph oracle") {
  OracleMetrics m = oracle_metrics(complete_graph(4));
  CHECK_EQ(m.diameter, 1);
  CHECK_EQ(m.radius, 1);
  for (int32_t e : m.ecc) CHECK_EQ(e, 1);
}

TEST_CASE("random connected graph determinism and validity") {
  Graph a = random_connected_graph(20, 0.15, 42);
  Graph b = random_connected_graph(20, 0.15, 42);
  CHECK_EQ(to_edge_list(a), to_edge_list(b));
  CHECK_NOTHROW(validate(a));

  Graph c = random_connected_graph(2, 0.5, 7);
  CHECK_EQ(to_edge_list(c), "0 1\n");

  CHECK_THROWS_AS(random_connected_graph(1, 0.5, 1), InvalidParameterError);
  CHECK_THROWS_AS(random_connected_graph(5, 0.0, 1), InvalidParameterError);
  CHECK_THROWS_AS(random_connected_graph(5, 1.5, 1), InvalidParameterError);
}

TEST_CASE("oracle invariants on random graphs") {
  Rng seeds(7);
  for (int iter = 0; iter < 25; ++iter) {
    int32_t n = 2 + static_cast<int32_t>(seeds.below(29));
    double p = std::max(0.05, seeds.unit() * seeds.unit());
    Graph g = random_connected_graph(n, p, seeds.next_u64());
    CHECK_NOTHROW(validate(g));
    OracleMetrics m = oracle_metrics(g);

    CHECK(m.radius <= m.diameter);
    CHECK(m.diameter <= 2 * m.radius);
    CHECK(m.radius >= 1);

    // every value in [radius, diameter] is some node's eccentricity
    std::set<int32_t> eccs(m.ecc.begin(), m.ecc.end());
    for (int32_t k = m.radius; k <= m.diameter; ++k) CHECK(eccs.count(k) == 1);

    // symmetry, zero diagonal, sampled triangle inequality
    Rng triples(seeds.next_u64());
    for (int32_t i = 0; i < n; ++i) {
      CHECK_EQ(m.dist[i][i], 0);
      for (int32_t j = 0; j < n; ++j) CHECK_EQ(m.dist[i][j], m.dist[j][i]);
    }
    for (int t = 0; t < 20; ++t) {
      int32_t i = static_cast<int32_t>(triples.below(n));
      int32_t j = static_cast<int32_t>(triples.below(n));
      int32_t k = static_cast<int32_t>(triples.below(n));
      CHECK(m.dist[i][j] <= m.dist[i][k] + m.dist[k][j]);
    }
  }
}

TEST_CASE("bfs oracle matches floyd-warshall") {
  Rng seeds(99);
  for (int iter = 0; iter < 10; ++iter) {
    int32_t n = 2 + static_cast<int32_t>(seeds.below(19));
    Graph g = random_connected_graph(n, 0.2, seeds.next_u64());
    OracleMetrics m = oracle_metrics(g);
    CHECK_EQ(m.dist, floyd_warshall(g));
  }
  OracleMetrics m = oracle_metrics(t_graph(3, 2, 4));
  CHECK_EQ(m.dist, floyd_warshall(t_graph(3, 2, 4)));
}

TEST_CASE("serial and parallel oracle agree") {
  Graph g = random_connected_graph(40, 0.1, 3);
  OracleMetrics a = oracle_metrics(g, ExecPolicy::Serial);
  OracleMetrics b = oracle_metrics(g, ExecPolicy::Parallel);
  CHECK_EQ(a.dist, b.dist);
  CHECK_EQ(a.ecc, b.ecc);
  CHECK_EQ(a.diameter, b.diameter);
  CHECK_EQ(a.radius, b.radius);
  CHECK_EQ(a.centers, b.centers);
  CHECK_EQ(a.periphery, b.periphery);
}

TEST_CASE("edge list parsing") {
  Graph g = parse_edge_list("0 1\n1 2\n");
  CHECK_EQ(g.num_nodes(), 3);
  CHECK_EQ(g.num_edges(), 2);

  // comments, blank lines, duplicate edges
  Graph h = parse_edge_list("# a path\n0 1\n\n1 2  # tail comment\n2 1\n");
  CHECK_EQ(h.num_edges(), 2);

  // arbitrary non-negative ids are kept
  Graph s = parse_edge_list("5 100\n100 7\n");
  CHECK_EQ(s.num_nodes(), 3);
  REQUIRE(s.index_of(100).has_value());
  CHECK_EQ(s.id_of(*s.index_of(100)), 100);
  CHECK_EQ(s.ids(), std::vector<int64_t>({5, 7, 100}));

  CHECK_THROWS_WITH_AS(static_cast<void>(parse_edge_list("0 0\n")),
                       doctest::Contains("self-loop"), ParseError);
  CHECK_THROWS_WITH_AS(static_cast<void>(parse_edge_list("0 1\n2 3\n")),
                       doctest::Contains("disconnected"), ValidationError);
  CHECK_THROWS_WITH_AS(static_cast<void>(parse_edge_list("0 1\nbogus\n")),
                       doctest::Contains("line 2"), ParseError);
  CHECK_THROWS_WITH_AS(static_cast<void>(parse_edge_list("0 1 2\n")),
                       doctest::Contains("line 1"), ParseError);
  CHECK_THROWS_AS(static_cast<void>(parse_edge_list("0 -1\n")), ParseError);
  CHECK_THROWS_AS(static_cast<void>(parse_edge_list("")), ParseError);
}

TEST_CASE("edge list round trip") {
  Rng seeds(11);
  for (int iter = 0; iter < 10; ++iter) {
    Graph g = random_connected_graph(2 + static_cast<int32_t>(seeds.below(24)), 0.3,
                                     seeds.next_u64());
    Graph back = parse_edge_list(to_edge_list(g));
    CHECK_EQ(to_edge_list(back), to_edge_list(g));
  }
}
