#include "eccsim/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "eccsim/errors.hpp"
#include "eccsim/rng.hpp"

namespace eccsim {

std::optional<int32_t> Graph::index_of(int64_t id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<int32_t>(it - ids_.begin());
}

Graph Graph::from_edges(const std::vector<std::pair<int64_t, int64_t>>& edges) {
  Graph g;
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0) throw ValidationError("negative node id in edge list");
    if (u == v) throw ValidationError("self-loop at node " + std::to_string(u));
    g.ids_.push_back(u);
    g.ids_.push_back(v);
  }
  std::sort(g.ids_.begin(), g.ids_.end());
  g.ids_.erase(std::unique(g.ids_.begin(), g.ids_.end()), g.ids_.end());
  if (g.ids_.size() < 2) throw ValidationError("graph needs at least 2 nodes");

  g.adj_.assign(g.ids_.size(), {});
  for (const auto& [u, v] : edges) {
    int32_t ui = *g.index_of(u);
    int32_t vi = *g.index_of(v);
    g.adj_[ui].push_back(vi);
    g.adj_[vi].push_back(ui);
  }
  for (auto& nbrs : g.adj_) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    g.num_edges_ += static_cast<int64_t>(nbrs.size());
  }
  g.num_edges_ /= 2;

  validate(g);
  return g;
}

void validate(const Graph& g) {
  const int32_t n = g.num_nodes();
  if (n < 2) throw ValidationError("graph needs at least 2 nodes");
  if (g.num_edges() < 1) throw ValidationError("graph needs at least 1 edge");
  for (int32_t v = 0; v < n; ++v) {
    int32_t prev = -1;
    for (int32_t u : g.neighbors(v)) {
      if (u < 0 || u >= n) throw ValidationError("neighbor index out of range");
      if (u == v) throw ValidationError("self-loop at node " + std::to_string(g.id_of(v)));
      if (u == prev) throw ValidationError("duplicate edge at node " + std::to_string(g.id_of(v)));
      prev = u;
      auto back = g.neighbors(u);
      if (!std::binary_search(back.begin(), back.end(), v))
        throw ValidationError("asymmetric adjacency between nodes " +
                              std::to_string(g.id_of(v)) + " and " + std::to_string(g.id_of(u)));
    }
  }
  // connectivity: BFS from node 0
  std::vector<uint8_t> seen(n, 0);
  std::queue<int32_t> q;
  q.push(0);
  seen[0] = 1;
  int32_t reached = 1;
  while (!q.empty()) {
    int32_t v = q.front();
    q.pop();
    for (int32_t u : g.neighbors(v)) {
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        q.push(u);
      }
    }
  }
  if (reached != n) throw ValidationError("graph is disconnected");
}

Graph path_graph(int32_t n) {
  if (n < 2) throw InvalidParameterError("path graph needs n >= 2, got " + std::to_string(n));
  std::vector<std::pair<int64_t, int64_t>> edges;
  edges.reserve(n - 1);
  for (int32_t k = 0; k + 1 < n; ++k) edges.emplace_back(k, k + 1);
  return Graph::from_edges(edges);
}

Graph t_graph(int32_t left, int32_t right, int32_t stem) {
  if (left < 1 || right < 1 || stem < 1)
    throw InvalidParameterError("t graph needs all arm lengths >= 1");
  std::vector<std::pair<int64_t, int64_t>> edges;
  const int32_t path_len = left + right + 1;
  for (int32_t k = 0; k + 1 < path_len; ++k) edges.emplace_back(k, k + 1);
  int32_t prev = left;  // junction
  for (int32_t k = 0; k < stem; ++k) {
    edges.emplace_back(prev, path_len + k);
    prev = path_len + k;
  }
  return Graph::from_edges(edges);
}

Graph random_connected_graph(int32_t n, double edge_prob, uint64_t seed) {
  if (n < 2) throw InvalidParameterError("random graph needs n >= 2, got " + std::to_string(n));
  if (!(edge_prob > 0.0) || edge_prob > 1.0)
    throw InvalidParameterError("edge_prob must be in (0, 1]");
  Rng rng(seed);

  // Uniform random spanning tree via Pruefer decode, then sprinkle the
  // remaining edges; guarantees connectivity without rejection loops.
  std::vector<std::pair<int64_t, int64_t>> edges;
  if (n == 2) {
    edges.emplace_back(0, 1);
  } else {
    std::vector<int32_t> pruefer(n - 2);
    for (auto& x : pruefer) x = static_cast<int32_t>(rng.below(static_cast<uint32_t>(n)));
    std::vector<int32_t> deg(n, 1);
    for (int32_t x : pruefer) ++deg[x];
    std::priority_queue<int32_t, std::vector<int32_t>, std::greater<>> leaves;
    for (int32_t v = 0; v < n; ++v)
      if (deg[v] == 1) leaves.push(v);
    for (int32_t x : pruefer) {
      int32_t leaf = leaves.top();
      leaves.pop();
      edges.emplace_back(std::min(leaf, x), std::max(leaf, x));
      if (--deg[x] == 1) leaves.push(x);
    }
    int32_t a = leaves.top();
    leaves.pop();
    int32_t b = leaves.top();
    edges.emplace_back(std::min(a, b), std::max(a, b));
  }

  std::vector<uint8_t> in_tree(static_cast<size_t>(n) * n, 0);
  for (const auto& [u, v] : edges) in_tree[static_cast<size_t>(u) * n + v] = 1;
  for (int32_t u = 0; u < n; ++u)
    for (int32_t v = u + 1; v < n; ++v) {
      if (in_tree[static_cast<size_t>(u) * n + v]) continue;
      if (rng.unit() < edge_prob) edges.emplace_back(u, v);
    }
  return Graph::from_edges(edges);
}

namespace {

std::string strip(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Graph parse_edge_list(std::istream& in) {
  std::vector<std::pair<int64_t, int64_t>> edges;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = strip(line);
    if (line.empty()) continue;
    std::istringstream ls(line);
    int64_t u, v;
    std::string extra;
    if (!(ls >> u >> v) || (ls >> extra))
      throw ParseError("line " + std::to_string(lineno) + ": expected two integers, got '" +
                       line + "'");
    if (u < 0 || v < 0)
      throw ParseError("line " + std::to_string(lineno) + ": negative node id");
    if (u == v) throw ParseError("line " + std::to_string(lineno) + ": self-loop '" + line + "'");
    edges.emplace_back(u, v);
  }
  if (edges.empty()) throw ParseError("edge list is empty");
  return Graph::from_edges(edges);
}

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

Graph parse_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open edge list file: " + path);
  return parse_edge_list(in);
}

std::string to_edge_list(const Graph& g) {
  std::vector<std::pair<int64_t, int64_t>> edges;
  for (int32_t v = 0; v < g.num_nodes(); ++v)
    for (int32_t u : g.neighbors(v))
      if (v < u) edges.emplace_back(g.id_of(v), g.id_of(u));
  std::sort(edges.begin(), edges.end());
  std::string out;
  for (const auto& [u, v] : edges) {
    out += std::to_string(u);
    out += ' ';
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

}  // namespace eccsim
