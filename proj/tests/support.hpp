#pragma once

#include <initializer_list>
#include <memory>
#include <queue>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "ampc/graph.hpp"
#include "ampc/runtime.hpp"

namespace testing {

using namespace ampc;

// Edge ids follow the list order.
inline Graph make_graph(VertexId n, std::initializer_list<std::tuple<VertexId, VertexId, Weight>> list) {
  std::vector<Edge> edges;
  for (auto [u, v, w] : list) edges.push_back(Edge{u, v, w, static_cast<EdgeId>(edges.size()), false});
  return Graph(n, std::move(edges), true);
}

inline Graph make_graph(VertexId n, std::initializer_list<std::pair<VertexId, VertexId>> list) {
  std::vector<Edge> edges;
  for (auto [u, v] : list) edges.push_back(Edge{u, v, 0, static_cast<EdgeId>(edges.size()), false});
  return Graph(n, std::move(edges), false);
}

inline std::unique_ptr<Runtime> runtime_for(const Graph& g, double eps = 0.5, uint64_t seed = 0) {
  return std::make_unique<Runtime>(RuntimeConfig::for_input(g.n(), g.m(), eps, seed));
}

inline Weight weight_of(const Graph& g, const std::vector<EdgeId>& ids) {
  std::unordered_map<EdgeId, Weight> w;
  for (const Edge& e : g.edges()) w[e.id] = e.w;
  Weight total = 0;
  for (EdgeId id : ids) total += w.at(id);
  return total;
}

// Edge keys along the unique forest path u..w found by BFS; empty if u == w,
// nullopt-like empty with `found` false when disconnected.
inline std::vector<EdgeKey> forest_path(const Graph& forest, VertexId u, VertexId w, bool* found) {
  std::vector<uint32_t> via(forest.n(), UINT32_MAX);
  std::vector<char> seen(forest.n(), 0);
  std::queue<VertexId> q;
  q.push(u);
  seen[u] = 1;
  while (!q.empty()) {
    VertexId x = q.front();
    q.pop();
    for (const Incidence& inc : forest.neighbors(x)) {
      if (!seen[inc.to]) {
        seen[inc.to] = 1;
        via[inc.to] = inc.edge;
        q.push(inc.to);
      }
    }
  }
  *found = seen[w] != 0;
  std::vector<EdgeKey> keys;
  if (!*found) return keys;
  for (VertexId x = w; x != u;) {
    const Edge& e = forest.edge_at(via[x]);
    keys.push_back(e.key());
    x = e.other(x);
  }
  return keys;
}

inline EdgeKey brute_path_max(const Graph& forest, VertexId u, VertexId w) {
  bool found = false;
  EdgeKey best = EdgeKey::neutral();
  for (const EdgeKey& k : forest_path(forest, u, w, &found)) best = std::max(best, k);
  return best;
}

}  // namespace testing
