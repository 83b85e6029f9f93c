#include "ampc/oracles.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace ampc {

std::vector<EdgeId> kruskal(const Graph& g) {
  std::vector<uint32_t> order(g.m());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(),
            [&](uint32_t a, uint32_t b) { return g.edge_at(a).key() < g.edge_at(b).key(); });
  DisjointSets ds(g.n());
  std::vector<EdgeId> out;
  for (uint32_t i : order) {
    const Edge& e = g.edge_at(i);
    if (ds.unite(e.u, e.v)) out.push_back(e.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<VertexId> component_labels(const Graph& g) {
  DisjointSets ds(g.n());
  for (const Edge& e : g.edges()) ds.unite(e.u, e.v);
  std::vector<VertexId> label(g.n());
  for (VertexId v = 0; v < g.n(); ++v) label[v] = static_cast<VertexId>(ds.find(v));
  return canonical_labels(label);
}

size_t component_count(const Graph& g) {
  auto label = component_labels(g);
  size_t count = 0;
  for (VertexId v = 0; v < g.n(); ++v) count += label[v] == v;
  return count;
}

std::vector<char> greedy_mis(const Graph& g, const VertexRank& rank) {
  std::vector<VertexId> order(g.n());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) { return rank.less(a, b); });
  std::vector<char> in(g.n(), 0), blocked(g.n(), 0);
  for (VertexId v : order) {
    if (blocked[v]) continue;
    in[v] = 1;
    for (const auto& inc : g.neighbors(v)) blocked[inc.to] = 1;
  }
  return in;
}

std::vector<EdgeId> greedy_matching(const Graph& g, const EdgeRank& rank) {
  std::vector<uint32_t> order(g.m());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(),
            [&](uint32_t a, uint32_t b) { return rank.less(g.edge_at(a).id, g.edge_at(b).id); });
  std::vector<char> used(g.n(), 0);
  std::vector<EdgeId> out;
  for (uint32_t i : order) {
    const Edge& e = g.edge_at(i);
    if (used[e.u] || used[e.v]) continue;
    used[e.u] = used[e.v] = 1;
    out.push_back(e.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_maximal_independent_set(const Graph& g, const std::vector<char>& in_set) {
  for (const Edge& e : g.edges()) {
    if (in_set[e.u] && in_set[e.v]) return false;
  }
  for (VertexId v = 0; v < g.n(); ++v) {
    if (in_set[v]) continue;
    bool dominated = false;
    for (const auto& inc : g.neighbors(v)) dominated |= in_set[inc.to] != 0;
    if (!dominated) return false;
  }
  return true;
}

bool is_maximal_matching(const Graph& g, const std::vector<EdgeId>& matching) {
  std::unordered_set<EdgeId> chosen(matching.begin(), matching.end());
  std::vector<char> used(g.n(), 0);
  for (const Edge& e : g.edges()) {
    if (!chosen.count(e.id)) continue;
    if (used[e.u] || used[e.v]) return false;
    used[e.u] = used[e.v] = 1;
  }
  size_t found = 0;
  for (const Edge& e : g.edges()) {
    found += chosen.count(e.id);
    if (!used[e.u] && !used[e.v]) return false;
  }
  return found == chosen.size();
}

namespace {

template <typename Label>
std::vector<VertexId> min_id_labels(const std::vector<Label>& labels) {
  std::unordered_map<Label, VertexId> min_of;
  for (VertexId v = 0; v < labels.size(); ++v) {
    auto [it, inserted] = min_of.emplace(labels[v], v);
    if (!inserted) it->second = std::min(it->second, v);
  }
  std::vector<VertexId> out(labels.size());
  for (VertexId v = 0; v < labels.size(); ++v) out[v] = min_of[labels[v]];
  return out;
}

}  // namespace

std::vector<VertexId> canonical_labels(const std::vector<VertexId>& labels) { return min_id_labels(labels); }

std::vector<VertexId> canonical_labels(const std::vector<uint64_t>& labels) { return min_id_labels(labels); }

}  // namespace ampc
