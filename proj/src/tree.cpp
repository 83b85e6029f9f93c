#include "ampc/tree.hpp"

#include <algorithm>

namespace ampc {

RootedForest root_forest(const Graph& forest) {
  VertexId n = forest.n();
  RootedForest rf;
  rf.parent.assign(n, kNoVertex);
  rf.level.assign(n, 0);
  rf.component_id.assign(n, kNoVertex);
  rf.parent_key.assign(n, EdgeKey::neutral());
  rf.order.reserve(n);
  size_t components = 0;
  for (VertexId root = 0; root < n; ++root) {
    if (rf.parent[root] != kNoVertex) continue;
    ++components;
    rf.parent[root] = root;
    rf.component_id[root] = root;
    size_t head = rf.order.size();
    rf.order.push_back(root);
    while (head < rf.order.size()) {
      VertexId v = rf.order[head++];
      for (const auto& inc : forest.neighbors(v)) {
        if (rf.parent[inc.to] != kNoVertex) continue;
        rf.parent[inc.to] = v;
        rf.level[inc.to] = rf.level[v] + 1;
        rf.component_id[inc.to] = root;
        rf.parent_key[inc.to] = forest.edge_at(inc.edge).key();
        rf.order.push_back(inc.to);
      }
    }
  }
  if (forest.m() + components != n) {
    throw NotAForest("graph with " + std::to_string(n) + " vertices, " + std::to_string(forest.m()) +
                     " edges and " + std::to_string(components) + " components has a cycle");
  }
  return rf;
}

namespace {

std::vector<std::vector<VertexId>> children_of(const RootedForest& rf) {
  std::vector<std::vector<VertexId>> children(rf.size());
  for (VertexId v = 0; v < rf.size(); ++v) {
    if (!rf.is_root(v)) children[rf.parent[v]].push_back(v);
  }
  return children;  // ascending because v increases
}

}  // namespace

EulerTour euler_tour(const RootedForest& rf) {
  auto children = children_of(rf);
  EulerTour et;
  et.tour_of.assign(rf.size(), 0);
  et.first.assign(rf.size(), 0);
  std::vector<std::pair<VertexId, size_t>> stack;
  for (VertexId root = 0; root < rf.size(); ++root) {
    if (!rf.is_root(root)) continue;
    auto tour_index = static_cast<uint32_t>(et.tours.size());
    auto& tour = et.tours.emplace_back();
    tour.push_back(root);
    et.tour_of[root] = tour_index;
    et.first[root] = 0;
    stack.assign(1, {root, 0});
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < children[v].size()) {
        VertexId c = children[v][next++];
        et.tour_of[c] = tour_index;
        et.first[c] = static_cast<uint32_t>(tour.size());
        tour.push_back(c);
        stack.emplace_back(c, 0);
      } else {
        stack.pop_back();
        if (!stack.empty()) tour.push_back(stack.back().first);
      }
    }
  }
  return et;
}

LcaIndex::LcaIndex(const RootedForest& rf, const EulerTour& tour) : rf_(&rf), tour_(&tour) {
  rmq_.reserve(tour.tours.size());
  for (const auto& t : tour.tours) {
    std::vector<int64_t> levels(t.size());
    for (size_t i = 0; i < t.size(); ++i) levels[i] = rf.level[t[i]];
    rmq_.emplace_back(std::move(levels), RmqMode::kMin);
  }
}

VertexId LcaIndex::lca(VertexId u, VertexId w) const {
  if (rf_->component_id[u] != rf_->component_id[w]) {
    throw DifferentComponents("vertices " + std::to_string(u) + " and " + std::to_string(w) +
                              " lie in different trees");
  }
  uint32_t t = tour_->tour_of[u];
  size_t i = tour_->first[u], j = tour_->first[w];
  if (i > j) std::swap(i, j);
  return tour_->tours[t][rmq_[t].query(i, j)];
}

HeavyLightDecomposition build_hld(const RootedForest& rf) {
  size_t n = rf.size();
  std::vector<uint32_t> subtree(n, 1);
  for (auto it = rf.order.rbegin(); it != rf.order.rend(); ++it) {
    if (!rf.is_root(*it)) subtree[rf.parent[*it]] += subtree[*it];
  }
  HeavyLightDecomposition hld;
  hld.heavy_child.assign(n, kNoVertex);
  for (VertexId v = 0; v < n; ++v) {
    if (rf.is_root(v)) continue;
    VertexId p = rf.parent[v];
    VertexId& h = hld.heavy_child[p];
    // v ascends, so ties keep the smaller id.
    if (h == kNoVertex || subtree[v] > subtree[h]) h = v;
  }
  hld.path_id.assign(n, 0);
  hld.path_position.assign(n, 0);
  for (VertexId v : rf.order) {
    if (!rf.is_root(v) && hld.heavy_child[rf.parent[v]] == v) continue;
    auto id = static_cast<uint32_t>(hld.path_head.size());
    hld.path_head.push_back(v);
    std::vector<EdgeKey> keys;
    for (VertexId x = v; x != kNoVertex; x = hld.heavy_child[x]) {
      hld.path_id[x] = id;
      hld.path_position[x] = static_cast<uint32_t>(keys.size());
      keys.push_back(x == v ? EdgeKey::neutral() : rf.parent_key[x]);
    }
    hld.path_max.emplace_back(std::move(keys), RmqMode::kMax);
  }
  return hld;
}

EdgeKey heavy_segment_max(const HeavyLightDecomposition& hld, VertexId p, VertexId a) {
  uint32_t lo = hld.path_position[a], hi = hld.path_position[p];
  if (hi <= lo) return EdgeKey::neutral();
  const auto& table = hld.path_max[hld.path_id[p]];
  return table.value(table.query(lo + 1, hi));
}

PivotTable build_pivots(const RootedForest& rf, const HeavyLightDecomposition& hld) {
  PivotTable pt;
  pt.pivots.resize(rf.size());
  for (VertexId v : rf.order) {
    auto& list = pt.pivots[v];
    list.push_back(Pivot{v, EdgeKey::neutral()});
    VertexId head = hld.path_head[hld.path_id[v]];
    EdgeKey up = heavy_segment_max(hld, v, head);
    if (head != v) list.push_back(Pivot{head, up});
    if (rf.is_root(head)) continue;
    VertexId above = rf.parent[head];
    EdgeKey through = std::max(up, rf.parent_key[head]);
    for (const Pivot& p : pt.pivots[above]) {
      list.push_back(Pivot{p.vertex, std::max(through, p.max_key)});
    }
  }
  return pt;
}

TreePathIndex::TreePathIndex(const Graph& forest)
    : rf_(root_forest(forest)),
      tour_(euler_tour(rf_)),
      lca_(rf_, tour_),
      hld_(build_hld(rf_)),
      pivots_(build_pivots(rf_, hld_)) {}

EdgeKey TreePathIndex::path_max(VertexId u, VertexId a) const {
  if (rf_.component_id[u] != rf_.component_id[a] || lca_.lca(u, a) != a) {
    throw NotAncestor(std::to_string(a) + " is not an ancestor of " + std::to_string(u));
  }
  if (u == a) return EdgeKey::neutral();
  const auto& list = pivots_.pivots[u];
  size_t k = 0;
  while (k + 1 < list.size() && rf_.level[list[k + 1].vertex] >= rf_.level[a]) ++k;
  const Pivot& p = list[k];
  return std::max(p.max_key, heavy_segment_max(hld_, p.vertex, a));
}

EdgeKey TreePathIndex::max_on_path(VertexId u, VertexId w) const {
  VertexId l = lca_.lca(u, w);
  return std::max(path_max(u, l), path_max(w, l));
}

}  // namespace ampc
