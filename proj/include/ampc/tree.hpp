#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "ampc/errors.hpp"
#include "ampc/graph.hpp"

namespace ampc {

struct RootedForest {
  std::vector<VertexId> parent;        // self for roots
  std::vector<uint32_t> level;         // 0 at the root
  std::vector<VertexId> component_id;  // root id
  std::vector<EdgeKey> parent_key;     // key of the edge to the parent, neutral at roots
  std::vector<VertexId> order;         // vertices by nondecreasing level

  size_t size() const { return parent.size(); }
  bool is_root(VertexId v) const { return parent[v] == v; }
};

// Roots every component at its minimum vertex id. Throws NotAForest.
RootedForest root_forest(const Graph& forest);

enum class RmqMode { kMin, kMax };

/*
 * Sparse table over a fixed array: b[y][x] holds the best index of
 * a[x .. x + 2^y - 1] (clipped at the end). Ties go to the smaller index.
 */
template <typename T>
class SparseTable {
 public:
  SparseTable() = default;
  SparseTable(std::vector<T> a, RmqMode mode) : a_(std::move(a)), mode_(mode) {
    size_t k = a_.size();
    if (k == 0) return;
    size_t levels = static_cast<size_t>(std::bit_width(k));
    b_.resize(levels);
    b_[0].resize(k);
    for (size_t x = 0; x < k; ++x) b_[0][x] = static_cast<uint32_t>(x);
    for (size_t y = 1; y < levels; ++y) {
      b_[y].resize(k);
      size_t half = size_t{1} << (y - 1);
      for (size_t x = 0; x < k; ++x) {
        size_t right = x + half;
        b_[y][x] = right < k ? pick(b_[y - 1][x], b_[y - 1][right]) : b_[y - 1][x];
      }
    }
  }

  size_t size() const { return a_.size(); }
  size_t levels() const { return b_.size(); }
  const T& value(size_t i) const { return a_[i]; }
  uint32_t entry(size_t y, size_t x) const { return b_[y][x]; }

  // Best index of a[i..j], inclusive.
  uint32_t query(size_t i, size_t j) const {
    if (i > j || j >= a_.size()) {
      throw OutOfRange("range [" + std::to_string(i) + ", " + std::to_string(j) + "] on array of " +
                       std::to_string(a_.size()));
    }
    size_t t = static_cast<size_t>(std::bit_width(j - i + 1)) - 1;
    return pick(b_[t][i], b_[t][j + 1 - (size_t{1} << t)]);
  }

  // Combines two candidate indices under the table's order.
  uint32_t pick(uint32_t x, uint32_t y) const {
    const T& ax = a_[x];
    const T& ay = a_[y];
    bool y_better = mode_ == RmqMode::kMin ? ay < ax : ax < ay;
    if (y_better) return y;
    if (!(ax < ay) && !(ay < ax)) return x < y ? x : y;
    return x;
  }

 private:
  std::vector<T> a_;
  RmqMode mode_ = RmqMode::kMin;
  std::vector<std::vector<uint32_t>> b_;
};

using SparseTableRMQ = SparseTable<int64_t>;

struct EulerTour {
  std::vector<std::vector<VertexId>> tours;  // one per component
  std::vector<uint32_t> tour_of;             // vertex -> tour index
  std::vector<uint32_t> first;               // vertex -> first occurrence in its tour
};

// DFS tour per component, children in ascending id order.
EulerTour euler_tour(const RootedForest& rf);

class LcaIndex {
 public:
  LcaIndex() = default;
  LcaIndex(const RootedForest& rf, const EulerTour& tour);

  VertexId lca(VertexId u, VertexId w) const;
  const SparseTableRMQ& table(uint32_t tour) const { return rmq_[tour]; }

 private:
  const RootedForest* rf_ = nullptr;
  const EulerTour* tour_ = nullptr;
  std::vector<SparseTableRMQ> rmq_;  // over levels along each tour
};

struct HeavyLightDecomposition {
  std::vector<VertexId> heavy_child;    // kNoVertex for leaves
  std::vector<uint32_t> path_id;
  std::vector<uint32_t> path_position;  // 0 at the path head
  std::vector<VertexId> path_head;      // per path
  // Per path: entry i is the key of the edge between positions i-1 and i;
  // entry 0 is neutral.
  std::vector<SparseTable<EdgeKey>> path_max;

  bool is_light(const RootedForest& rf, VertexId child) const {
    return !rf.is_root(child) && heavy_child[rf.parent[child]] != child;
  }
};

HeavyLightDecomposition build_hld(const RootedForest& rf);

struct Pivot {
  VertexId vertex;
  EdgeKey max_key;  // max on T[u, vertex]
};

struct PivotTable {
  std::vector<std::vector<Pivot>> pivots;  // per vertex, decreasing level
};

PivotTable build_pivots(const RootedForest& rf, const HeavyLightDecomposition& hld);

// Max edge key on the heavy path segment between `a` and its descendant `p`.
EdgeKey heavy_segment_max(const HeavyLightDecomposition& hld, VertexId p, VertexId a);

/*
 * All tree structures for one forest, answering path-maximum queries.
 * Built once in memory; the AMPC classification round reads the same data
 * through the DHT.
 */
class TreePathIndex {
 public:
  explicit TreePathIndex(const Graph& forest);
  TreePathIndex(const TreePathIndex&) = delete;
  TreePathIndex& operator=(const TreePathIndex&) = delete;

  const RootedForest& forest() const { return rf_; }
  const EulerTour& tour() const { return tour_; }
  const LcaIndex& lca_index() const { return lca_; }
  const HeavyLightDecomposition& hld() const { return hld_; }
  const PivotTable& pivots() const { return pivots_; }

  VertexId lca(VertexId u, VertexId w) const { return lca_.lca(u, w); }
  // Throws NotAncestor unless `a` is an ancestor of `u`.
  EdgeKey path_max(VertexId u, VertexId a) const;
  // Max edge key on the tree path u..w. Throws DifferentComponents.
  EdgeKey max_on_path(VertexId u, VertexId w) const;

 private:
  RootedForest rf_;
  EulerTour tour_;
  LcaIndex lca_;
  HeavyLightDecomposition hld_;
  PivotTable pivots_;
};

}  // namespace ampc
