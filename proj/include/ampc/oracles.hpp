#pragma once

#include <numeric>
#include <vector>

#include "ampc/graph.hpp"

namespace ampc {

class DisjointSets {
 public:
  explicit DisjointSets(size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), size_t{0});
  }

  size_t find(size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(size_t a, size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<size_t> parent_;
  std::vector<size_t> size_;
};

// Sequential reference implementations.

// Edge ids of the MSF under the EdgeKey order, ascending by id.
std::vector<EdgeId> kruskal(const Graph& g);

// Label of each vertex = minimum vertex id of its component.
std::vector<VertexId> component_labels(const Graph& g);
size_t component_count(const Graph& g);

// Greedy MIS in increasing rank order.
std::vector<char> greedy_mis(const Graph& g, const VertexRank& rank);
// Greedy maximal matching in increasing edge-rank order; returns edge ids ascending.
std::vector<EdgeId> greedy_matching(const Graph& g, const EdgeRank& rank);

bool is_maximal_independent_set(const Graph& g, const std::vector<char>& in_set);
bool is_maximal_matching(const Graph& g, const std::vector<EdgeId>& matching);

// Relabel arbitrary component labels so each vertex gets its component's min id.
std::vector<VertexId> canonical_labels(const std::vector<VertexId>& labels);
std::vector<VertexId> canonical_labels(const std::vector<uint64_t>& labels);

}  // namespace ampc
