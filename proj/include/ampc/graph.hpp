#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ampc/hashing.hpp"

namespace ampc {

using VertexId = uint32_t;
using EdgeId = uint32_t;
using Weight = int64_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

/*
 * Total order used by every MSF routine: dummy (ternarization) edges sort
 * before all real edges, then by weight, then by edge id.
 */
struct EdgeKey {
  bool real = false;
  Weight weight = std::numeric_limits<Weight>::min();
  EdgeId id = 0;

  auto operator<=>(const EdgeKey&) const = default;

  // Identity element of max(); below every edge key.
  static constexpr EdgeKey neutral() { return EdgeKey{}; }
};

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  Weight w = 0;
  EdgeId id = 0;
  bool dummy = false;

  EdgeKey key() const { return EdgeKey{!dummy, w, id}; }
  VertexId other(VertexId x) const { return x == u ? v : u; }
};

struct Incidence {
  VertexId to;
  uint32_t edge;  // index into Graph::edges()
};

// Immutable simple undirected graph.
class Graph {
 public:
  Graph() = default;
  // Throws InvalidSize on self-loops, duplicate pairs, out-of-range endpoints
  // or duplicate edge ids.
  Graph(VertexId n, std::vector<Edge> edges, bool weighted);

  VertexId n() const { return n_; }
  size_t m() const { return edges_.size(); }
  bool weighted() const { return weighted_; }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge_at(uint32_t index) const { return edges_[index]; }
  std::span<const Incidence> neighbors(VertexId v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
  size_t max_degree() const { return max_degree_; }
  EdgeId max_edge_id() const { return max_edge_id_; }  // kNoEdge when empty

 private:
  VertexId n_ = 0;
  bool weighted_ = false;
  std::vector<Edge> edges_;
  std::vector<size_t> offsets_{0};
  std::vector<Incidence> adj_;
  size_t max_degree_ = 0;
  EdgeId max_edge_id_ = kNoEdge;
};

// Per-vertex label; a vertex maps to its representative.
using ContractionMap = std::vector<VertexId>;

// Deterministic 64-bit ranks; compared as (rank, id).
class VertexRank {
 public:
  explicit VertexRank(uint64_t seed = 0) : seed_(seed) {}
  uint64_t operator()(VertexId v) const { return hash_combine(seed_ ^ 0x5652414e4bULL, v); }
  bool less(VertexId a, VertexId b) const {
    uint64_t ra = (*this)(a), rb = (*this)(b);
    return ra != rb ? ra < rb : a < b;
  }
  uint64_t seed() const { return seed_; }

 private:
  uint64_t seed_;
};

class EdgeRank {
 public:
  explicit EdgeRank(uint64_t seed = 0) : seed_(seed) {}
  uint64_t operator()(EdgeId e) const { return hash_combine(seed_ ^ 0x4552414e4bULL, e); }
  bool less(EdgeId a, EdgeId b) const {
    uint64_t ra = (*this)(a), rb = (*this)(b);
    return ra != rb ? ra < rb : a < b;
  }
  // rank / 2^64, in [0, 1)
  double normalized(EdgeId e) const { return static_cast<double>((*this)(e)) / 18446744073709551616.0; }
  uint64_t seed() const { return seed_; }

 private:
  uint64_t seed_;
};

struct TernarizedGraph {
  Graph base;
  std::vector<VertexId> origin;  // new vertex -> original vertex
};

struct ContractedGraph {
  Graph graph;
  std::vector<VertexId> vertex_of;  // original vertex -> new vertex, kNoVertex if dropped
  std::vector<VertexId> rep_of;     // new vertex -> representative in the original labels
};

// Generators. Edge ids are 0..m-1.
Graph generate_two_cycles(VertexId k);
Graph generate_cycle_union(const std::vector<VertexId>& lengths, uint64_t seed);
Graph generate_random(VertexId n, uint64_t m, uint64_t seed);
Graph generate_path(VertexId n);
Graph generate_random_tree(VertexId n, uint64_t seed);
Graph generate_star(VertexId n);
Graph generate_grid(VertexId rows, VertexId cols);

// Uniform random weights in [1, max_weight].
Graph random_weights(const Graph& g, Weight max_weight, uint64_t seed);
// w(u, v) = deg(u) + deg(v)
Graph degree_weights(const Graph& g);
// Weight of each edge set to its id (for connectivity on unweighted input).
Graph id_weights(const Graph& g);

TernarizedGraph ternarize(const Graph& g);

ContractedGraph contract_graph(const Graph& g, const ContractionMap& c, bool drop_isolated);
// Builds the contracted graph from edges already relabeled to representatives
// (self-loops and parallel edges allowed; the minimum key survives).
ContractedGraph assemble_contracted(const ContractionMap& c, const std::vector<Edge>& rep_edges,
                                    bool weighted, bool drop_isolated);

// Same vertex set, only edges whose endpoints are both kept.
Graph induced_subgraph(const Graph& g, const std::vector<char>& keep);
// Same vertex set, only the listed edge ids.
Graph edge_subgraph(const Graph& g, const std::vector<EdgeId>& ids);

struct LoadResult {
  Graph graph;
  size_t duplicates = 0;
  size_t self_loops = 0;
  std::vector<uint64_t> original_ids;  // dense id -> id in the file
};

LoadResult load_edge_list(std::istream& in);
LoadResult load_edge_list(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g, const std::vector<EdgeId>& ids);

}  // namespace ampc
