#pragma once

#include <cstdint>
#include <vector>

#include "ampc/graph.hpp"
#include "ampc/runtime.hpp"

namespace ampc {

enum class MisState : uint8_t { kUnknown, kInMis, kNotInMis };

enum class MmKind : uint8_t { kUnsearched, kHighestFinished, kMatched, kFree };

// Per-vertex matching knowledge. kHighestFinished(neighbor): every incident
// edge up to and including the one to `neighbor` is known to be unmatched.
struct MmCacheEntry {
  MmKind kind = MmKind::kUnsearched;
  VertexId neighbor = kNoVertex;
};

struct MisOptions {
  double eps = 0.5;
  uint64_t budget = 0;          // DHT fetches per query process; 0 selects ceil(n^eps)
  uint32_t max_iterations = 0;  // 0 selects ceil(4 / eps)
};

struct MisResult {
  std::vector<char> in_set;
  uint32_t iterations = 0;     // query rounds
  uint64_t truncated = 0;      // query processes cut by the budget, summed over rounds
};

struct MatchingResult {
  std::vector<EdgeId> edges;   // ascending
  std::vector<VertexId> mate;  // kNoVertex when unmatched
  uint32_t iterations = 0;     // query rounds (vertex-process applications)
  uint64_t truncated = 0;
  std::vector<size_t> max_degrees;  // ampc_mm_loglog: Delta(G_i) per outer iteration
};

struct MisQueryResult {
  MisState state = MisState::kUnknown;  // kUnknown when truncated
  uint64_t fetches = 0;
};

enum class EdgeStatus : uint8_t { kInMm, kNotInMm, kTruncated };

struct EdgeQueryResult {
  EdgeStatus status = EdgeStatus::kTruncated;
  uint64_t fetches = 0;
};

struct VertexQueryResult {
  bool truncated = false;
  VertexId mate = kNoVertex;  // kNoVertex and !truncated means free
  uint64_t fetches = 0;
};

// One shuffle: each vertex's lower-rank neighbors in ascending rank order,
// under Table::kMisGraph.
StoreHandle publish_mis_graph(Runtime& rt, const Graph& g, const VertexRank& ranks);

// One shuffle: each vertex's incident edges in ascending edge rank, under
// Table::kIncidence.
StoreHandle publish_matching_graph(Runtime& rt, const Graph& g, const EdgeRank& ranks);

// Single query processes, each run as one round on one machine.
MisQueryResult mis_query(Runtime& rt, const StoreHandle& graph, VertexId v, uint64_t budget);
EdgeQueryResult edge_query(Runtime& rt, const StoreHandle& graph, const Edge& e,
                           const EdgeRank& ranks, uint64_t budget);
VertexQueryResult vertex_query(Runtime& rt, const StoreHandle& graph, VertexId v, uint64_t budget);

// Lexicographically first MIS under `ranks`. Throws IterationBudgetExceeded.
MisResult ampc_mis(Runtime& rt, const Graph& g, const VertexRank& ranks, const MisOptions& opt);

// Random greedy maximal matching by repeated truncated vertex query processes.
MatchingResult ampc_mm_constant(Runtime& rt, const Graph& g, const EdgeRank& ranks,
                                const MisOptions& opt);

// Rank-filtered iterations with ceil(log2 log2 Delta) + 1 rounds of
// degree reduction.
MatchingResult ampc_mm_loglog(Runtime& rt, const Graph& g, const EdgeRank& ranks,
                              const MisOptions& opt);

// Number of outer iterations k for maximum degree `delta`.
uint32_t loglog_iterations(size_t delta);
// Rank threshold Delta^{-0.5^i} of outer iteration i (1-based).
double loglog_threshold(size_t delta, uint32_t i);

}  // namespace ampc
