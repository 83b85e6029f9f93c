#pragma once

#include <cstdint>
#include <vector>

#include "ampc/graph.hpp"
#include "ampc/runtime.hpp"

namespace ampc {

struct MsfOptions {
  double eps = 0.5;
  uint64_t seed = 0;
  // Residual graphs with at most max(S, small_threshold) edges are finished
  // on one machine.
  uint64_t small_threshold = 50000;
  // Sampling probability for kkt_msf; 0 selects 1 / max(2, ceil(log2 n)).
  double kkt_p = 0.0;
  // Truncate each Prim search after n^eps queries instead of n^(eps/2)
  // explored vertices.
  bool query_truncation = false;
  // Edges examined per search in msf_empirical; 0 selects ceil(n^eps).
  uint64_t empirical_edge_limit = 0;
  // Keep per-vertex search records in the truncated_prim result.
  bool record_searches = false;
};

enum class StopReason { kExplored, kComponentDone, kHitLowerRank };

struct PrimSearchResult {
  VertexId owner = kNoVertex;
  std::vector<EdgeId> discovered;  // MSF edges found, in Prim order
  StopReason stop = StopReason::kComponentDone;
  VertexId lower = kNoVertex;      // set for kHitLowerRank
  std::vector<VertexId> visited;   // explored vertices, owner first
};

struct TruncatedPrimResult {
  std::vector<EdgeId> msf_edges;     // ascending, deduplicated
  ContractionMap contraction;        // vertex -> root of its F-tree
  ContractedGraph contracted;        // isolated vertices removed
  uint64_t threshold = 0;            // explored-vertex cap per search
  uint64_t queries = 0;              // DHT queries of the search round
  std::vector<PrimSearchResult> searches;  // only with record_searches
};

struct MsfResult {
  std::vector<EdgeId> edges;         // original edge ids, ascending
  Weight total_weight = 0;           // sum over real edges
  std::vector<VertexId> components;  // min vertex id of each component
};

enum class FlightKind { kCrossComponent, kLight, kHeavy };

struct FlightLabel {
  FlightKind kind = FlightKind::kCrossComponent;
  EdgeKey threshold;  // max key on the F-path; meaningless across components
};

struct KktResult {
  MsfResult msf;
  double p = 1.0;
  size_t sampled_edges = 0;
  size_t light_edges = 0;  // Light plus CrossComponent
};

// Requires max degree <= 3 (throws InvalidSize otherwise).
TruncatedPrimResult truncated_prim(Runtime& rt, const Graph& g, const VertexRank& ranks,
                                   const MsfOptions& opt);

MsfResult msf(Runtime& rt, const Graph& g, const MsfOptions& opt);
MsfResult dense_msf(Runtime& rt, const Graph& g, const MsfOptions& opt);
KktResult kkt_msf(Runtime& rt, const Graph& g, const MsfOptions& opt);
MsfResult msf_empirical(Runtime& rt, const Graph& g, const MsfOptions& opt);

// One label per edge of g (indexed like g.edges()); forest_edges are edge
// ids of g forming a forest. Throws NotAForest.
std::vector<FlightLabel> find_light_edges(Runtime& rt, const Graph& g,
                                          const std::vector<EdgeId>& forest_edges);

// Component labels (min vertex id) of a forest.
ContractionMap forest_connectivity(Runtime& rt, const Graph& forest, const MsfOptions& opt);

// Component labels (min vertex id) of any graph.
ContractionMap connectivity(Runtime& rt, const Graph& g, const MsfOptions& opt);

// Builds an MsfResult from chosen edge ids of g.
MsfResult make_msf_result(const Graph& g, std::vector<EdgeId> edges);

}  // namespace ampc
