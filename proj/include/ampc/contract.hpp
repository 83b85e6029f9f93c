#pragma once

#include <vector>

#include "ampc/graph.hpp"
#include "ampc/runtime.hpp"

namespace ampc {

// Incidence lists under Table::kAdjacency, each list in EdgeKey order.
StoreHandle publish_adjacency(Runtime& rt, const Graph& g);

// Parent pointers stored under Table::kParent; a missing entry marks a root.
StoreHandle publish_parents(Runtime& rt, const std::vector<VertexId>& parent);

/*
 * Doubling rounds: each vertex reads its parent and grandparent and jumps.
 * Stops at the first round with no change. Throws CycleDetected after
 * ceil(log2 n) + 2 rounds without a fixpoint.
 */
ContractionMap pointer_jump(Runtime& rt, const StoreHandle& parents, VertexId n,
                            size_t* jump_rounds = nullptr);
ContractionMap pointer_jump(Runtime& rt, const std::vector<VertexId>& parent,
                            size_t* jump_rounds = nullptr);

// Single round: every vertex follows parent pointers until it reaches a root.
// Throws CycleDetected if a walk exceeds n steps.
ContractionMap chase_roots(Runtime& rt, const StoreHandle& parents, VertexId n);

// Relabels edge endpoints through two shuffles (one per endpoint), then drops
// self-loops and keeps the minimum key among parallel edges.
ContractedGraph shuffle_contract(Runtime& rt, const Graph& g, const ContractionMap& c,
                                 bool drop_isolated);

}  // namespace ampc
