#pragma once

#include <cstdint>
#include <vector>

#include "ampc/graph.hpp"
#include "ampc/matching.hpp"
#include "ampc/msf.hpp"
#include "ampc/runtime.hpp"

namespace ampc {

// MPC-model baselines: shuffles and in-memory rounds only, no DHT lookups.

struct PhaseRecord {
  uint32_t phase = 0;
  uint64_t live_vertices = 0;  // at the start of the phase
  uint64_t live_edges = 0;
  uint64_t shuffles = 0;
};

using PhaseLog = std::vector<PhaseRecord>;

struct MisBaselineResult {
  std::vector<char> in_set;
  PhaseLog phases;
};

struct MatchingBaselineResult {
  MatchingResult matching;
  PhaseLog phases;
};

struct MsfBaselineResult {
  MsfResult msf;
  PhaseLog phases;
};

struct CycleCcResult {
  uint64_t components = 0;
  PhaseLog phases;
  std::vector<double> shrink;  // live vertices before / after, per phase
};

// Rootset MIS: per phase, local rank minima join and leave with their
// neighbors (2 shuffles). Once at most small_threshold edges are live the
// rest is finished greedily on one machine; 0 disables the finish.
MisBaselineResult mpc_mis_rootset(Runtime& rt, const Graph& g, const VertexRank& ranks,
                                  uint64_t small_threshold = 0);

// Rootset MM: an edge joins when it is the minimum-rank live edge at both
// endpoints (2 shuffles per phase).
MatchingBaselineResult mpc_mm_rootset(Runtime& rt, const Graph& g, const EdgeRank& ranks,
                                      uint64_t small_threshold = 0);

// Red/blue Boruvka: each blue vertex hooks along its minimum edge when the
// other end is red, then the stars are contracted (3 shuffles per phase).
MsfBaselineResult mpc_msf_boruvka(Runtime& rt, const Graph& g, uint64_t small_threshold = 0,
                                  uint64_t seed = 0);

// Component count of a union of cycles by red/blue neighbor contraction
// (3 shuffles per phase). Throws NotACycleGraph unless every degree is 2.
CycleCcResult mpc_cycle_cc(Runtime& rt, const Graph& g, uint64_t seed = 0);

}  // namespace ampc
