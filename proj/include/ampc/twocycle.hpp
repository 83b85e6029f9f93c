#pragma once

#include <cstdint>
#include <vector>

#include "ampc/graph.hpp"
#include "ampc/runtime.hpp"

namespace ampc {

struct TwoCycleOptions {
  double sample_prob = 1.0 / 64;
  uint64_t seed = 0;
  // Levels of re-sampling allowed when the sampled graph does not fit on
  // one machine.
  uint32_t max_depth = 3;
  bool record_searches = false;
};

// Walks from one sample in both directions to the nearest samples.
struct SampleSearch {
  VertexId start = kNoVertex;
  VertexId hits[2] = {kNoVertex, kNoVertex};
  uint64_t steps[2] = {0, 0};
};

struct TwoCycleResult {
  uint64_t components = 0;
  uint64_t samples = 0;        // at the top level
  uint64_t longest_walk = 0;   // steps, over all levels
  uint64_t total_steps = 0;    // directed steps at the top level
  uint64_t unsampled_cycles = 0;
  uint32_t depth = 0;          // re-sampling levels used
  std::vector<SampleSearch> searches;  // top level, with record_searches
};

// Component count of a union of cycles. Throws NotACycleGraph unless every
// degree is 2, and ComponentTooLarge when the sampled graph still exceeds one
// machine after max_depth levels.
TwoCycleResult ampc_two_cycle(Runtime& rt, const Graph& g, const TwoCycleOptions& opt);

}  // namespace ampc
