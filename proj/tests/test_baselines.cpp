#include <algorithm>
#include <cmath>
#include <numeric>

#include "ampc/baselines.hpp"
#include "ampc/oracles.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace ampc;
using testing::make_graph;
using testing::runtime_for;

namespace {

uint64_t vertex_seed_for(const std::vector<VertexId>& order) {
  for (uint64_t s = 0;; ++s) {
    VertexRank r(s);
    bool ok = true;
    for (size_t i = 1; i < order.size(); ++i) ok = ok && r.less(order[i - 1], order[i]);
    if (ok) return s;
  }
}

// Random coloring can stall a Boruvka phase, so only rootset logs are strict.
void check_phase_log(const PhaseLog& log, bool strict = true) {
  for (size_t i = 1; i < log.size(); ++i) {
    if (strict) {
      CHECK(log[i].live_vertices < log[i - 1].live_vertices);
    } else {
      CHECK(log[i].live_vertices <= log[i - 1].live_vertices);
    }
    CHECK(log[i].phase == log[i - 1].phase + 1);
  }
}

// Disjoint cycles with the given lengths, vertex ids consecutive.
Graph cycles(const std::vector<VertexId>& lengths) {
  std::vector<Edge> edges;
  VertexId base = 0;
  for (VertexId len : lengths) {
    for (VertexId i = 0; i < len; ++i) {
      edges.push_back(Edge{base + i, base + (i + 1) % len, 0, static_cast<EdgeId>(edges.size()), false});
    }
    base += len;
  }
  return Graph(base, std::move(edges), false);
}

}  // namespace

TEST_CASE("rootset mis examples") {
  Graph path = make_graph(3, {{0, 1}, {1, 2}});
  auto rt = runtime_for(path);
  auto res = mpc_mis_rootset(*rt, path, VertexRank(vertex_seed_for({0, 1, 2})));
  CHECK(res.in_set == std::vector<char>{1, 0, 1});
  CHECK(res.phases.size() == 1);

  Graph edgeless(5, std::vector<Edge>{}, false);
  auto rt2 = runtime_for(edgeless);
  auto all = mpc_mis_rootset(*rt2, edgeless, VertexRank(3));
  CHECK(all.in_set == std::vector<char>(5, 1));
  CHECK(all.phases.size() == 1);
  CHECK(rt2->metrics().bytes_kv == 0);
}

TEST_CASE("rootset mis equals the greedy oracle, with and without a local finish") {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = generate_random(300, 1500 + 100 * seed, seed);
    VertexRank r(seed);
    auto expect = greedy_mis(g, r);
    for (uint64_t threshold : {0u, 200u, 100000u}) {
      auto rt = runtime_for(g);
      auto res = mpc_mis_rootset(*rt, g, r, threshold);
      CHECK(res.in_set == expect);
      check_phase_log(res.phases);
      uint64_t shuffles = 0;
      for (const auto& p : res.phases) shuffles += p.shuffles;
      CHECK(rt->metrics().shuffles == shuffles);
      CHECK(rt->metrics().bytes_kv == 0);
    }
  }
}

TEST_CASE("rootset mm examples and equality with the greedy oracle") {
  std::vector<Edge> edges;
  for (VertexId i = 0; i < 20; ++i) edges.push_back(Edge{2 * i, 2 * i + 1, 0, i, false});
  Graph disjoint(40, std::move(edges), false);
  auto rt = runtime_for(disjoint);
  auto res = mpc_mm_rootset(*rt, disjoint, EdgeRank(1));
  CHECK(res.matching.edges.size() == 20);
  CHECK(res.phases.size() == 1);
  CHECK(rt->metrics().shuffles == 2);

  for (uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = generate_random(300, 2000, seed + 20);
    EdgeRank r(seed);
    auto expect = greedy_matching(g, r);
    for (uint64_t threshold : {0u, 300u}) {
      auto rt2 = runtime_for(g);
      auto out = mpc_mm_rootset(*rt2, g, r, threshold);
      CHECK(out.matching.edges == expect);
      check_phase_log(out.phases);
      uint64_t finish = threshold ? 1 : 0;
      CHECK(rt2->metrics().shuffles == 2 * out.phases.size());
      CHECK(rt2->metrics().rounds == 2 * out.phases.size() + finish);
      CHECK(rt2->metrics().bytes_kv == 0);
      for (EdgeId id : out.matching.edges) {
        for (const Edge& e : g.edges()) {
          if (e.id == id) CHECK(out.matching.mate[e.u] == e.v);
        }
      }
    }
  }
}

TEST_CASE("rootset phase counts stay logarithmic") {
  for (uint64_t seed = 0; seed < 3; ++seed) {
    Graph g = generate_random(10000, 100000, seed);
    double bound = 4 * std::log2(10000.0);
    auto rt = runtime_for(g);
    CHECK(static_cast<double>(mpc_mis_rootset(*rt, g, VertexRank(seed)).phases.size()) <= bound);
    auto rt2 = runtime_for(g);
    CHECK(static_cast<double>(mpc_mm_rootset(*rt2, g, EdgeRank(seed)).phases.size()) <= bound);
  }
}

TEST_CASE("boruvka examples") {
  Graph tree = generate_random_tree(200, 4);
  Graph wtree = random_weights(tree, 50, 4);
  for (uint64_t seed = 0; seed < 4; ++seed) {
    auto rt = runtime_for(wtree);
    CHECK(mpc_msf_boruvka(*rt, wtree, 0, seed).msf.edges.size() == wtree.m());
  }

  Graph square = make_graph(4, {{0, 1, 1}, {1, 2, 2}, {2, 3, 3}, {3, 0, 4}});
  auto rt = runtime_for(square);
  auto res = mpc_msf_boruvka(*rt, square, 0, 1);
  CHECK(res.msf.edges == std::vector<EdgeId>{0, 1, 2});
  CHECK(res.msf.total_weight == 6);
  for (const auto& p : res.phases) CHECK(p.shuffles == 3);
  CHECK(rt->metrics().shuffles == 3 * res.phases.size());
  CHECK(rt->metrics().bytes_kv == 0);
}

TEST_CASE("boruvka equals kruskal and labels components") {
  for (uint64_t seed = 0; seed < 12; ++seed) {
    Graph g = random_weights(generate_random(500, 1200 + 200 * seed, seed), seed % 2 ? 5 : 1000, seed);
    auto expect = kruskal(g);
    for (uint64_t threshold : {0u, 400u}) {
      auto rt = runtime_for(g);
      auto res = mpc_msf_boruvka(*rt, g, threshold, seed);
      CHECK(res.msf.edges == expect);
      CHECK(res.msf.components == component_labels(g));
      check_phase_log(res.phases, false);
    }
  }
}

TEST_CASE("boruvka shrinks the vertex count by a constant factor per phase") {
  double sum = 0;
  size_t count = 0;
  for (uint64_t seed = 0; seed < 5; ++seed) {
    Graph g = random_weights(generate_random(10000, 100000, seed), 1000000, seed);
    auto rt = runtime_for(g);
    auto res = mpc_msf_boruvka(*rt, g, 0, seed);
    for (size_t i = 1; i < res.phases.size(); ++i) {
      sum += static_cast<double>(res.phases[i - 1].live_vertices) / static_cast<double>(res.phases[i].live_vertices);
      ++count;
    }
  }
  CHECK(sum / static_cast<double>(count) >= 1.15);
}

TEST_CASE("cycle connectivity baseline") {
  auto rt = runtime_for(generate_two_cycles(1000));
  CHECK(mpc_cycle_cc(*rt, generate_two_cycles(1000), 1).components == 2);
  CHECK(rt->metrics().bytes_kv == 0);

  Graph single = cycles({1000});
  auto rt2 = runtime_for(single);
  CHECK(mpc_cycle_cc(*rt2, single, 2).components == 1);

  for (uint64_t seed = 0; seed < 20; ++seed) {
    std::vector<VertexId> lengths;
    for (uint64_t i = 0; i <= seed % 5; ++i) lengths.push_back(3 + static_cast<VertexId>(hash3(seed, i, 9) % 500));
    Graph g = cycles(lengths);
    auto rt3 = runtime_for(g);
    CHECK(mpc_cycle_cc(*rt3, g, seed).components == lengths.size());
  }

  Graph path = generate_path(5);
  auto rt4 = runtime_for(path);
  CHECK_THROWS_AS(mpc_cycle_cc(*rt4, path, 0), NotACycleGraph);
}

TEST_CASE("cycle contraction shrinks long cycles by a moderate factor") {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    Graph g = generate_two_cycles(100000);
    auto rt = runtime_for(g);
    auto res = mpc_cycle_cc(*rt, g, seed);
    CHECK(res.components == 2);
    double mean = std::accumulate(res.shrink.begin(), res.shrink.end(), 0.0) / static_cast<double>(res.shrink.size());
    CHECK(mean >= 1.5);
    CHECK(mean <= 4.0);
  }
}
