#include <doctest.h>

#include <algorithm>
#include <set>

#include "ampc/contract.hpp"
#include "ampc/msf.hpp"
#include "ampc/oracles.hpp"
#include "ampc/tree.hpp"
#include "support.hpp"

using namespace ampc;
using testing::make_graph;
using testing::runtime_for;

namespace {

MsfOptions boruvka_everywhere(uint64_t seed = 0) {
  MsfOptions opt;
  opt.seed = seed;
  opt.small_threshold = 0;
  return opt;
}

std::vector<EdgeId> all_ids(const Graph& g) {
  std::vector<EdgeId> ids;
  for (const Edge& e : g.edges()) ids.push_back(e.id);
  return ids;
}

Graph random_forest(VertexId n, uint64_t m, uint64_t seed) {
  Graph g = generate_random(n, m, seed);
  std::vector<EdgeId> keep;
  DisjointSets ds(n);
  for (const Edge& e : g.edges()) {
    if (ds.unite(e.u, e.v)) keep.push_back(e.id);
  }
  return edge_subgraph(g, keep);
}

}  // namespace

TEST_CASE("pointer jumping") {
  std::vector<VertexId> chain{0, 0, 1, 2, 3, 4, 5, 6};
  auto rt = runtime_for(generate_path(8));
  size_t rounds = 0;
  CHECK(pointer_jump(*rt, chain, &rounds) == ContractionMap(8, 0));
  CHECK(rounds <= 4);

  std::vector<VertexId> roots{0, 1, 2, 3};
  CHECK(pointer_jump(*rt, roots, &rounds) == roots);
  CHECK(rounds == 1);

  std::vector<VertexId> star{0, 0, 0, 0, 0};
  CHECK(pointer_jump(*rt, star, &rounds) == star);
  CHECK(rounds == 1);

  std::vector<VertexId> cycle{1, 2, 0};
  CHECK_THROWS_AS(pointer_jump(*rt, cycle), CycleDetected);
}

TEST_CASE("pointer jumping on random forests matches a sequential walk") {
  for (uint64_t seed = 1; seed <= 4; ++seed) {
    Graph tree = generate_random_tree(500, seed);
    RootedForest rf = root_forest(tree);
    auto rt = runtime_for(tree);
    size_t rounds = 0;
    ContractionMap got = pointer_jump(*rt, rf.parent, &rounds);
    CHECK(got == ContractionMap(500, rf.component_id[0]));
    CHECK(rounds <= 11);
    CHECK(chase_roots(*rt, publish_parents(*rt, rf.parent), 500) == got);
  }
}

TEST_CASE("shuffle contraction matches in-memory contraction") {
  Graph g = random_weights(generate_random(200, 800, 4), 30, 4);
  ContractionMap c(g.n());
  for (VertexId v = 0; v < g.n(); ++v) c[v] = v % 37;
  auto rt = runtime_for(g);
  uint64_t before = rt->metrics().shuffles;
  ContractedGraph a = shuffle_contract(*rt, g, c, true);
  CHECK(rt->metrics().shuffles - before == 2);
  ContractedGraph b = contract_graph(g, c, true);
  REQUIRE(a.graph.m() == b.graph.m());
  for (uint32_t i = 0; i < a.graph.m(); ++i) {
    CHECK(a.graph.edge_at(i).id == b.graph.edge_at(i).id);
    CHECK(a.graph.edge_at(i).w == b.graph.edge_at(i).w);
  }
  CHECK(a.vertex_of == b.vertex_of);
}

TEST_CASE("truncated prim on a three-vertex path") {
  uint64_t seed = 0;
  while (!(VertexRank(seed).less(1, 0) && VertexRank(seed).less(0, 2))) ++seed;
  Graph path = make_graph(3, {{0, 1, 4}, {1, 2, 6}});
  MsfOptions opt;
  opt.eps = 2.0;
  opt.record_searches = true;
  auto rt = runtime_for(path);
  TruncatedPrimResult r = truncated_prim(*rt, path, VertexRank(seed), opt);
  REQUIRE(r.threshold >= 3);
  CHECK(r.searches[1].stop == StopReason::kComponentDone);
  CHECK(r.searches[1].discovered == std::vector<EdgeId>{0, 1});
  CHECK(r.searches[0].stop == StopReason::kHitLowerRank);
  CHECK(r.searches[0].lower == 1);
  CHECK(r.searches[2].stop == StopReason::kHitLowerRank);
  CHECK(r.searches[2].lower == 1);
  CHECK(r.contracted.graph.n() == 0);
  CHECK(r.msf_edges == std::vector<EdgeId>{0, 1});
}

TEST_CASE("truncated prim edge cases") {
  Graph one = make_graph(1, std::initializer_list<std::tuple<VertexId, VertexId, Weight>>{});
  MsfOptions opt;
  opt.record_searches = true;
  auto rt = runtime_for(one);
  TruncatedPrimResult r = truncated_prim(*rt, one, VertexRank(1), opt);
  CHECK(r.searches[0].stop == StopReason::kComponentDone);
  CHECK(r.searches[0].discovered.empty());

  CHECK_THROWS_AS(truncated_prim(*rt, degree_weights(generate_star(5)), VertexRank(1), opt), InvalidSize);
}

TEST_CASE("truncated prim on a cycle with a tiny threshold") {
  Graph cycle = degree_weights(generate_cycle_union({400}, 0));
  MsfOptions opt;
  opt.eps = 0.01;
  opt.record_searches = true;
  auto rt = runtime_for(cycle, opt.eps);
  TruncatedPrimResult r = truncated_prim(*rt, cycle, VertexRank(3), opt);
  for (const auto& s : r.searches) {
    CHECK(s.visited.size() <= r.threshold);
    CHECK(s.stop != StopReason::kComponentDone);
  }
  CHECK(r.contracted.graph.n() > 0);
  CHECK(r.contracted.graph.n() <= 3.0 * 400 / std::pow(400.0, opt.eps / 2));
}

TEST_CASE("truncated prim finds only MSF edges") {
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    Graph g = random_weights(generate_random(300, 1200, seed), 100, seed);
    Graph t = ternarize(g).base;
    auto oracle = kruskal(t);
    std::set<EdgeId> msf_set(oracle.begin(), oracle.end());
    auto rt = runtime_for(t);
    TruncatedPrimResult r = truncated_prim(*rt, t, VertexRank(seed), MsfOptions{});
    for (EdgeId id : r.msf_edges) CHECK(msf_set.count(id) == 1);
    CHECK(r.contracted.graph.n() < t.n());
  }
}

TEST_CASE("msf small examples") {
  Graph sq = make_graph(4, {{0, 1, 1}, {1, 2, 2}, {2, 3, 3}, {3, 0, 4}});
  auto rt = runtime_for(sq);
  MsfResult r = msf(*rt, sq, MsfOptions{});
  CHECK(r.edges == std::vector<EdgeId>{0, 1, 2});
  CHECK(r.total_weight == 6);

  Graph tree = random_weights(generate_random_tree(300, 2), 9, 2);
  auto rt2 = runtime_for(tree);
  CHECK(msf(*rt2, tree, MsfOptions{}).edges == all_ids(tree));

  for (VertexId k : {3u, 10u, 200u}) {
    Graph two = degree_weights(generate_two_cycles(k));
    auto rt3 = runtime_for(two);
    MsfResult t = msf(*rt3, two, MsfOptions{});
    CHECK(t.edges.size() == 2 * k - 2);
    CHECK(std::set<VertexId>(t.components.begin(), t.components.end()).size() == 2);
    CHECK(t.edges == kruskal(two));
  }
}

TEST_CASE("msf equals kruskal on random graphs") {
  for (uint64_t seed = 1; seed <= 6; ++seed) {
    VertexId n = 200 + 150 * static_cast<VertexId>(seed);
    Graph g = random_weights(generate_random(n, 4 * n, seed), 50, seed);
    for (double eps : {0.3, 0.5, 0.8}) {
      MsfOptions opt = boruvka_everywhere(seed);
      opt.eps = eps;
      auto rt = runtime_for(g, eps, seed);
      MsfResult r = msf(*rt, g, opt);
      CHECK(r.edges == kruskal(g));
      CHECK(r.components == component_labels(g));
    }
  }
}

TEST_CASE("msf handles disconnected graphs and isolated vertices") {
  Graph g = random_weights(generate_random(500, 300, 8), 20, 8);
  auto rt = runtime_for(g);
  MsfResult r = msf(*rt, g, boruvka_everywhere());
  CHECK(r.edges == kruskal(g));
  CHECK(r.components == component_labels(g));
}

TEST_CASE("msf is deterministic") {
  Graph g = random_weights(generate_random(800, 3000, 3), 40, 3);
  auto a = runtime_for(g, 0.5, 7);
  auto b = runtime_for(g, 0.5, 7);
  MsfResult ra = msf(*a, g, boruvka_everywhere(7));
  MsfResult rb = msf(*b, g, boruvka_everywhere(7));
  CHECK(ra.edges == rb.edges);
  CHECK(a->metrics() == b->metrics());
}

TEST_CASE("dense msf") {
  Graph k4 = make_graph(4, {{0, 1, 6}, {0, 2, 2}, {0, 3, 5}, {1, 2, 1}, {1, 3, 4}, {2, 3, 3}});
  auto rt = runtime_for(k4);
  CHECK(dense_msf(*rt, k4, boruvka_everywhere()).edges == kruskal(k4));

  Graph single = make_graph(2, {{0, 1, 3}});
  CHECK(dense_msf(*rt, single, boruvka_everywhere()).edges == std::vector<EdgeId>{0});

  Graph split = make_graph(6, {{0, 1, 1}, {1, 2, 2}, {0, 2, 3}, {3, 4, 1}, {4, 5, 1}, {3, 5, 9}});
  MsfResult r = dense_msf(*rt, split, boruvka_everywhere());
  CHECK(r.edges == kruskal(split));
  CHECK(r.components == std::vector<VertexId>{0, 0, 0, 3, 3, 3});

  Graph big = random_weights(generate_random(1500, 20000, 5), 1000, 5);
  auto rt2 = runtime_for(big);
  MsfResult rb = dense_msf(*rt2, big, boruvka_everywhere());
  CHECK(rb.edges == kruskal(big));
  CHECK(rb.components == component_labels(big));
}

TEST_CASE("find light edges small cases") {
  Graph g = make_graph(3, {{0, 1, 1}, {1, 2, 5}, {0, 2, 3}});
  auto rt = runtime_for(g);
  auto labels = find_light_edges(*rt, g, {0, 1});
  CHECK(labels[0].kind == FlightKind::kLight);
  CHECK(labels[1].kind == FlightKind::kLight);
  CHECK(labels[2].kind == FlightKind::kLight);
  CHECK(labels[2].threshold.weight == 5);

  Graph h = make_graph(3, {{0, 1, 1}, {1, 2, 5}, {0, 2, 6}});
  CHECK(find_light_edges(*rt, h, {0, 1})[2].kind == FlightKind::kHeavy);

  Graph cross = make_graph(4, {{0, 1, 1}, {2, 3, 1}, {1, 2, 7}});
  CHECK(find_light_edges(*rt, cross, {0, 1})[2].kind == FlightKind::kCrossComponent);

  CHECK_THROWS_AS(find_light_edges(*rt, g, {0, 1, 2}), NotAForest);
}

TEST_CASE("find light edges agrees with brute-force path maxima") {
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    Graph g = random_weights(generate_random(300, 1500, seed), 100, seed);
    // A sample-based forest, not the MSF, so heavy and light both occur.
    std::vector<EdgeId> sample;
    for (const Edge& e : g.edges()) {
      if (e.id % 3 == 0) sample.push_back(e.id);
    }
    Graph forest = edge_subgraph(g, kruskal(edge_subgraph(g, sample)));
    std::vector<EdgeId> f_ids = all_ids(forest);
    auto rt = runtime_for(g);
    auto labels = find_light_edges(*rt, g, f_ids);
    size_t heavy = 0;
    for (uint32_t i = 0; i < g.m(); ++i) {
      const Edge& e = g.edge_at(i);
      bool connected = false;
      testing::forest_path(forest, e.u, e.v, &connected);
      if (!connected) {
        CHECK(labels[i].kind == FlightKind::kCrossComponent);
        continue;
      }
      EdgeKey t = testing::brute_path_max(forest, e.u, e.v);
      CHECK(labels[i].threshold == t);
      CHECK((labels[i].kind == FlightKind::kHeavy) == (e.key() > t));
      heavy += labels[i].kind == FlightKind::kHeavy;
    }
    CHECK(heavy > 0);
  }
}

TEST_CASE("kkt msf") {
  Graph small = random_weights(generate_random(3, 3, 1), 10, 1);
  MsfOptions opt;
  opt.kkt_p = 1.0;
  auto rt = runtime_for(small);
  KktResult r = kkt_msf(*rt, small, opt);
  CHECK(r.sampled_edges == 3);
  CHECK(r.msf.edges == kruskal(small));

  Graph g = random_weights(generate_random(1000, 5000, 2), 1000, 2);
  auto rt2 = runtime_for(g);
  KktResult k = kkt_msf(*rt2, g, boruvka_everywhere(2));
  CHECK(k.msf.total_weight == testing::weight_of(g, kruskal(g)));
  CHECK(k.msf.edges == kruskal(g));

  // Expected light edges are at most n / p; on a dense input that is well below m.
  Graph dense = random_weights(generate_random(1000, 50000, 3), 100000, 3);
  auto rt3 = runtime_for(dense);
  KktResult d = kkt_msf(*rt3, dense, boruvka_everywhere(3));
  CHECK(d.msf.edges == kruskal(dense));
  CHECK(static_cast<double>(d.light_edges) <= 2 * dense.n() / d.p);
  CHECK(d.light_edges < dense.m() / 2);
}

TEST_CASE("forest connectivity") {
  Graph two = make_graph(4, {{0, 1}, {2, 3}});
  auto rt = runtime_for(two);
  CHECK(forest_connectivity(*rt, two, MsfOptions{}) == ContractionMap{0, 0, 2, 2});

  Graph path = generate_path(10000);
  auto rt2 = runtime_for(path);
  ContractionMap labels = forest_connectivity(*rt2, path, MsfOptions{});
  CHECK(labels == ContractionMap(10000, 0));

  CHECK_THROWS_AS(forest_connectivity(*rt, make_graph(3, {{0, 1}, {1, 2}, {2, 0}}), MsfOptions{}),
                  NotAForest);
}

TEST_CASE("forest connectivity on random forests") {
  for (uint64_t seed = 1; seed <= 6; ++seed) {
    Graph f = random_forest(3000, 2500 + 100 * seed, seed);
    for (double eps : {0.3, 0.5, 1.0}) {
      MsfOptions opt;
      opt.eps = eps;
      opt.seed = seed;
      auto rt = runtime_for(f, eps, seed);
      CHECK(forest_connectivity(*rt, f, opt) == component_labels(f));
    }
  }
}

TEST_CASE("msf empirical") {
  Graph tree = degree_weights(generate_random_tree(2000, 4));
  auto rt = runtime_for(tree);
  MsfResult t = msf_empirical(*rt, tree, boruvka_everywhere());
  CHECK(t.edges == all_ids(tree));

  Graph g = degree_weights(generate_random(3000, 20000, 6));
  auto rt2 = runtime_for(g);
  MsfResult r = msf_empirical(*rt2, g, MsfOptions{});
  CHECK(r.total_weight == testing::weight_of(g, kruskal(g)));
  CHECK(r.edges == kruskal(g));
  CHECK(r.components == component_labels(g));
  CHECK(rt2->metrics().shuffles == 5);
}

TEST_CASE("msf empirical with several passes") {
  for (uint64_t seed = 1; seed <= 4; ++seed) {
    Graph g = random_weights(generate_random(2000, 12000, seed), 500, seed);
    auto rt = runtime_for(g, 0.5, seed);
    MsfResult r = msf_empirical(*rt, g, boruvka_everywhere(seed));
    CHECK(r.edges == kruskal(g));
    CHECK(r.components == component_labels(g));
    CHECK(rt->metrics().shuffles % 5 == 0);
  }
}

TEST_CASE("connectivity") {
  Graph two = generate_two_cycles(500);
  auto rt = runtime_for(two);
  auto labels = connectivity(*rt, two, MsfOptions{});
  CHECK(std::set<VertexId>(labels.begin(), labels.end()).size() == 2);

  Graph g = generate_random(2000, 20000, 3);
  REQUIRE(component_count(g) == 1);
  auto rt2 = runtime_for(g);
  CHECK(connectivity(*rt2, g, MsfOptions{}) == ContractionMap(2000, 0));

  Graph empty = generate_random(50, 0, 1);
  auto rt3 = runtime_for(empty);
  auto iso = connectivity(*rt3, empty, MsfOptions{});
  for (VertexId v = 0; v < 50; ++v) CHECK(iso[v] == v);

  Graph sparse = generate_random(3000, 2000, 9);
  auto rt4 = runtime_for(sparse);
  CHECK(connectivity(*rt4, sparse, boruvka_everywhere()) == component_labels(sparse));
}
