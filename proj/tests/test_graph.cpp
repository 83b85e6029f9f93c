#include <doctest.h>

#include <set>
#include <sstream>

#include "ampc/oracles.hpp"
#include "support.hpp"

using namespace ampc;
using testing::make_graph;

TEST_CASE("graph construction rejects malformed input") {
  CHECK_THROWS_AS(make_graph(3, {{0, 0}}), InvalidSize);
  CHECK_THROWS_AS(make_graph(3, {{0, 1}, {1, 0}}), InvalidSize);
  CHECK_THROWS_AS(make_graph(2, {{0, 2}}), InvalidSize);
  std::vector<Edge> same_id{{0, 1, 0, 4, false}, {1, 2, 0, 4, false}};
  CHECK_THROWS_AS(Graph(3, same_id, false), InvalidSize);
}

TEST_CASE("weighted adjacency is sorted by edge key") {
  Graph g = make_graph(4, {{0, 1, 9}, {0, 2, 1}, {0, 3, 5}});
  std::vector<VertexId> order;
  for (const auto& inc : g.neighbors(0)) order.push_back(inc.to);
  CHECK(order == std::vector<VertexId>{2, 3, 1});
  CHECK(g.max_degree() == 3);
  CHECK(g.max_edge_id() == 2);
}

TEST_CASE("edge key order puts dummy edges first, then weight, then id") {
  EdgeKey dummy{false, 100, 0};
  EdgeKey light{true, 1, 9};
  EdgeKey tie{true, 1, 10};
  CHECK(dummy < light);
  CHECK(light < tie);
  CHECK(EdgeKey::neutral() < dummy);
}

TEST_CASE("two-cycles generator") {
  Graph g = generate_two_cycles(10);
  CHECK(g.n() == 20);
  CHECK(g.m() == 20);
  CHECK(component_count(g) == 2);
  auto labels = component_labels(g);
  size_t largest = 0;
  for (VertexId c : std::set<VertexId>(labels.begin(), labels.end())) {
    largest = std::max<size_t>(largest, std::count(labels.begin(), labels.end(), c));
  }
  CHECK(largest == 10);

  Graph t = generate_two_cycles(3);
  CHECK(t.n() == 6);
  CHECK(t.m() == 6);
  for (VertexId v = 0; v < 6; ++v) CHECK(t.degree(v) == 2);

  Graph both = generate_cycle_union({3, 3, 3, 3}, 5);
  CHECK(component_count(both) == 4);
  CHECK_THROWS_AS(generate_two_cycles(2), InvalidSize);
}

TEST_CASE("random generator") {
  Graph k4 = generate_random(4, 6, 1);
  CHECK(k4.m() == 6);
  for (VertexId v = 0; v < 4; ++v) CHECK(k4.degree(v) == 3);
  CHECK(generate_random(5, 0, 1).m() == 0);
  CHECK_THROWS_AS(generate_random(4, 7, 1), InvalidSize);

  Graph a = generate_random(300, 2000, 9);
  Graph b = generate_random(300, 2000, 9);
  REQUIRE(a.m() == b.m());
  for (uint32_t i = 0; i < a.m(); ++i) {
    CHECK(a.edge_at(i).u == b.edge_at(i).u);
    CHECK(a.edge_at(i).v == b.edge_at(i).v);
  }
}

TEST_CASE("degree weights") {
  Graph tri = degree_weights(make_graph(3, {{0, 1}, {1, 2}, {0, 2}}));
  for (const Edge& e : tri.edges()) CHECK(e.w == 4);
  Graph star = degree_weights(generate_star(4));
  for (const Edge& e : star.edges()) CHECK(e.w == 4);
  Graph path = degree_weights(generate_path(3));
  for (const Edge& e : path.edges()) CHECK(e.w == 3);
}

TEST_CASE("ternarize") {
  Graph small = degree_weights(generate_star(4));
  TernarizedGraph t = ternarize(small);
  CHECK(t.base.n() == 4);
  CHECK(t.base.m() == 3);

  Graph k14 = degree_weights(generate_star(5));
  TernarizedGraph tk = ternarize(k14);
  CHECK(tk.base.n() == 8);
  CHECK(tk.base.m() == 8);
  CHECK(tk.base.max_degree() == 3);
  size_t dummies = 0;
  for (const Edge& e : tk.base.edges()) dummies += e.dummy;
  CHECK(dummies == 4);

  // The center of degree 99 becomes 99 slots joined in a cycle.
  TernarizedGraph big = ternarize(degree_weights(generate_star(100)));
  CHECK(big.base.n() == 198);
  CHECK(big.base.max_degree() == 3);
  dummies = 0;
  for (const Edge& e : big.base.edges()) dummies += e.dummy;
  CHECK(dummies == 99);
  CHECK(big.base.m() - dummies == 99);
}

TEST_CASE("ternarize preserves the MSF") {
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    Graph g = random_weights(generate_random(60, 400, seed), 20, seed);
    TernarizedGraph t = ternarize(g);
    CHECK(t.base.max_degree() <= 3);
    std::vector<EdgeId> real;
    for (EdgeId id : kruskal(t.base)) {
      if (id <= g.max_edge_id()) real.push_back(id);
    }
    CHECK(real == kruskal(g));
  }
}

TEST_CASE("contraction") {
  Graph g = make_graph(4, {{0, 1, 1}, {1, 2, 2}, {2, 3, 3}, {3, 0, 4}});
  ContractedGraph same = contract_graph(g, {0, 1, 2, 3}, false);
  CHECK(same.graph.n() == 4);
  CHECK(same.graph.m() == 4);

  CHECK(contract_graph(g, {0, 0, 0, 0}, true).graph.n() == 0);
  CHECK(contract_graph(g, {0, 0, 0, 0}, false).graph.n() == 1);

  ContractedGraph pairs = contract_graph(g, {0, 1, 0, 1}, true);
  CHECK(pairs.graph.n() == 2);
  REQUIRE(pairs.graph.m() == 1);
  CHECK(pairs.graph.edge_at(0).w == 1);
  CHECK(pairs.vertex_of[2] == pairs.vertex_of[0]);
}

TEST_CASE("edge list parsing") {
  std::istringstream empty("");
  CHECK(load_edge_list(empty).graph.n() == 0);

  std::istringstream reversed("0 1\n1 0\n");
  auto r = load_edge_list(reversed);
  CHECK(r.graph.m() == 1);
  CHECK(r.duplicates == 1);

  std::istringstream weighted("# comment\n0 1 5\n1 2 3\n");
  auto w = load_edge_list(weighted);
  REQUIRE(w.graph.m() == 2);
  CHECK(w.graph.weighted());
  CHECK(w.graph.edge_at(0).w == 5);
  CHECK(w.graph.edge_at(1).w == 3);

  std::istringstream loops("3 3\n3 9\n");
  auto l = load_edge_list(loops);
  CHECK(l.self_loops == 1);
  CHECK(l.graph.n() == 2);
  CHECK(l.original_ids == std::vector<uint64_t>{3, 9});

  std::istringstream bad("0 x\n");
  CHECK_THROWS_AS(load_edge_list(bad), ParseError);
  std::istringstream mixed("0 1\n1 2 4\n");
  CHECK_THROWS_AS(load_edge_list(mixed), ParseError);
}

TEST_CASE("edge list round trip") {
  Graph g = random_weights(generate_random(20, 40, 3), 9, 3);
  std::vector<EdgeId> all;
  for (const Edge& e : g.edges()) all.push_back(e.id);
  std::stringstream s;
  write_edge_list(s, g, all);
  auto back = load_edge_list(s);
  CHECK(back.graph.m() == g.m());
  CHECK(testing::weight_of(back.graph, kruskal(back.graph)) == testing::weight_of(g, kruskal(g)));
}

TEST_CASE("oracles on small inputs") {
  Graph sq = make_graph(4, {{0, 1, 1}, {1, 2, 2}, {2, 3, 3}, {3, 0, 4}});
  CHECK(testing::weight_of(sq, kruskal(sq)) == 6);
  Graph disjoint = make_graph(6, {{0, 1}, {2, 3}, {4, 5}});
  CHECK(greedy_matching(disjoint, EdgeRank(1)).size() == 3);
  CHECK(component_count(generate_two_cycles(50)) == 2);
  CHECK(component_count(make_graph(5, std::initializer_list<std::pair<VertexId, VertexId>>{})) == 5);
}

TEST_CASE("greedy oracles produce maximal sets") {
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    Graph g = generate_random(100, 300, seed);
    CHECK(is_maximal_independent_set(g, greedy_mis(g, VertexRank(seed))));
    CHECK(is_maximal_matching(g, greedy_matching(g, EdgeRank(seed))));
  }
}
