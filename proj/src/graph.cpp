#include "ampc/graph.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "ampc/errors.hpp"

namespace ampc {

namespace {

uint64_t pair_code(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<uint64_t>(a) << 32) | b;
}

std::vector<Edge> number_edges(std::vector<std::pair<VertexId, VertexId>> pairs) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (size_t i = 0; i < pairs.size(); ++i) {
    edges.push_back(Edge{pairs[i].first, pairs[i].second, 0, static_cast<EdgeId>(i), false});
  }
  return edges;
}

}  // namespace

Graph::Graph(VertexId n, std::vector<Edge> edges, bool weighted)
    : n_(n), weighted_(weighted), edges_(std::move(edges)) {
  std::vector<uint64_t> codes;
  std::vector<EdgeId> ids;
  codes.reserve(edges_.size());
  ids.reserve(edges_.size());
  std::vector<size_t> deg(n_, 0);
  for (const Edge& e : edges_) {
    if (e.u >= n_ || e.v >= n_) {
      throw InvalidSize("edge " + std::to_string(e.id) + " has an endpoint outside [0, " +
                        std::to_string(n_) + ")");
    }
    if (e.u == e.v) throw InvalidSize("self-loop at vertex " + std::to_string(e.u));
    if (e.id == kNoEdge) throw InvalidSize("edge id out of range");
    codes.push_back(pair_code(e.u, e.v));
    ids.push_back(e.id);
    ++deg[e.u];
    ++deg[e.v];
  }
  std::sort(codes.begin(), codes.end());
  if (std::adjacent_find(codes.begin(), codes.end()) != codes.end()) {
    throw InvalidSize("duplicate undirected edge");
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw InvalidSize("duplicate edge id");
  }
  if (!ids.empty()) max_edge_id_ = ids.back();

  offsets_.assign(n_ + 1, 0);
  for (VertexId v = 0; v < n_; ++v) {
    offsets_[v + 1] = offsets_[v] + deg[v];
    max_degree_ = std::max(max_degree_, deg[v]);
  }
  adj_.resize(offsets_[n_]);
  std::vector<size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (uint32_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    adj_[fill[e.u]++] = Incidence{e.v, i};
    adj_[fill[e.v]++] = Incidence{e.u, i};
  }
  for (VertexId v = 0; v < n_; ++v) {
    auto first = adj_.begin() + static_cast<ptrdiff_t>(offsets_[v]);
    auto last = adj_.begin() + static_cast<ptrdiff_t>(offsets_[v + 1]);
    if (weighted_) {
      std::sort(first, last, [&](const Incidence& a, const Incidence& b) {
        return edges_[a.edge].key() < edges_[b.edge].key();
      });
    } else {
      std::sort(first, last, [](const Incidence& a, const Incidence& b) { return a.to < b.to; });
    }
  }
}

Graph generate_two_cycles(VertexId k) {
  if (k < 3) throw InvalidSize("two-cycles needs k >= 3, got " + std::to_string(k));
  return generate_cycle_union({k, k}, 0);
}

Graph generate_cycle_union(const std::vector<VertexId>& lengths, uint64_t seed) {
  VertexId n = 0;
  for (VertexId len : lengths) {
    if (len < 3) throw InvalidSize("cycle length must be at least 3");
    n += len;
  }
  std::vector<VertexId> label(n);
  std::iota(label.begin(), label.end(), 0);
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    std::shuffle(label.begin(), label.end(), rng);
  }
  std::vector<std::pair<VertexId, VertexId>> pairs;
  VertexId base = 0;
  for (VertexId len : lengths) {
    for (VertexId i = 0; i < len; ++i) {
      pairs.emplace_back(label[base + i], label[base + (i + 1) % len]);
    }
    base += len;
  }
  return Graph(n, number_edges(std::move(pairs)), false);
}

Graph generate_random(VertexId n, uint64_t m, uint64_t seed) {
  uint64_t total = static_cast<uint64_t>(n) * (n > 0 ? n - 1 : 0) / 2;
  if (m > total) {
    throw InvalidSize("cannot place " + std::to_string(m) + " edges on " + std::to_string(n) +
                      " vertices");
  }
  std::mt19937_64 rng(hash_combine(seed, 0x72616e64));
  std::vector<std::pair<VertexId, VertexId>> pairs;
  pairs.reserve(m);
  if (m * 2 > total) {
    std::vector<std::pair<VertexId, VertexId>> all;
    all.reserve(total);
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v = u + 1; v < n; ++v) all.emplace_back(u, v);
    }
    for (uint64_t i = 0; i < m; ++i) {
      std::uniform_int_distribution<uint64_t> pick(i, total - 1);
      std::swap(all[i], all[pick(rng)]);
      pairs.push_back(all[i]);
    }
  } else {
    std::unordered_set<uint64_t> seen;
    seen.reserve(m * 2);
    std::uniform_int_distribution<VertexId> pick(0, n - 1);
    while (pairs.size() < m) {
      VertexId a = pick(rng), b = pick(rng);
      if (a == b || !seen.insert(pair_code(a, b)).second) continue;
      pairs.emplace_back(a, b);
    }
  }
  return Graph(n, number_edges(std::move(pairs)), false);
}

Graph generate_path(VertexId n) {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId v = 1; v < n; ++v) pairs.emplace_back(v - 1, v);
  return Graph(n, number_edges(std::move(pairs)), false);
}

Graph generate_random_tree(VertexId n, uint64_t seed) {
  std::mt19937_64 rng(hash_combine(seed, 0x74726565));
  std::vector<VertexId> label(n);
  std::iota(label.begin(), label.end(), 0);
  std::shuffle(label.begin(), label.end(), rng);
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId v = 1; v < n; ++v) {
    std::uniform_int_distribution<VertexId> pick(0, v - 1);
    pairs.emplace_back(label[pick(rng)], label[v]);
  }
  return Graph(n, number_edges(std::move(pairs)), false);
}

Graph generate_star(VertexId n) {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId v = 1; v < n; ++v) pairs.emplace_back(0, v);
  return Graph(n, number_edges(std::move(pairs)), false);
}

Graph generate_grid(VertexId rows, VertexId cols) {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId r = 0; r < rows; ++r) {
    for (VertexId c = 0; c < cols; ++c) {
      VertexId v = r * cols + c;
      if (c + 1 < cols) pairs.emplace_back(v, v + 1);
      if (r + 1 < rows) pairs.emplace_back(v, v + cols);
    }
  }
  return Graph(rows * cols, number_edges(std::move(pairs)), false);
}

Graph random_weights(const Graph& g, Weight max_weight, uint64_t seed) {
  std::vector<Edge> edges = g.edges();
  for (Edge& e : edges) {
    e.w = 1 + static_cast<Weight>(hash_combine(seed, e.id) % static_cast<uint64_t>(max_weight));
  }
  return Graph(g.n(), std::move(edges), true);
}

Graph degree_weights(const Graph& g) {
  std::vector<Edge> edges = g.edges();
  for (Edge& e : edges) e.w = static_cast<Weight>(g.degree(e.u) + g.degree(e.v));
  return Graph(g.n(), std::move(edges), true);
}

Graph id_weights(const Graph& g) {
  std::vector<Edge> edges = g.edges();
  for (Edge& e : edges) e.w = e.id;
  return Graph(g.n(), std::move(edges), true);
}

TernarizedGraph ternarize(const Graph& g) {
  // Vertices of degree > 3 become a cycle with one slot per incident edge,
  // slots ordered by ascending neighbor id.
  std::vector<VertexId> first(g.n());
  std::vector<VertexId> origin;
  for (VertexId v = 0; v < g.n(); ++v) {
    first[v] = static_cast<VertexId>(origin.size());
    size_t slots = g.degree(v) > 3 ? g.degree(v) : 1;
    origin.insert(origin.end(), slots, v);
  }

  std::vector<std::unordered_map<VertexId, VertexId>> slots(g.n());
  for (VertexId v = 0; v < g.n(); ++v) {
    if (g.degree(v) <= 3) continue;
    std::vector<VertexId> ids;
    for (const auto& inc : g.neighbors(v)) ids.push_back(inc.to);
    std::sort(ids.begin(), ids.end());
    for (size_t i = 0; i < ids.size(); ++i) slots[v][ids[i]] = first[v] + static_cast<VertexId>(i);
  }
  auto slot = [&](VertexId v, VertexId neighbor) {
    return g.degree(v) <= 3 ? first[v] : slots[v].at(neighbor);
  };

  std::vector<Edge> edges;
  edges.reserve(g.m() * 2);
  for (const Edge& e : g.edges()) {
    edges.push_back(Edge{slot(e.u, e.v), slot(e.v, e.u), e.w, e.id, false});
  }
  EdgeId next_id = g.max_edge_id() == kNoEdge ? 0 : g.max_edge_id() + 1;
  for (VertexId v = 0; v < g.n(); ++v) {
    size_t d = g.degree(v);
    if (d <= 3) continue;
    for (size_t i = 0; i < d; ++i) {
      VertexId a = first[v] + static_cast<VertexId>(i);
      VertexId b = first[v] + static_cast<VertexId>((i + 1) % d);
      edges.push_back(Edge{a, b, 0, next_id++, true});
    }
  }
  TernarizedGraph out;
  out.base = Graph(static_cast<VertexId>(origin.size()), std::move(edges), true);
  out.origin = std::move(origin);
  return out;
}

ContractedGraph assemble_contracted(const ContractionMap& c, const std::vector<Edge>& rep_edges,
                                    bool weighted, bool drop_isolated) {
  // Lightest edge per unordered rep pair: sort by (pair, key), keep the first.
  std::vector<const Edge*> best;
  best.reserve(rep_edges.size());
  for (const Edge& e : rep_edges) {
    if (e.u != e.v) best.push_back(&e);
  }
  std::sort(best.begin(), best.end(), [](const Edge* a, const Edge* b) {
    uint64_t ca = pair_code(a->u, a->v), cb = pair_code(b->u, b->v);
    if (ca != cb) return ca < cb;
    return a->key() < b->key();
  });
  best.erase(std::unique(best.begin(), best.end(),
                         [](const Edge* a, const Edge* b) {
                           return pair_code(a->u, a->v) == pair_code(b->u, b->v);
                         }),
             best.end());

  std::vector<char> used(c.size(), 0);
  if (drop_isolated) {
    for (const Edge* e : best) used[e->u] = used[e->v] = 1;
  } else {
    for (VertexId r : c) used[r] = 1;
  }
  std::vector<VertexId> reps;
  for (VertexId r = 0; r < used.size(); ++r) {
    if (used[r]) reps.push_back(r);
  }

  auto dense = [&](VertexId rep) {
    return static_cast<VertexId>(std::lower_bound(reps.begin(), reps.end(), rep) - reps.begin());
  };

  std::vector<Edge> edges;
  edges.reserve(best.size());
  for (const Edge* e : best) {
    Edge out = *e;
    out.u = dense(e->u);
    out.v = dense(e->v);
    edges.push_back(out);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });

  ContractedGraph out;
  out.vertex_of.assign(c.size(), kNoVertex);
  for (size_t v = 0; v < c.size(); ++v) {
    auto it = std::lower_bound(reps.begin(), reps.end(), c[v]);
    if (it != reps.end() && *it == c[v]) out.vertex_of[v] = static_cast<VertexId>(it - reps.begin());
  }
  out.rep_of = reps;
  out.graph = Graph(static_cast<VertexId>(reps.size()), std::move(edges), weighted);
  return out;
}

ContractedGraph contract_graph(const Graph& g, const ContractionMap& c, bool drop_isolated) {
  if (c.size() != g.n()) throw InvalidSize("contraction map size differs from vertex count");
  std::vector<Edge> rep_edges = g.edges();
  for (Edge& e : rep_edges) {
    e.u = c[e.u];
    e.v = c[e.v];
  }
  return assemble_contracted(c, rep_edges, g.weighted(), drop_isolated);
}

Graph induced_subgraph(const Graph& g, const std::vector<char>& keep) {
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (keep[e.u] && keep[e.v]) edges.push_back(e);
  }
  return Graph(g.n(), std::move(edges), g.weighted());
}

Graph edge_subgraph(const Graph& g, const std::vector<EdgeId>& ids) {
  std::unordered_set<EdgeId> wanted(ids.begin(), ids.end());
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (wanted.count(e.id)) edges.push_back(e);
  }
  return Graph(g.n(), std::move(edges), g.weighted());
}

}  // namespace ampc
