#include "ampc/baselines.hpp"

#include <algorithm>
#include <numeric>

#include "ampc/contract.hpp"
#include "ampc/errors.hpp"
#include "ampc/oracles.hpp"
#include "records.hpp"

namespace ampc {

using records::decode_incidence;
using records::decode_u32;
using records::encode_incidence;
using records::encode_u32;

namespace {

constexpr uint64_t kLiveBit = uint64_t{1} << 63;

Bytes ranked(uint64_t rank, uint32_t id) {
  ByteWriter w;
  w.u64(rank).u32(id);
  return w.take();
}

std::vector<uint32_t> all_edges(const Graph& g) {
  std::vector<uint32_t> idx(g.m());
  std::iota(idx.begin(), idx.end(), 0u);
  return idx;
}

std::vector<KeyValue> incidence_pairs(const Graph& g) {
  std::vector<KeyValue> pairs;
  pairs.reserve(2 * g.m());
  for (const Edge& e : g.edges()) {
    pairs.emplace_back(make_key(Table::kIncidence, e.u), encode_incidence(e.key(), e.v));
    pairs.emplace_back(make_key(Table::kIncidence, e.v), encode_incidence(e.key(), e.u));
  }
  return pairs;
}

}  // namespace

MisBaselineResult mpc_mis_rootset(Runtime& rt, const Graph& g, const VertexRank& ranks,
                                  uint64_t small_threshold) {
  VertexId n = g.n();
  MisBaselineResult res;
  res.in_set.assign(n, 0);
  std::vector<char> live(n, 1);
  uint64_t live_vertices = n;
  std::vector<uint32_t> edges = all_edges(g);

  for (uint32_t phase = 0; live_vertices > 0; ++phase) {
    if (small_threshold && edges.size() <= small_threshold) {
      rt.local_round();
      std::vector<VertexId> order;
      for (VertexId v = 0; v < n; ++v) {
        if (live[v]) order.push_back(v);
      }
      std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) { return ranks.less(a, b); });
      for (VertexId v : order) {
        if (!live[v]) continue;
        res.in_set[v] = 1;
        live[v] = 0;
        for (const auto& inc : g.neighbors(v)) live[inc.to] = 0;
      }
      break;
    }
    res.phases.push_back({phase, live_vertices, edges.size(), 2});

    // Every live vertex learns the smallest rank among its live neighbors.
    std::vector<KeyValue> pairs;
    pairs.reserve(2 * edges.size());
    for (uint32_t i : edges) {
      const Edge& e = g.edge_at(i);
      pairs.emplace_back(make_key(Table::kMisGraph, e.u), ranked(ranks(e.v), e.v));
      pairs.emplace_back(make_key(Table::kMisGraph, e.v), ranked(ranks(e.u), e.u));
    }
    std::vector<char> beaten(n, 0);
    for (const auto& [key, vals] : rt.shuffle(std::move(pairs))) {
      auto v = static_cast<VertexId>(key_id(key));
      beaten[v] = vals.front() < ranked(ranks(v), v);
    }
    for (VertexId v = 0; v < n; ++v) {
      if (live[v] && !beaten[v]) res.in_set[v] = 1;
    }

    // Minima notify their neighbors, which leave with them.
    pairs.clear();
    for (uint32_t i : edges) {
      const Edge& e = g.edge_at(i);
      if (res.in_set[e.u]) pairs.emplace_back(make_key(Table::kState, e.v), encode_u32(e.u));
      if (res.in_set[e.v]) pairs.emplace_back(make_key(Table::kState, e.u), encode_u32(e.v));
    }
    for (const auto& [key, vals] : rt.shuffle(std::move(pairs))) live[key_id(key)] = 0;
    for (VertexId v = 0; v < n; ++v) {
      if (res.in_set[v]) live[v] = 0;
    }
    std::erase_if(edges, [&](uint32_t i) { return !live[g.edge_at(i).u] || !live[g.edge_at(i).v]; });
    // Without live edges every survivor is isolated and joins in this phase.
    if (edges.empty()) {
      for (VertexId v = 0; v < n; ++v) {
        if (live[v]) res.in_set[v] = 1;
      }
      break;
    }
    live_vertices = static_cast<uint64_t>(std::count(live.begin(), live.end(), 1));
  }
  return res;
}

MatchingBaselineResult mpc_mm_rootset(Runtime& rt, const Graph& g, const EdgeRank& ranks,
                                      uint64_t small_threshold) {
  VertexId n = g.n();
  MatchingBaselineResult res;
  MatchingResult& m = res.matching;
  m.mate.assign(n, kNoVertex);
  std::vector<uint32_t> edges = all_edges(g);
  auto match = [&](const Edge& e) {
    m.mate[e.u] = e.v;
    m.mate[e.v] = e.u;
    m.edges.push_back(e.id);
  };

  for (uint32_t phase = 0; !edges.empty(); ++phase) {
    if (small_threshold && edges.size() <= small_threshold) {
      rt.local_round();
      std::sort(edges.begin(), edges.end(),
                [&](uint32_t a, uint32_t b) { return ranks.less(g.edge_at(a).id, g.edge_at(b).id); });
      for (uint32_t i : edges) {
        const Edge& e = g.edge_at(i);
        if (m.mate[e.u] == kNoVertex && m.mate[e.v] == kNoVertex) match(e);
      }
      break;
    }
    uint64_t live_vertices = 0;
    {
      std::vector<char> seen(n, 0);
      for (uint32_t i : edges) seen[g.edge_at(i).u] = seen[g.edge_at(i).v] = 1;
      live_vertices = static_cast<uint64_t>(std::count(seen.begin(), seen.end(), 1));
    }
    res.phases.push_back({phase, live_vertices, edges.size(), 2});

    // Each vertex finds its minimum-rank live edge.
    std::vector<KeyValue> pairs;
    pairs.reserve(2 * edges.size());
    for (uint32_t i : edges) {
      const Edge& e = g.edge_at(i);
      Bytes r = ranked(ranks(e.id), e.id);
      pairs.emplace_back(make_key(Table::kIncidence, e.u), r);
      pairs.emplace_back(make_key(Table::kIncidence, e.v), r);
    }
    std::vector<KeyValue> votes;
    for (const auto& [key, vals] : rt.shuffle(std::move(pairs))) {
      ByteReader r(vals.front());
      r.u64();
      votes.emplace_back(make_key(Table::kEdge, r.u32()), encode_u32(static_cast<uint32_t>(key_id(key))));
    }
    // An edge chosen by both endpoints is a local minimum of the line graph.
    std::vector<EdgeId> joined;
    for (const auto& [key, vals] : rt.shuffle(std::move(votes))) {
      if (vals.size() == 2) joined.push_back(static_cast<EdgeId>(key_id(key)));
    }
    std::sort(joined.begin(), joined.end());
    for (uint32_t i : edges) {
      const Edge& e = g.edge_at(i);
      if (std::binary_search(joined.begin(), joined.end(), e.id)) match(e);
    }
    std::erase_if(edges, [&](uint32_t i) {
      return m.mate[g.edge_at(i).u] != kNoVertex || m.mate[g.edge_at(i).v] != kNoVertex;
    });
  }
  std::sort(m.edges.begin(), m.edges.end());
  m.iterations = static_cast<uint32_t>(res.phases.size());
  return res;
}

MsfBaselineResult mpc_msf_boruvka(Runtime& rt, const Graph& g, uint64_t small_threshold,
                                  uint64_t seed) {
  MsfBaselineResult res;
  std::vector<EdgeId> chosen;
  std::vector<VertexId> at(g.n());
  std::iota(at.begin(), at.end(), 0u);
  std::vector<uint64_t> finished(g.n(), 0);
  Graph h = g;

  for (uint32_t phase = 0; h.m() > 0; ++phase) {
    if (small_threshold && h.m() <= small_threshold) break;
    res.phases.push_back({phase, h.n(), h.m(), 3});
    auto blue = [&](VertexId v) { return (hash3(seed, phase, v) & 1) != 0; };

    ContractionMap parent(h.n());
    std::iota(parent.begin(), parent.end(), 0u);
    for (const auto& [key, vals] : rt.shuffle(incidence_pairs(h))) {
      auto u = static_cast<VertexId>(key_id(key));
      if (!blue(u)) continue;
      auto best = decode_incidence(vals.front());
      if (blue(best.to)) continue;
      parent[u] = best.to;
      chosen.push_back(best.key.id);
    }
    ContractedGraph c = shuffle_contract(rt, h, parent, true);
    for (VertexId v = 0; v < g.n(); ++v) {
      if (at[v] == kNoVertex) continue;
      VertexId r = parent[at[v]];
      VertexId next = c.vertex_of[r];
      if (next == kNoVertex) finished[v] = (uint64_t{phase} << 32) | r;
      at[v] = next;
    }
    h = std::move(c.graph);
  }

  if (h.m() > 0) rt.local_round();
  std::vector<uint32_t> order = all_edges(h);
  std::sort(order.begin(), order.end(),
            [&](uint32_t a, uint32_t b) { return h.edge_at(a).key() < h.edge_at(b).key(); });
  DisjointSets ds(h.n());
  for (uint32_t i : order) {
    const Edge& e = h.edge_at(i);
    if (ds.unite(e.u, e.v)) chosen.push_back(e.id);
  }

  std::vector<uint64_t> label(g.n());
  for (VertexId v = 0; v < g.n(); ++v) label[v] = at[v] == kNoVertex ? finished[v] : kLiveBit | ds.find(at[v]);
  res.msf = make_msf_result(g, std::move(chosen));
  res.msf.components = canonical_labels(label);
  return res;
}

CycleCcResult mpc_cycle_cc(Runtime& rt, const Graph& g, uint64_t seed) {
  for (VertexId v = 0; v < g.n(); ++v) {
    if (g.neighbors(v).size() != 2) {
      throw NotACycleGraph("vertex " + std::to_string(v) + " has degree " +
                           std::to_string(g.neighbors(v).size()));
    }
  }
  CycleCcResult res;
  Graph h = g;
  for (uint32_t phase = 0; h.n() > 0; ++phase) {
    res.phases.push_back({phase, h.n(), h.m(), 3});
    auto red = [&](VertexId v) { return (hash3(seed, 0x6363 + phase, v) & 1) != 0; };

    // Blue vertices hook into their smallest red neighbor.
    std::vector<KeyValue> pairs;
    pairs.reserve(2 * h.m());
    for (const Edge& e : h.edges()) {
      pairs.emplace_back(make_key(Table::kCycle, e.u), encode_u32(e.v));
      pairs.emplace_back(make_key(Table::kCycle, e.v), encode_u32(e.u));
    }
    ContractionMap parent(h.n());
    std::iota(parent.begin(), parent.end(), 0u);
    for (const auto& [key, vals] : rt.shuffle(std::move(pairs))) {
      auto u = static_cast<VertexId>(key_id(key));
      if (red(u)) continue;
      for (const auto& b : vals) {
        VertexId w = decode_u32(b);
        if (red(w)) {
          parent[u] = w;
          break;
        }
      }
    }
    ContractedGraph c = shuffle_contract(rt, h, parent, true);
    uint64_t roots = 0;
    for (VertexId v = 0; v < h.n(); ++v) {
      if (parent[v] != v) continue;
      ++roots;
      // A cluster with no remaining edge is a whole cycle.
      if (c.vertex_of[v] == kNoVertex) ++res.components;
    }
    res.shrink.push_back(static_cast<double>(h.n()) / static_cast<double>(roots));
    h = std::move(c.graph);
  }
  return res;
}

}  // namespace ampc
