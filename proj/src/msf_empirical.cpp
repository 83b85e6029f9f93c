#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <unordered_set>

#include "ampc/contract.hpp"
#include "ampc/msf.hpp"
#include "ampc/oracles.hpp"
#include "records.hpp"

namespace ampc {

using records::decode_incidence;
using records::decode_u32;
using records::encode_u32;

namespace {

struct Candidate {
  EdgeKey key;
  VertexId to;
  bool operator>(const Candidate& o) const { return key != o.key ? key > o.key : to > o.to; }
};

}  // namespace

/*
 * Search, combine, contract. Searches run on the raw graph (no
 * ternarization) and stop after examining a fixed number of incidences or on
 * reaching a vertex of higher priority (lower rank). Every vertex is then
 * attached to its highest-priority visitor, or to the vertex that stopped its
 * own search, and the resulting trees are contracted.
 */
MsfResult msf_empirical(Runtime& rt, const Graph& g, const MsfOptions& opt) {
  uint64_t in_memory = std::max<uint64_t>(rt.config().space, opt.small_threshold);
  VertexRank rank(opt.seed);
  std::vector<EdgeId> chosen;
  std::vector<VertexId> at(g.n());
  std::iota(at.begin(), at.end(), 0u);
  std::vector<uint64_t> finished(g.n(), 0);
  Graph h = g;

  for (uint64_t pass = 0; pass == 0 || h.m() > in_memory; ++pass) {
    VertexId n = h.n();
    uint64_t limit = opt.empirical_edge_limit
                         ? opt.empirical_edge_limit
                         : static_cast<uint64_t>(std::ceil(std::pow(std::max<double>(n, 2), opt.eps)));

    // Shuffle 1: sorted adjacency into the DHT.
    StoreHandle adjacency = publish_adjacency(rt, h);

    auto searched = rt.for_each_item(n, adjacency, [&](MachineContext& ctx, uint64_t item, const DhtStore& prev) {
      auto v = static_cast<VertexId>(item);
      std::unordered_set<VertexId> visited{v};
      std::priority_queue<Candidate, std::vector<Candidate>, std::greater<>> frontier;
      uint64_t examined = 0;
      auto explore = [&](VertexId x) {
        for (const auto& b : ctx.lookup(prev, make_key(Table::kAdjacency, x))) {
          auto rec = decode_incidence(b);
          ++examined;
          if (!visited.count(rec.to)) frontier.push({rec.key, rec.to});
        }
      };
      explore(v);
      // The lightest incident edge is always taken, so every pass contracts.
      for (;;) {
        while (!frontier.empty() && visited.count(frontier.top().to)) frontier.pop();
        if (frontier.empty()) break;
        Candidate next = frontier.top();
        frontier.pop();
        ctx.write(make_key(Table::kEdge, next.key.id), Bytes{});
        if (rank.less(next.to, v)) {
          ctx.write(make_key(Table::kVisit, v), encode_u32(next.to));
          break;
        }
        visited.insert(next.to);
        ctx.write(make_key(Table::kVisit, next.to), encode_u32(v));
        if (examined >= limit) break;
        explore(next.to);
      }
    });

    std::vector<KeyValue> visits;
    searched->for_each([&](const Bytes& key, const std::vector<Bytes>& vals) {
      if (key_table(key) == Table::kEdge) {
        chosen.push_back(static_cast<EdgeId>(key_id(key)));
      } else {
        for (const auto& b : vals) visits.emplace_back(key, b);
      }
    });

    // Shuffle 2: combine the visitors of each vertex, keeping the highest priority.
    std::vector<KeyValue> pointers;
    for (auto& [key, vals] : rt.shuffle(std::move(visits))) {
      auto u = static_cast<VertexId>(key_id(key));
      VertexId best = kNoVertex;
      for (const auto& b : vals) {
        VertexId cand = decode_u32(b);
        if (best == kNoVertex || rank.less(cand, best)) best = cand;
      }
      if (rank.less(best, u)) pointers.emplace_back(make_key(Table::kParent, u), encode_u32(best));
    }

    // Shuffle 3: the parent map is written to the DHT; roots by repeated parent queries.
    StoreHandle parents = rt.publish(rt.shuffle(std::move(pointers)));
    ContractionMap roots = chase_roots(rt, parents, n);

    // Shuffles 4 and 5: contraction.
    ContractedGraph c = shuffle_contract(rt, h, roots, true);
    for (VertexId v = 0; v < g.n(); ++v) {
      if (at[v] == kNoVertex) continue;
      VertexId r = roots[at[v]];
      VertexId next = c.vertex_of[r];
      if (next == kNoVertex) finished[v] = (pass << 32) | r;
      at[v] = next;
    }
    h = std::move(c.graph);
  }

  rt.local_round();
  std::vector<uint32_t> order(h.m());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(),
            [&](uint32_t a, uint32_t b) { return h.edge_at(a).key() < h.edge_at(b).key(); });
  DisjointSets ds(h.n());
  for (uint32_t i : order) {
    const Edge& e = h.edge_at(i);
    if (ds.unite(e.u, e.v)) chosen.push_back(e.id);
  }

  std::vector<uint64_t> raw(g.n());
  for (VertexId v = 0; v < g.n(); ++v) {
    raw[v] = at[v] == kNoVertex ? finished[v] : (uint64_t{1} << 63) | ds.find(at[v]);
  }
  MsfResult out = make_msf_result(g, std::move(chosen));
  out.components = canonical_labels(raw);
  return out;
}

}  // namespace ampc
