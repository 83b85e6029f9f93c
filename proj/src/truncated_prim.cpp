#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_set>

#include "ampc/contract.hpp"
#include "ampc/msf.hpp"
#include "records.hpp"

namespace ampc {

using records::decode_incidence;
using records::encode_incidence;
using records::encode_u32;

namespace {

struct FrontierEntry {
  EdgeKey key;
  VertexId to;
  bool operator>(const FrontierEntry& o) const {
    return key != o.key ? key > o.key : to > o.to;
  }
};

using Frontier = std::priority_queue<FrontierEntry, std::vector<FrontierEntry>, std::greater<>>;

}  // namespace

StoreHandle publish_adjacency(Runtime& rt, const Graph& g) {
  std::vector<KeyValue> pairs;
  pairs.reserve(2 * g.m());
  for (const Edge& e : g.edges()) {
    pairs.emplace_back(make_key(Table::kAdjacency, e.u), encode_incidence(e.key(), e.v));
    pairs.emplace_back(make_key(Table::kAdjacency, e.v), encode_incidence(e.key(), e.u));
  }
  return rt.publish(rt.shuffle(std::move(pairs)));
}

TruncatedPrimResult truncated_prim(Runtime& rt, const Graph& g, const VertexRank& ranks,
                                   const MsfOptions& opt) {
  if (g.max_degree() > 3) {
    throw InvalidSize("truncated_prim needs max degree <= 3, got " + std::to_string(g.max_degree()));
  }
  VertexId n = g.n();
  TruncatedPrimResult res;
  double nn = std::max<double>(n, 1);
  res.threshold = std::max<uint64_t>(1, static_cast<uint64_t>(std::ceil(std::pow(nn, opt.eps / 2))));
  uint64_t query_cap = std::max<uint64_t>(1, static_cast<uint64_t>(std::ceil(std::pow(nn, opt.eps))));
  if (opt.record_searches) res.searches.resize(n);

  auto adjacency = publish_adjacency(rt, g);
  uint64_t before = rt.metrics().total_queries;

  auto found = rt.for_each_item(n, adjacency, [&](MachineContext& ctx, uint64_t item, const DhtStore& prev) {
    auto v = static_cast<VertexId>(item);
    PrimSearchResult search;
    search.owner = v;
    std::unordered_set<VertexId> visited{v};
    Frontier frontier;
    uint64_t own_queries = 0;
    auto explore = [&](VertexId x) {
      search.visited.push_back(x);
      ++own_queries;
      for (const auto& b : ctx.lookup(prev, make_key(Table::kAdjacency, x))) {
        auto rec = decode_incidence(b);
        if (!visited.count(rec.to)) frontier.push({rec.key, rec.to});
      }
    };
    explore(v);
    for (;;) {
      while (!frontier.empty() && visited.count(frontier.top().to)) frontier.pop();
      if (frontier.empty()) {
        search.stop = StopReason::kComponentDone;
        break;
      }
      bool truncated = opt.query_truncation ? own_queries >= query_cap
                                            : search.visited.size() >= res.threshold;
      if (truncated) {
        search.stop = StopReason::kExplored;
        break;
      }
      FrontierEntry next = frontier.top();
      frontier.pop();
      search.discovered.push_back(next.key.id);
      ctx.write(make_key(Table::kEdge, next.key.id), Bytes{});
      if (ranks.less(next.to, v)) {
        search.stop = StopReason::kHitLowerRank;
        search.lower = next.to;
        ctx.write(make_key(Table::kParent, v), encode_u32(next.to));
        break;
      }
      visited.insert(next.to);
      explore(next.to);
    }
    if (opt.record_searches) res.searches[v] = std::move(search);
  });
  res.queries = rt.metrics().total_queries - before;

  found->for_each([&](const Bytes& key, const std::vector<Bytes>&) {
    if (key_table(key) == Table::kEdge) res.msf_edges.push_back(static_cast<EdgeId>(key_id(key)));
  });
  std::sort(res.msf_edges.begin(), res.msf_edges.end());

  res.contraction = chase_roots(rt, found, n);
  res.contracted = shuffle_contract(rt, g, res.contraction, true);
  return res;
}

}  // namespace ampc
