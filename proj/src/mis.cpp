#include <cmath>
#include <unordered_map>

#include "ampc/matching.hpp"
#include "query_budget.hpp"

namespace ampc {

namespace {

Bytes encode_ranked(uint64_t rank, uint32_t id) {
  ByteWriter w;
  w.u64(rank).u32(id);
  return w.take();
}

VertexId ranked_id(const Bytes& b) {
  ByteReader r(b);
  r.u64();
  return r.u32();
}

// State record: [state][number of lower neighbors known not in the MIS].
Bytes encode_state(MisState s, uint32_t progress) {
  ByteWriter w;
  w.u8(static_cast<uint8_t>(s)).u32(progress);
  return w.take();
}

/*
 * Recursive query process on the rank-directed graph: a vertex is in the
 * MIS iff none of its lower-rank neighbors is. Resolved answers are kept in
 * a machine-local table when caching is on.
 */
class MisSearch {
 public:
  MisSearch(MachineContext& ctx, const DhtStore& graph, const DhtStore* states)
      : reader_(ctx), graph_(graph), states_(states), memo_(ctx.caching()) {}

  MisState query(VertexId v, uint64_t budget, uint32_t* progress) {
    reader_.reset(budget);
    return visit(v, progress);
  }
  uint64_t fetches() const { return reader_.used(); }

 private:
  MisState visit(VertexId v, uint32_t* progress) {
    if (memo_) {
      auto it = known_.find(v);
      if (it != known_.end()) return it->second;
    }
    uint32_t start = 0;
    if (states_) {
      const auto* s = reader_.fetch(*states_, make_key(Table::kState, v));
      if (!s) return MisState::kUnknown;
      if (!s->empty()) {
        ByteReader r(s->front());
        auto state = static_cast<MisState>(r.u8());
        start = r.u32();
        if (state != MisState::kUnknown) return remember(v, state);
      }
    }
    if (progress) *progress = start;
    const auto* lower = reader_.fetch(graph_, make_key(Table::kMisGraph, v));
    if (!lower) return MisState::kUnknown;
    for (size_t i = start; i < lower->size(); ++i) {
      MisState s = visit(ranked_id((*lower)[i]), nullptr);
      if (s == MisState::kUnknown) return s;
      if (s == MisState::kInMis) return remember(v, MisState::kNotInMis);
      if (progress) *progress = static_cast<uint32_t>(i + 1);
    }
    return remember(v, MisState::kInMis);
  }

  MisState remember(VertexId v, MisState s) {
    if (memo_) known_.emplace(v, s);
    return s;
  }

  BudgetedReader reader_;
  const DhtStore& graph_;
  const DhtStore* states_;
  bool memo_;
  std::unordered_map<VertexId, MisState> known_;
};

uint64_t default_budget(VertexId n, const MisOptions& opt) {
  if (opt.budget) return opt.budget;
  return std::max<uint64_t>(1, static_cast<uint64_t>(std::ceil(std::pow(std::max<double>(n, 1), opt.eps))));
}

}  // namespace

StoreHandle publish_mis_graph(Runtime& rt, const Graph& g, const VertexRank& ranks) {
  std::vector<KeyValue> pairs;
  pairs.reserve(g.m());
  for (const Edge& e : g.edges()) {
    VertexId low = ranks.less(e.u, e.v) ? e.u : e.v;
    VertexId high = e.other(low);
    pairs.emplace_back(make_key(Table::kMisGraph, high), encode_ranked(ranks(low), low));
  }
  return rt.publish(rt.shuffle(std::move(pairs)));
}

MisQueryResult mis_query(Runtime& rt, const StoreHandle& graph, VertexId v, uint64_t budget) {
  MisQueryResult out;
  RoundPlan plan = rt.plan({v});
  rt.run_round(plan, graph, [&](MachineContext& ctx, std::span<const uint64_t>, const DhtStore& prev) {
    MisSearch search(ctx, prev, nullptr);
    out.state = search.query(v, budget, nullptr);
    out.fetches = search.fetches();
  });
  return out;
}

MisResult ampc_mis(Runtime& rt, const Graph& g, const VertexRank& ranks, const MisOptions& opt) {
  VertexId n = g.n();
  uint64_t budget = default_budget(n, opt);
  uint32_t cap = opt.max_iterations ? opt.max_iterations
                                    : static_cast<uint32_t>(std::ceil(4.0 / opt.eps));
  StoreHandle graph = publish_mis_graph(rt, g, ranks);

  MisResult res;
  StoreHandle states;
  for (;;) {
    if (res.iterations == cap) {
      throw IterationBudgetExceeded("MIS unresolved after " + std::to_string(cap) + " query rounds");
    }
    ++res.iterations;
    const DhtStore* prior = states.get();
    StoreHandle read = states ? states : graph;
    states = rt.run_round(rt.plan_range(n), read,
                          [&](MachineContext& ctx, std::span<const uint64_t> items, const DhtStore&) {
                            MisSearch search(ctx, *graph, prior);
                            for (size_t i = 0; i < items.size(); ++i) {
                              auto v = static_cast<VertexId>(items[i]);
                              uint32_t progress = 0;
                              MisState s = search.query(v, item_budget(ctx, budget, items.size() - i - 1),
                                                        &progress);
                              ctx.write(make_key(Table::kState, v), encode_state(s, progress));
                            }
                          });
    uint64_t open = 0;
    for (VertexId v = 0; v < n; ++v) {
      ByteReader r(states->values(make_key(Table::kState, v)).front());
      open += static_cast<MisState>(r.u8()) == MisState::kUnknown;
    }
    res.truncated += open;
    if (open == 0) break;
  }

  res.in_set.assign(n, 0);
  for (VertexId v = 0; v < n; ++v) {
    ByteReader r(states->values(make_key(Table::kState, v)).front());
    res.in_set[v] = static_cast<MisState>(r.u8()) == MisState::kInMis;
  }
  return res;
}

}  // namespace ampc
