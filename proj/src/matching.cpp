#include <algorithm>
#include <cmath>
#include <optional>
#include <unordered_map>

#include "ampc/matching.hpp"
#include "query_budget.hpp"

namespace ampc {

namespace {

using RankKey = std::pair<uint64_t, EdgeId>;

struct Incident {
  uint64_t rank;
  EdgeId id;
  VertexId to;
  RankKey key() const { return {rank, id}; }
};

Bytes encode_incident(uint64_t rank, EdgeId id, VertexId to) {
  ByteWriter w;
  w.u64(rank).u32(id).u32(to);
  return w.take();
}

Incident decode_incident(const Bytes& b) {
  ByteReader r(b);
  Incident i{};
  i.rank = r.u64();
  i.id = r.u32();
  i.to = r.u32();
  return i;
}

struct EdgeRef {
  uint64_t rank;
  EdgeId id;
  VertexId a;
  VertexId b;
  RankKey key() const { return {rank, id}; }
};

struct VertexState {
  MmKind kind = MmKind::kUnsearched;
  VertexId mate = kNoVertex;
  EdgeId edge = kNoEdge;
  uint32_t prefix = 0;  // leading incident edges known to be unmatched
  RankKey last{0, 0};   // key of the last of them
};

Bytes encode_state(const VertexState& s) {
  ByteWriter w;
  w.u8(static_cast<uint8_t>(s.kind)).u32(s.mate).u32(s.edge).u32(s.prefix).u64(s.last.first).u32(s.last.second);
  return w.take();
}

VertexState decode_state(const Bytes& b) {
  ByteReader r(b);
  VertexState s;
  s.kind = static_cast<MmKind>(r.u8());
  s.mate = r.u32();
  s.edge = r.u32();
  s.prefix = r.u32();
  s.last.first = r.u64();
  s.last.second = r.u32();
  return s;
}

bool settled(const VertexState& s) { return s.kind == MmKind::kMatched || s.kind == MmKind::kFree; }

struct Info {
  bool loaded = false;
  bool has_list = false;
  VertexState st;
  std::vector<Incident> list;
};

/*
 * Edge and vertex query processes over rank-sorted incidence lists. An edge
 * is matched iff every lower-rank adjacent edge is unmatched; adjacent edges
 * are resolved recursively in ascending rank. With caching on, what is
 * learned about each vertex (its matched edge, or how long a prefix of its
 * incidence list is known unmatched) is kept for later queries on the same
 * machine.
 */
class MatchingSearch {
 public:
  MatchingSearch(MachineContext& ctx, const DhtStore& graph, const DhtStore* states)
      : reader_(ctx), graph_(graph), states_(states), memo_(ctx.caching()) {}

  void reset(uint64_t budget) { reader_.reset(budget); }
  uint64_t fetches() const { return reader_.used(); }

  // `known` is the caller's record of e.a, when it already holds one.
  EdgeStatus edge(const EdgeRef& e, Info* known = nullptr) {
    Info sa, sb;
    Info* ia = known ? known : acquire(e.a, sa);
    if (!ia) return EdgeStatus::kTruncated;
    if (auto d = decided(*ia, e)) return *d;
    Info* ib = acquire(e.b, sb);
    if (!ib) return EdgeStatus::kTruncated;
    if (auto d = decided(*ib, e)) return *d;
    if (!load_list(*ia, e.a) || !load_list(*ib, e.b)) return EdgeStatus::kTruncated;

    size_t i = 0, j = 0;
    for (;;) {
      i = std::max<size_t>(i, ia->st.prefix);
      j = std::max<size_t>(j, ib->st.prefix);
      bool from_a = i < ia->list.size() && ia->list[i].key() < e.key();
      bool from_b = j < ib->list.size() && ib->list[j].key() < e.key();
      if (!from_a && !from_b) break;
      if (from_a && from_b) from_a = ia->list[i].key() < ib->list[j].key();
      Info& side = from_a ? *ia : *ib;
      VertexId x = from_a ? e.a : e.b;
      size_t& at = from_a ? i : j;
      Incident f = side.list[at];
      EdgeStatus s = edge(EdgeRef{f.rank, f.id, x, f.to}, &side);
      if (s != EdgeStatus::kNotInMm) return s == EdgeStatus::kInMm ? EdgeStatus::kNotInMm : s;
      // A deeper query may have matched an endpoint through a lower edge.
      if (ia->st.kind == MmKind::kMatched || ib->st.kind == MmKind::kMatched) return EdgeStatus::kNotInMm;
      mark_unmatched(side, at);
      ++at;
    }
    ia->st.kind = ib->st.kind = MmKind::kMatched;
    ia->st.mate = e.b;
    ib->st.mate = e.a;
    ia->st.edge = ib->st.edge = e.id;
    return EdgeStatus::kInMm;
  }

  // kInMm when v is matched, kNotInMm when v is free. `out` receives what is
  // known about v, including partial progress after truncation.
  EdgeStatus vertex(VertexId v, VertexState* out) {
    Info scratch;
    Info* iv = acquire(v, scratch);
    if (!iv) return EdgeStatus::kTruncated;
    EdgeStatus result = vertex_scan(v, *iv);
    *out = iv->st;
    return result;
  }

  // Progress on v when the state could not even be read.
  VertexState fallback(VertexId v) {
    auto it = infos_.find(v);
    return it == infos_.end() ? VertexState{} : it->second.st;
  }

 private:
  EdgeStatus vertex_scan(VertexId v, Info& iv) {
    if (iv.st.kind == MmKind::kMatched) return EdgeStatus::kInMm;
    if (iv.st.kind == MmKind::kFree) return EdgeStatus::kNotInMm;
    if (!load_list(iv, v)) return EdgeStatus::kTruncated;
    for (size_t i = iv.st.prefix; i < iv.list.size(); i = std::max<size_t>(i, iv.st.prefix)) {
      const Incident f = iv.list[i];
      EdgeStatus s = edge(EdgeRef{f.rank, f.id, v, f.to}, &iv);
      if (s == EdgeStatus::kTruncated) return s;
      if (s == EdgeStatus::kInMm) {
        iv.st.kind = MmKind::kMatched;
        iv.st.mate = f.to;
        iv.st.edge = f.id;
        return s;
      }
      if (iv.st.kind == MmKind::kMatched) return EdgeStatus::kInMm;
      mark_unmatched(iv, i);
      ++i;
    }
    iv.st.kind = MmKind::kFree;
    return EdgeStatus::kNotInMm;
  }

  std::optional<EdgeStatus> decided(const Info& i, const EdgeRef& e) const {
    if (i.st.kind == MmKind::kMatched) return i.st.edge == e.id ? EdgeStatus::kInMm : EdgeStatus::kNotInMm;
    if (i.st.kind == MmKind::kFree || (i.st.prefix > 0 && e.key() <= i.st.last)) return EdgeStatus::kNotInMm;
    return std::nullopt;
  }

  // Entry `at` of x's list is known unmatched; extend the prefix if contiguous.
  static void mark_unmatched(Info& info, size_t at) {
    if (at != info.st.prefix) return;
    ++info.st.prefix;
    info.st.last = info.list[at].key();
    info.st.kind = info.st.prefix == info.list.size() ? MmKind::kFree : MmKind::kHighestFinished;
  }

  Info* acquire(VertexId x, Info& scratch) {
    Info& info = memo_ ? infos_[x] : scratch;
    if (info.loaded) return &info;
    if (states_) {
      const auto* s = reader_.fetch(*states_, make_key(Table::kState, x));
      if (!s) return nullptr;
      if (!s->empty()) info.st = decode_state(s->front());
    }
    info.loaded = true;
    return &info;
  }

  bool load_list(Info& info, VertexId x) {
    if (info.has_list) return true;
    const auto* vals = reader_.fetch(graph_, make_key(Table::kIncidence, x));
    if (!vals) return false;
    info.list.reserve(vals->size());
    for (const auto& b : *vals) info.list.push_back(decode_incident(b));
    info.has_list = true;
    return true;
  }

  BudgetedReader reader_;
  const DhtStore& graph_;
  const DhtStore* states_;
  bool memo_;
  std::unordered_map<VertexId, Info> infos_;
};

uint64_t default_budget(VertexId n, const MisOptions& opt) {
  if (opt.budget) return opt.budget;
  return std::max<uint64_t>(1, static_cast<uint64_t>(std::ceil(std::pow(std::max<double>(n, 1), opt.eps))));
}

uint32_t iteration_cap(const MisOptions& opt) {
  return opt.max_iterations ? opt.max_iterations : static_cast<uint32_t>(std::ceil(4.0 / opt.eps));
}

// Repeats vertex query processes from every vertex until all are settled.
std::vector<VertexState> settle_vertices(Runtime& rt, const StoreHandle& graph, VertexId n,
                                         const MisOptions& opt, MatchingResult& res) {
  uint64_t budget = default_budget(n, opt);
  uint32_t cap = iteration_cap(opt);
  std::vector<VertexState> out(n);
  StoreHandle states;
  for (uint32_t round = 0;; ++round) {
    if (round == cap) {
      throw IterationBudgetExceeded("matching unresolved after " + std::to_string(cap) + " query rounds");
    }
    ++res.iterations;
    const DhtStore* prior = states.get();
    states = rt.run_round(rt.plan_range(n), states ? states : graph,
                          [&](MachineContext& ctx, std::span<const uint64_t> items, const DhtStore&) {
                            MatchingSearch search(ctx, *graph, prior);
                            for (size_t i = 0; i < items.size(); ++i) {
                              auto v = static_cast<VertexId>(items[i]);
                              search.reset(item_budget(ctx, budget, items.size() - i - 1));
                              VertexState st;
                              if (search.vertex(v, &st) == EdgeStatus::kTruncated && !st.prefix &&
                                  st.kind == MmKind::kUnsearched) {
                                st = search.fallback(v);
                              }
                              ctx.write(make_key(Table::kState, v), encode_state(st));
                            }
                          });
    uint64_t open = 0;
    for (VertexId v = 0; v < n; ++v) {
      out[v] = decode_state(states->values(make_key(Table::kState, v)).front());
      open += !settled(out[v]);
    }
    res.truncated += open;
    if (open == 0) return out;
  }
}

void collect(const std::vector<VertexState>& states, MatchingResult& res) {
  for (VertexId v = 0; v < states.size(); ++v) {
    if (states[v].kind != MmKind::kMatched) continue;
    res.mate[v] = states[v].mate;
    if (v < states[v].mate) res.edges.push_back(states[v].edge);
  }
  std::sort(res.edges.begin(), res.edges.end());
}

}  // namespace

StoreHandle publish_matching_graph(Runtime& rt, const Graph& g, const EdgeRank& ranks) {
  std::vector<KeyValue> pairs;
  pairs.reserve(2 * g.m());
  for (const Edge& e : g.edges()) {
    pairs.emplace_back(make_key(Table::kIncidence, e.u), encode_incident(ranks(e.id), e.id, e.v));
    pairs.emplace_back(make_key(Table::kIncidence, e.v), encode_incident(ranks(e.id), e.id, e.u));
  }
  return rt.publish(rt.shuffle(std::move(pairs)));
}

EdgeQueryResult edge_query(Runtime& rt, const StoreHandle& graph, const Edge& e,
                           const EdgeRank& ranks, uint64_t budget) {
  EdgeQueryResult out;
  rt.run_round(rt.plan({e.id}), graph, [&](MachineContext& ctx, std::span<const uint64_t>, const DhtStore& prev) {
    MatchingSearch search(ctx, prev, nullptr);
    search.reset(budget);
    out.status = search.edge(EdgeRef{ranks(e.id), e.id, e.u, e.v});
    out.fetches = search.fetches();
  });
  return out;
}

VertexQueryResult vertex_query(Runtime& rt, const StoreHandle& graph, VertexId v, uint64_t budget) {
  VertexQueryResult out;
  rt.run_round(rt.plan({v}), graph, [&](MachineContext& ctx, std::span<const uint64_t>, const DhtStore& prev) {
    MatchingSearch search(ctx, prev, nullptr);
    search.reset(budget);
    VertexState st;
    EdgeStatus s = search.vertex(v, &st);
    out.truncated = s == EdgeStatus::kTruncated;
    if (s == EdgeStatus::kInMm) out.mate = st.mate;
    out.fetches = search.fetches();
  });
  return out;
}

MatchingResult ampc_mm_constant(Runtime& rt, const Graph& g, const EdgeRank& ranks,
                                const MisOptions& opt) {
  MatchingResult res;
  res.mate.assign(g.n(), kNoVertex);
  StoreHandle graph = publish_matching_graph(rt, g, ranks);
  collect(settle_vertices(rt, graph, g.n(), opt, res), res);
  return res;
}

uint32_t loglog_iterations(size_t delta) {
  if (delta < 2) return 1;
  return static_cast<uint32_t>(std::ceil(std::log2(std::log2(static_cast<double>(delta))))) + 1;
}

double loglog_threshold(size_t delta, uint32_t i) {
  return std::pow(static_cast<double>(delta), -std::pow(0.5, i));
}

MatchingResult ampc_mm_loglog(Runtime& rt, const Graph& g, const EdgeRank& ranks,
                              const MisOptions& opt) {
  VertexId n = g.n();
  size_t delta = g.max_degree();
  uint32_t k = loglog_iterations(delta);
  double log_n = std::log2(std::max<double>(n, 2));
  MatchingResult res;
  res.mate.assign(n, kNoVertex);

  for (uint32_t i = 1; i <= k; ++i) {
    // One shuffle groups the residual graph G_i by vertex; H_i is a rank
    // prefix of each list.
    std::vector<KeyValue> pairs;
    for (const Edge& e : g.edges()) {
      if (res.mate[e.u] != kNoVertex || res.mate[e.v] != kNoVertex) continue;
      pairs.emplace_back(make_key(Table::kIncidence, e.u), encode_incident(ranks(e.id), e.id, e.v));
      pairs.emplace_back(make_key(Table::kIncidence, e.v), encode_incident(ranks(e.id), e.id, e.u));
    }
    Grouped residual = rt.shuffle(std::move(pairs));
    size_t degree = 0;
    for (const auto& [key, vals] : residual) degree = std::max(degree, vals.size());
    res.max_degrees.push_back(degree);
    if (degree == 0) break;

    if (static_cast<double>(degree) > 10 * log_n) {
      double threshold = loglog_threshold(delta, i);
      for (auto& [key, vals] : residual) {
        std::erase_if(vals, [&](const Bytes& b) {
          return static_cast<double>(decode_incident(b).rank) / 18446744073709551616.0 > threshold;
        });
      }
    }
    StoreHandle h = rt.publish(residual);
    auto states = settle_vertices(rt, h, n, opt, res);
    for (VertexId v = 0; v < n; ++v) {
      if (states[v].kind == MmKind::kMatched) res.mate[v] = states[v].mate;
    }
  }

  for (const Edge& e : g.edges()) {
    if (res.mate[e.u] == kNoVertex && res.mate[e.v] == kNoVertex) {
      throw IterationBudgetExceeded("edges remain after " + std::to_string(k) + " degree-reduction iterations");
    }
  }
  for (const Edge& e : g.edges()) {
    if (res.mate[e.u] == e.v && res.mate[e.v] == e.u) res.edges.push_back(e.id);
  }
  std::sort(res.edges.begin(), res.edges.end());
  return res;
}

}  // namespace ampc
