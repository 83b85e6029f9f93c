#include <atomic>
#include <cmath>

#include "ampc/contract.hpp"
#include "records.hpp"

namespace ampc {

using records::decode_u32;
using records::encode_u32;

namespace {

VertexId parent_in(MachineContext& ctx, const DhtStore& store, VertexId v) {
  const auto& vals = ctx.lookup(store, make_key(Table::kParent, v));
  return vals.empty() ? v : decode_u32(vals.front());
}

ContractionMap read_parents(const DhtStore& store, VertexId n) {
  ContractionMap out(n);
  for (VertexId v = 0; v < n; ++v) {
    const auto& vals = store.values(make_key(Table::kParent, v));
    out[v] = vals.empty() ? v : decode_u32(vals.front());
  }
  return out;
}

}  // namespace

StoreHandle publish_parents(Runtime& rt, const std::vector<VertexId>& parent) {
  std::vector<KeyValue> pairs;
  for (VertexId v = 0; v < parent.size(); ++v) {
    if (parent[v] != v) pairs.emplace_back(make_key(Table::kParent, v), encode_u32(parent[v]));
  }
  return rt.publish(rt.shuffle(std::move(pairs)));
}

ContractionMap pointer_jump(Runtime& rt, const StoreHandle& parents, VertexId n, size_t* jump_rounds) {
  size_t limit = static_cast<size_t>(std::ceil(std::log2(std::max<double>(n, 2)))) + 2;
  StoreHandle current = parents;
  size_t rounds = 0;
  for (;;) {
    if (rounds == limit) {
      if (jump_rounds) *jump_rounds = rounds;
      throw CycleDetected("pointer jumping found no fixpoint after " + std::to_string(limit) + " rounds");
    }
    std::atomic<bool> changed{false};
    current = rt.for_each_item(n, current, [&](MachineContext& ctx, uint64_t item, const DhtStore& prev) {
      auto v = static_cast<VertexId>(item);
      VertexId p = parent_in(ctx, prev, v);
      if (p == v) return;
      VertexId pp = parent_in(ctx, prev, p);
      if (pp != p) changed.store(true, std::memory_order_relaxed);
      ctx.write(make_key(Table::kParent, v), encode_u32(pp));
    });
    ++rounds;
    if (!changed.load()) break;
  }
  if (jump_rounds) *jump_rounds = rounds;
  return read_parents(*current, n);
}

ContractionMap pointer_jump(Runtime& rt, const std::vector<VertexId>& parent, size_t* jump_rounds) {
  auto store = publish_parents(rt, parent);
  return pointer_jump(rt, store, static_cast<VertexId>(parent.size()), jump_rounds);
}

ContractionMap chase_roots(Runtime& rt, const StoreHandle& parents, VertexId n) {
  auto out = rt.for_each_item(n, parents, [&](MachineContext& ctx, uint64_t item, const DhtStore& prev) {
    auto v = static_cast<VertexId>(item);
    VertexId x = v;
    for (VertexId steps = 0;; ++steps) {
      if (steps > n) throw CycleDetected("parent walk from " + std::to_string(v) + " does not end");
      VertexId p = parent_in(ctx, prev, x);
      if (p == x) break;
      x = p;
    }
    if (x != v) ctx.write(make_key(Table::kParent, v), encode_u32(x));
  });
  return read_parents(*out, n);
}

ContractedGraph shuffle_contract(Runtime& rt, const Graph& g, const ContractionMap& c,
                                 bool drop_isolated) {
  if (c.size() != g.n()) throw InvalidSize("contraction map size differs from vertex count");
  auto edge_record = [](uint8_t tag, const Edge& e, VertexId other) {
    ByteWriter w;
    w.u8(tag).u32(e.id).u32(other).u8(e.dummy ? 0 : 1).i64(e.w);
    return w.take();
  };
  struct Parsed {
    uint8_t tag;
    Edge e;
  };
  auto parse = [](const Bytes& b, VertexId this_end) {
    ByteReader r(b);
    Parsed p{};
    p.tag = r.u8();
    if (p.tag == 0) {
      p.e.u = r.u32();
      return p;
    }
    p.e.id = r.u32();
    p.e.v = r.u32();
    p.e.dummy = r.u8() == 0;
    p.e.w = r.i64();
    p.e.u = this_end;
    return p;
  };
  auto rep_record = [](VertexId rep) {
    ByteWriter w;
    w.u8(0).u32(rep);
    return w.take();
  };

  // First shuffle: group by u, replace u with its representative.
  std::vector<KeyValue> pairs;
  pairs.reserve(g.n() + g.m());
  for (VertexId v = 0; v < g.n(); ++v) pairs.emplace_back(make_key(Table::kComponent, v), rep_record(c[v]));
  for (const Edge& e : g.edges()) pairs.emplace_back(make_key(Table::kComponent, e.u), edge_record(1, e, e.v));
  std::vector<KeyValue> second;
  second.reserve(g.n() + g.m());
  for (VertexId v = 0; v < g.n(); ++v) second.emplace_back(make_key(Table::kComponent, v), rep_record(c[v]));
  for (auto& [key, vals] : rt.shuffle(std::move(pairs))) {
    auto u = static_cast<VertexId>(key_id(key));
    VertexId rep = kNoVertex;
    for (const auto& b : vals) {
      if (b[0] == 0) rep = parse(b, u).e.u;
    }
    for (const auto& b : vals) {
      if (b[0] == 0) continue;
      Parsed p = parse(b, u);
      second.emplace_back(make_key(Table::kComponent, p.e.v), edge_record(1, p.e, rep));
    }
  }

  // Second shuffle: group by v, replace v.
  std::vector<Edge> rep_edges;
  rep_edges.reserve(g.m());
  for (auto& [key, vals] : rt.shuffle(std::move(second))) {
    auto v = static_cast<VertexId>(key_id(key));
    VertexId rep = kNoVertex;
    for (const auto& b : vals) {
      if (b[0] == 0) rep = parse(b, v).e.u;
    }
    for (const auto& b : vals) {
      if (b[0] == 0) continue;
      Parsed p = parse(b, v);
      rep_edges.push_back(Edge{p.e.v, rep, p.e.w, p.e.id, p.e.dummy});
    }
  }
  return assemble_contracted(c, rep_edges, g.weighted(), drop_isolated);
}

}  // namespace ampc
