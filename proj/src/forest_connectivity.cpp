#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "ampc/msf.hpp"
#include "ampc/oracles.hpp"
#include "records.hpp"

namespace ampc {

using records::decode_u32;
using records::encode_u32;

namespace {

// Cycle links under Table::kCycle: one 'S' (successor) and one 'P'
// (predecessor) record per node.
Bytes encode_link(char tag, uint32_t node) {
  ByteWriter w;
  w.u8(static_cast<uint8_t>(tag)).u32(node);
  return w.take();
}

struct Links {
  uint32_t succ = 0;
  uint32_t pred = 0;
};

Links decode_links(const std::vector<Bytes>& vals) {
  Links l;
  for (const auto& b : vals) {
    ByteReader r(b);
    char tag = static_cast<char>(r.u8());
    (tag == 'S' ? l.succ : l.pred) = r.u32();
  }
  return l;
}

// Adjacency record: [neighbor][outgoing arc].
Bytes encode_arc(VertexId to, uint32_t arc) {
  ByteWriter w;
  w.u32(to).u32(arc);
  return w.take();
}

}  // namespace

ContractionMap forest_connectivity(Runtime& rt, const Graph& forest, const MsfOptions& opt) {
  VertexId n = forest.n();
  {
    DisjointSets ds(n);
    for (const Edge& e : forest.edges()) {
      if (!ds.unite(e.u, e.v)) throw NotAForest("edge " + std::to_string(e.id) + " closes a cycle");
    }
  }

  // Arc 2i is u->v of edge i, arc 2i+1 is v->u. Adjacency values sort by neighbor.
  std::vector<KeyValue> pairs;
  pairs.reserve(2 * forest.m());
  for (uint32_t i = 0; i < forest.m(); ++i) {
    const Edge& e = forest.edge_at(i);
    pairs.emplace_back(make_key(Table::kAdjacency, e.u), encode_arc(e.v, 2 * i));
    pairs.emplace_back(make_key(Table::kAdjacency, e.v), encode_arc(e.u, 2 * i + 1));
  }
  StoreHandle adjacency = rt.publish(rt.shuffle(std::move(pairs)));

  auto arc_tail = [&](uint32_t arc) {
    const Edge& e = forest.edge_at(arc / 2);
    return arc % 2 == 0 ? e.u : e.v;
  };
  auto arc_head = [&](uint32_t arc) {
    const Edge& e = forest.edge_at(arc / 2);
    return arc % 2 == 0 ? e.v : e.u;
  };

  // Euler tours as cycles: after arriving at y from x, leave towards the
  // neighbor following x in y's sorted list.
  auto arcs = static_cast<uint32_t>(2 * forest.m());
  StoreHandle links = rt.for_each_item(arcs, adjacency, [&](MachineContext& ctx, uint64_t item, const DhtStore& prev) {
    auto a = static_cast<uint32_t>(item);
    VertexId x = arc_tail(a);
    const auto& nb = ctx.lookup(prev, make_key(Table::kAdjacency, arc_head(a)));
    size_t k = 0;
    while (ByteReader(nb[k]).u32() != x) ++k;
    ByteReader next(nb[(k + 1) % nb.size()]);
    next.u32();
    uint32_t b = next.u32();
    ctx.write(make_key(Table::kCycle, a), encode_link('S', b));
    ctx.write(make_key(Table::kCycle, b), encode_link('P', a));
  });

  std::vector<uint64_t> nodes(arcs);
  for (uint32_t a = 0; a < arcs; ++a) nodes[a] = a;
  auto iterations = static_cast<uint32_t>(std::ceil(3.0 / opt.eps));
  double p = std::pow(std::max<double>(arcs, 2), -opt.eps / 2);
  std::vector<StoreHandle> absorbed;
  for (uint32_t it = 1; it <= iterations; ++it) {
    auto sampled = [&](uint32_t a) { return hash_below(hash3(opt.seed, 0x736872696e6b + it, a), p); };
    // Shrink: each sample walks both ways to the neighboring samples and
    // absorbs the nodes on its forward walk. Unsampled nodes keep their links
    // for the case that their cycle has no sample at all.
    StoreHandle current = links;
    links = rt.for_each_item(nodes, current, [&](MachineContext& ctx, uint64_t item, const DhtStore& prev) {
      auto a = static_cast<uint32_t>(item);
      Links own = decode_links(ctx.lookup(prev, make_key(Table::kCycle, a)));
      if (!sampled(a)) {
        ctx.write(make_key(Table::kCycle, a), encode_link('S', own.succ));
        ctx.write(make_key(Table::kCycle, a), encode_link('P', own.pred));
        return;
      }
      uint32_t x = own.succ;
      while (!sampled(x)) {
        ctx.write(make_key(Table::kVisit, x), encode_u32(a));
        x = decode_links(ctx.lookup(prev, make_key(Table::kCycle, x))).succ;
      }
      uint32_t right = x;
      x = own.pred;
      while (!sampled(x)) x = decode_links(ctx.lookup(prev, make_key(Table::kCycle, x))).pred;
      ctx.write(make_key(Table::kCycle, a), encode_link('S', right));
      ctx.write(make_key(Table::kCycle, a), encode_link('P', x));
    });
    absorbed.push_back(links);
    std::vector<uint64_t> next;
    for (uint64_t a : nodes) {
      if (links->values(make_key(Table::kVisit, a)).empty()) next.push_back(a);
    }
    nodes = std::move(next);
  }

  // The remaining cycles fit on one machine: label each by its smallest node.
  rt.local_round();
  Grouped labels;
  {
    std::unordered_map<uint32_t, uint32_t> succ;
    for (uint64_t a : nodes) {
      succ[static_cast<uint32_t>(a)] = decode_links(links->values(make_key(Table::kCycle, a))).succ;
    }
    std::unordered_map<uint32_t, uint32_t> label;
    for (uint64_t start : nodes) {
      auto s = static_cast<uint32_t>(start);
      if (label.count(s)) continue;
      std::vector<uint32_t> cycle;
      for (uint32_t x = s; !label.count(x); x = succ.at(x)) {
        label[x] = 0;
        cycle.push_back(x);
      }
      uint32_t low = *std::min_element(cycle.begin(), cycle.end());
      for (uint32_t x : cycle) label[x] = low;
    }
    for (const auto& [a, l] : label) {
      labels.emplace_back(make_key(Table::kRoot, a), std::vector<Bytes>{encode_u32(l)});
    }
  }
  StoreHandle final_labels = rt.publish(labels);

  StoreHandle result = rt.for_each_item(n, final_labels, [&](MachineContext& ctx, uint64_t item, const DhtStore& prev) {
    auto v = static_cast<VertexId>(item);
    const auto& nb = ctx.lookup(*adjacency, make_key(Table::kAdjacency, v));
    if (nb.empty()) return;
    ByteReader r(nb.front());
    r.u32();
    uint32_t a = r.u32();
    for (const auto& store : absorbed) {
      const auto& by = ctx.lookup(*store, make_key(Table::kVisit, a));
      if (!by.empty()) a = decode_u32(by.front());
    }
    uint32_t label = decode_u32(ctx.lookup(prev, make_key(Table::kRoot, a)).front());
    ctx.write(make_key(Table::kComponent, v), encode_u32(label));
  });

  // Isolated vertices form their own components.
  std::vector<uint64_t> raw(n);
  for (VertexId v = 0; v < n; ++v) {
    const auto& vals = result->values(make_key(Table::kComponent, v));
    raw[v] = vals.empty() ? (uint64_t{1} << 32) | v : decode_u32(vals.front());
  }
  return canonical_labels(raw);
}

}  // namespace ampc
