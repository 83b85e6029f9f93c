#include <bit>

#include "ampc/msf.hpp"
#include "ampc/tree.hpp"
#include "records.hpp"

namespace ampc {

namespace {

// Per-vertex tree facts, one record under Table::kComponent.
struct VertexFacts {
  VertexId component;
  uint32_t level;
  uint32_t tour;
  uint32_t first;
  uint32_t path;
  uint32_t position;
};

Bytes encode_facts(const VertexFacts& f) {
  ByteWriter w;
  w.u32(f.component).u32(f.level).u32(f.tour).u32(f.first).u32(f.path).u32(f.position);
  return w.take();
}

VertexFacts decode_facts(const Bytes& b) {
  ByteReader r(b);
  VertexFacts f{};
  f.component = r.u32();
  f.level = r.u32();
  f.tour = r.u32();
  f.first = r.u32();
  f.path = r.u32();
  f.position = r.u32();
  return f;
}

void put_key(ByteWriter& w, const EdgeKey& k) { w.u8(k.real ? 1 : 0).i64(k.weight).u32(k.id); }

EdgeKey get_key(ByteReader& r) {
  EdgeKey k;
  k.real = r.u8() != 0;
  k.weight = r.i64();
  k.id = r.u32();
  return k;
}

// Sparse-table cells are keyed by (table id * 64 + level, index).
uint64_t cell(uint64_t table, uint64_t level) { return table * 64 + level; }

struct PivotEntry {
  VertexId vertex;
  uint32_t level;
  EdgeKey max_key;
};

}  // namespace

std::vector<FlightLabel> find_light_edges(Runtime& rt, const Graph& g,
                                          const std::vector<EdgeId>& forest_edges) {
  Graph forest = edge_subgraph(g, forest_edges);
  TreePathIndex index(forest);
  const auto& rf = index.forest();
  const auto& tour = index.tour();
  const auto& hld = index.hld();

  // One shuffle materializes all tree tables in the DHT.
  std::vector<KeyValue> pairs;
  for (VertexId v = 0; v < g.n(); ++v) {
    VertexFacts f{rf.component_id[v], rf.level[v], tour.tour_of[v], tour.first[v],
                  hld.path_id[v], hld.path_position[v]};
    pairs.emplace_back(make_key(Table::kComponent, v), encode_facts(f));
    for (const Pivot& p : index.pivots().pivots[v]) {
      ByteWriter w;
      w.u32(p.vertex).u32(rf.level[p.vertex]);
      put_key(w, p.max_key);
      pairs.emplace_back(make_key(Table::kPivot, v), w.take());
    }
  }
  for (uint32_t t = 0; t < tour.tours.size(); ++t) {
    const auto& table = index.lca_index().table(t);
    for (size_t y = 0; y < table.levels(); ++y) {
      for (size_t x = 0; x < table.size(); ++x) {
        uint32_t at = table.entry(y, x);
        ByteWriter w;
        w.u32(tour.tours[t][at]).u32(static_cast<uint32_t>(table.value(at)));
        pairs.emplace_back(make_key(Table::kTour, cell(t, y), x), w.take());
      }
    }
  }
  for (uint32_t p = 0; p < hld.path_max.size(); ++p) {
    const auto& table = hld.path_max[p];
    for (size_t y = 0; y < table.levels(); ++y) {
      for (size_t x = 0; x < table.size(); ++x) {
        ByteWriter w;
        put_key(w, table.value(table.entry(y, x)));
        pairs.emplace_back(make_key(Table::kHeavyPath, cell(p, y), x), w.take());
      }
    }
  }
  StoreHandle tables = rt.publish(rt.shuffle(std::move(pairs)));

  auto out = rt.for_each_item(g.m(), tables, [&](MachineContext& ctx, uint64_t item, const DhtStore& prev) {
    const Edge& e = g.edge_at(static_cast<uint32_t>(item));
    auto facts = [&](VertexId v) {
      return decode_facts(ctx.lookup(prev, make_key(Table::kComponent, v)).front());
    };
    auto write_label = [&](FlightKind kind, const EdgeKey& threshold) {
      ByteWriter w;
      w.u8(static_cast<uint8_t>(kind));
      put_key(w, threshold);
      ctx.write(make_key(Table::kEdge, item), w.take());
    };

    VertexFacts fu = facts(e.u), fw = facts(e.v);
    if (fu.component != fw.component) {
      write_label(FlightKind::kCrossComponent, EdgeKey::neutral());
      return;
    }

    // LCA: minimum level on the tour between the first occurrences.
    uint32_t i = std::min(fu.first, fw.first), j = std::max(fu.first, fw.first);
    uint32_t t = static_cast<uint32_t>(std::bit_width(j - i + 1)) - 1;
    auto tour_cell = [&](uint32_t x) {
      ByteReader r(ctx.lookup(prev, make_key(Table::kTour, cell(fu.tour, t), x)).front());
      VertexId v = r.u32();
      uint32_t level = r.u32();
      return std::pair{v, level};
    };
    auto left = tour_cell(i), right = tour_cell(j + 1 - (1u << t));
    VertexId a = left.second <= right.second ? left.first : right.first;
    VertexFacts fa = facts(a);

    auto heavy_max = [&](uint32_t path, uint32_t lo, uint32_t hi) {
      // Max over positions lo..hi of one heavy path.
      if (lo > hi) return EdgeKey::neutral();
      uint32_t s = static_cast<uint32_t>(std::bit_width(hi - lo + 1)) - 1;
      ByteReader r1(ctx.lookup(prev, make_key(Table::kHeavyPath, cell(path, s), lo)).front());
      ByteReader r2(ctx.lookup(prev, make_key(Table::kHeavyPath, cell(path, s), hi + 1 - (1u << s))).front());
      return std::max(get_key(r1), get_key(r2));
    };
    auto half = [&](VertexId x) {
      if (x == a) return EdgeKey::neutral();
      PivotEntry best{kNoVertex, 0, EdgeKey::neutral()};
      for (const auto& b : ctx.lookup(prev, make_key(Table::kPivot, x))) {
        ByteReader r(b);
        PivotEntry p{r.u32(), r.u32(), EdgeKey::neutral()};
        p.max_key = get_key(r);
        if (p.level >= fa.level && (best.vertex == kNoVertex || p.level < best.level)) best = p;
      }
      VertexFacts fp = facts(best.vertex);
      return std::max(best.max_key, heavy_max(fp.path, fa.position + 1, fp.position));
    };

    EdgeKey threshold = std::max(half(e.u), half(e.v));
    write_label(e.key() <= threshold ? FlightKind::kLight : FlightKind::kHeavy, threshold);
  });

  std::vector<FlightLabel> labels(g.m());
  for (uint32_t i = 0; i < g.m(); ++i) {
    ByteReader r(out->values(make_key(Table::kEdge, i)).front());
    labels[i].kind = static_cast<FlightKind>(r.u8());
    labels[i].threshold = get_key(r);
  }
  return labels;
}

}  // namespace ampc
