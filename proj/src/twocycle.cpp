#include "ampc/twocycle.hpp"

#include <algorithm>
#include <unordered_map>

#include "ampc/errors.hpp"
#include "ampc/oracles.hpp"
#include "records.hpp"

namespace ampc {

using records::decode_u32;
using records::encode_u32;

namespace {

Bytes encode_search(const SampleSearch& s) {
  ByteWriter w;
  w.u32(s.hits[0]).u32(static_cast<uint32_t>(s.steps[0])).u32(s.hits[1]).u32(static_cast<uint32_t>(s.steps[1]));
  return w.take();
}

SampleSearch decode_search(VertexId start, const Bytes& b) {
  ByteReader r(b);
  SampleSearch s;
  s.start = start;
  s.hits[0] = r.u32();
  s.steps[0] = r.u32();
  s.hits[1] = r.u32();
  s.steps[1] = r.u32();
  return s;
}

void check_cycles(const Graph& g) {
  for (VertexId v = 0; v < g.n(); ++v) {
    if (g.degree(v) != 2) {
      throw NotACycleGraph("vertex " + std::to_string(v) + " has degree " + std::to_string(g.degree(v)));
    }
  }
}

TwoCycleResult solve(Runtime& rt, const Graph& g, const TwoCycleOptions& opt, uint32_t level) {
  check_cycles(g);
  VertexId n = g.n();
  TwoCycleResult res;
  res.depth = level;

  std::vector<KeyValue> pairs;
  pairs.reserve(2 * g.m());
  for (const Edge& e : g.edges()) {
    pairs.emplace_back(make_key(Table::kCycle, e.u), encode_u32(e.v));
    pairs.emplace_back(make_key(Table::kCycle, e.v), encode_u32(e.u));
  }
  StoreHandle adjacency = rt.publish(rt.shuffle(std::move(pairs)));

  auto sampled = [&](VertexId v) { return hash_below(hash3(opt.seed, 0x74776f + level, v), opt.sample_prob); };
  std::vector<uint64_t> samples;
  for (VertexId v = 0; v < n; ++v) {
    if (sampled(v)) samples.push_back(v);
  }
  res.samples = samples.size();

  // Each sample walks both ways until it meets a sample (possibly itself).
  StoreHandle walks = rt.run_round(rt.plan(samples), adjacency,
                                   [&](MachineContext& ctx, std::span<const uint64_t> items, const DhtStore& store) {
    for (uint64_t item : items) {
      auto s = static_cast<VertexId>(item);
      SampleSearch search;
      const auto& start = ctx.lookup(store, make_key(Table::kCycle, s));
      for (int dir = 0; dir < 2; ++dir) {
        VertexId prev = s;
        VertexId cur = decode_u32(start[dir]);
        uint64_t steps = 1;
        while (!sampled(cur)) {
          ctx.write(make_key(Table::kVisit, cur), encode_u32(s));
          const auto& next = ctx.lookup(store, make_key(Table::kCycle, cur));
          VertexId a = decode_u32(next[0]);
          VertexId step = a != prev ? a : decode_u32(next[1]);
          prev = cur;
          cur = step;
          ++steps;
        }
        search.hits[dir] = cur;
        search.steps[dir] = steps;
      }
      ctx.write(make_key(Table::kEdge, s), encode_search(search));
    }
  });

  // Contract on the driver: cycles carrying one or two samples are counted
  // directly, longer sampled cycles form a new cycle union.
  std::vector<VertexId> index(n, kNoVertex);
  for (size_t i = 0; i < samples.size(); ++i) index[samples[i]] = static_cast<VertexId>(i);
  std::vector<std::pair<VertexId, VertexId>> links;
  for (uint64_t item : samples) {
    auto s = static_cast<VertexId>(item);
    SampleSearch search = decode_search(s, walks->values(make_key(Table::kEdge, s)).front());
    res.longest_walk = std::max({res.longest_walk, search.steps[0], search.steps[1]});
    res.total_steps += search.steps[0] + search.steps[1];
    if (opt.record_searches && level == 0) res.searches.push_back(search);
    if (search.hits[0] == s) {
      ++res.components;  // the only sample on its cycle
    } else if (search.hits[0] == search.hits[1]) {
      if (s < search.hits[0]) ++res.components;  // two samples
    } else {
      for (VertexId t : search.hits) {
        if (s < t) links.emplace_back(index[s], index[t]);
      }
    }
  }

  // Cycles without any sample: every vertex on them is unvisited.
  std::vector<char> seen(n, 0);
  for (VertexId v = 0; v < n; ++v) seen[v] = sampled(v) || !walks->values(make_key(Table::kVisit, v)).empty();
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    rt.local_round();
    for (VertexId v = 0; v < n; ++v) {
      if (seen[v]) continue;
      ++res.unsampled_cycles;
      ++res.components;
      VertexId prev = kNoVertex;
      for (VertexId cur = v; !seen[cur];) {
        seen[cur] = 1;
        VertexId next = g.neighbors(cur)[0].to != prev ? g.neighbors(cur)[0].to : g.neighbors(cur)[1].to;
        prev = cur;
        cur = next;
      }
    }
  }

  if (links.empty()) return res;
  std::vector<char> on_long(samples.size(), 0);
  for (auto [a, b] : links) on_long[a] = on_long[b] = 1;
  uint64_t remaining = static_cast<uint64_t>(std::count(on_long.begin(), on_long.end(), 1));

  if (remaining <= rt.config().quota()) {
    rt.local_round();
    DisjointSets ds(samples.size());
    uint64_t merged = 0;
    for (auto [a, b] : links) merged += ds.unite(a, b);
    res.components += remaining - merged;
    return res;
  }
  if (level + 1 > opt.max_depth) {
    throw ComponentTooLarge(std::to_string(remaining) + " sampled vertices exceed one machine (" +
                            std::to_string(rt.config().quota()) + ")");
  }

  std::vector<VertexId> dense(samples.size(), kNoVertex);
  VertexId next_id = 0;
  for (size_t i = 0; i < samples.size(); ++i) {
    if (on_long[i]) dense[i] = next_id++;
  }
  std::vector<Edge> edges;
  edges.reserve(links.size());
  for (auto [a, b] : links) edges.push_back(Edge{dense[a], dense[b], 0, static_cast<EdgeId>(edges.size()), false});
  TwoCycleResult inner = solve(rt, Graph(next_id, std::move(edges), false), opt, level + 1);
  res.components += inner.components;
  res.longest_walk = std::max(res.longest_walk, inner.longest_walk);
  res.depth = inner.depth;
  return res;
}

}  // namespace

TwoCycleResult ampc_two_cycle(Runtime& rt, const Graph& g, const TwoCycleOptions& opt) {
  if (!(opt.sample_prob > 0 && opt.sample_prob <= 1)) {
    throw ConfigError("sample_prob must lie in (0, 1]");
  }
  return solve(rt, g, opt, 0);
}

}  // namespace ampc
