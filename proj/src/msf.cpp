#include "ampc/msf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "ampc/contract.hpp"
#include "ampc/oracles.hpp"
#include "records.hpp"

namespace ampc {

using records::decode_incidence;
using records::encode_incidence;
using records::encode_u32;

namespace {

constexpr uint64_t kLiveBit = uint64_t{1} << 63;

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

MsfResult make_msf_result(const Graph& g, std::vector<EdgeId> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::unordered_map<EdgeId, uint32_t> index;
  index.reserve(g.m());
  for (uint32_t i = 0; i < g.m(); ++i) index.emplace(g.edge_at(i).id, i);
  MsfResult out;
  DisjointSets ds(g.n());
  for (EdgeId id : edges) {
    const Edge& e = g.edge_at(index.at(id));
    if (!e.dummy) out.total_weight += e.w;
    ds.unite(e.u, e.v);
  }
  out.edges = std::move(edges);
  std::vector<VertexId> label(g.n());
  for (VertexId v = 0; v < g.n(); ++v) label[v] = static_cast<VertexId>(ds.find(v));
  out.components = canonical_labels(label);
  return out;
}

MsfResult dense_msf(Runtime& rt, const Graph& g, const MsfOptions& opt) {
  uint64_t limit = std::max<uint64_t>(rt.config().space, opt.small_threshold);
  std::vector<EdgeId> chosen;
  std::vector<VertexId> at(g.n());
  std::iota(at.begin(), at.end(), 0u);
  std::vector<uint64_t> finished(g.n(), 0);
  Graph h = g;
  for (uint64_t phase = 0; h.m() > limit; ++phase) {
    // Every vertex picks its lightest edge; values arrive in EdgeKey order.
    std::vector<VertexId> parent(h.n());
    std::iota(parent.begin(), parent.end(), 0u);
    for (const auto& [key, vals] : rt.shuffle(incidence_pairs(h))) {
      auto u = static_cast<VertexId>(key_id(key));
      auto best = decode_incidence(vals.front());
      parent[u] = best.to;
      chosen.push_back(best.key.id);
    }
    // Each star component has exactly one mutual pair; its smaller end is the root.
    Grouped pointers;
    for (VertexId u = 0; u < h.n(); ++u) {
      VertexId p = parent[u];
      if (p != u && parent[p] == u && u < p) continue;
      if (p != u) pointers.emplace_back(make_key(Table::kParent, u), std::vector<Bytes>{encode_u32(p)});
    }
    ContractionMap roots = pointer_jump(rt, rt.publish(pointers), h.n());
    ContractedGraph c = shuffle_contract(rt, h, roots, true);
    for (VertexId v = 0; v < g.n(); ++v) {
      if (at[v] == kNoVertex) continue;
      VertexId r = roots[at[v]];
      VertexId next = c.vertex_of[r];
      if (next == kNoVertex) finished[v] = (phase << 32) | r;
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

  std::vector<uint64_t> label(g.n());
  for (VertexId v = 0; v < g.n(); ++v) label[v] = at[v] == kNoVertex ? finished[v] : kLiveBit | ds.find(at[v]);
  MsfResult out = make_msf_result(g, std::move(chosen));
  out.components = canonical_labels(label);
  return out;
}

MsfResult msf(Runtime& rt, const Graph& g, const MsfOptions& opt) {
  double n = std::max<double>(g.n(), 1);
  if (static_cast<double>(g.m()) >= std::pow(n, 1 + opt.eps / 2)) return dense_msf(rt, g, opt);

  // Ternarization needs each vertex's incidence list: one shuffle.
  rt.shuffle(incidence_pairs(g));
  TernarizedGraph t = ternarize(g);
  TruncatedPrimResult tp = truncated_prim(rt, t.base, VertexRank(opt.seed), opt);
  MsfResult rest = dense_msf(rt, tp.contracted.graph, opt);

  std::vector<EdgeId> edges;
  EdgeId last_real = g.max_edge_id();
  for (EdgeId id : tp.msf_edges) {
    if (last_real != kNoEdge && id <= last_real) edges.push_back(id);
  }
  for (EdgeId id : rest.edges) {
    if (last_real != kNoEdge && id <= last_real) edges.push_back(id);
  }

  std::vector<VertexId> slot(g.n(), kNoVertex);
  for (VertexId x = static_cast<VertexId>(t.origin.size()); x-- > 0;) slot[t.origin[x]] = x;
  std::vector<uint64_t> label(g.n());
  for (VertexId v = 0; v < g.n(); ++v) {
    VertexId root = tp.contraction[slot[v]];
    VertexId c = tp.contracted.vertex_of[root];
    label[v] = c == kNoVertex ? root : kLiveBit | rest.components[c];
  }
  MsfResult out = make_msf_result(g, std::move(edges));
  out.components = canonical_labels(label);
  return out;
}

KktResult kkt_msf(Runtime& rt, const Graph& g, const MsfOptions& opt) {
  KktResult res;
  double log_n = std::ceil(std::log2(std::max<double>(g.n(), 2)));
  res.p = opt.kkt_p > 0 ? opt.kkt_p : 1.0 / std::max(2.0, log_n);

  std::vector<EdgeId> sampled;
  for (const Edge& e : g.edges()) {
    if (hash_below(hash3(opt.seed, 0x6b6b74, e.id), res.p)) sampled.push_back(e.id);
  }
  res.sampled_edges = sampled.size();
  MsfResult f = msf(rt, edge_subgraph(g, sampled), opt);

  auto labels = find_light_edges(rt, g, f.edges);
  std::vector<EdgeId> keep = f.edges;
  for (uint32_t i = 0; i < g.m(); ++i) {
    if (labels[i].kind != FlightKind::kHeavy) {
      ++res.light_edges;
      keep.push_back(g.edge_at(i).id);
    }
  }
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  res.msf = msf(rt, edge_subgraph(g, keep), opt);
  return res;
}

ContractionMap connectivity(Runtime& rt, const Graph& g, const MsfOptions& opt) {
  Graph weighted = g.weighted() ? g : id_weights(g);
  MsfResult forest = msf(rt, weighted, opt);
  return forest_connectivity(rt, edge_subgraph(weighted, forest.edges), opt);
}

}  // namespace ampc
