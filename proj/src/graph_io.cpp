#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "ampc/errors.hpp"
#include "ampc/graph.hpp"

namespace ampc {

namespace {

struct RawEdge {
  uint64_t u, v;
  Weight w;
};

}  // namespace

LoadResult load_edge_list(std::istream& in) {
  std::vector<RawEdge> raw;
  std::string line;
  size_t line_no = 0;
  int columns = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() != 2 && tok.size() != 3) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'u v [w]'");
    }
    if (columns == 0) columns = static_cast<int>(tok.size());
    if (static_cast<int>(tok.size()) != columns) {
      throw ParseError("line " + std::to_string(line_no) + ": weight column present on some lines only");
    }
    RawEdge e{};
    try {
      size_t used = 0;
      if (tok[0][0] == '-' || tok[1][0] == '-') throw std::invalid_argument("negative id");
      e.u = std::stoull(tok[0], &used);
      if (used != tok[0].size()) throw std::invalid_argument("trailing");
      e.v = std::stoull(tok[1], &used);
      if (used != tok[1].size()) throw std::invalid_argument("trailing");
      if (tok.size() == 3) {
        e.w = std::stoll(tok[2], &used);
        if (used != tok[2].size()) throw std::invalid_argument("trailing");
      }
    } catch (const std::logic_error&) {
      throw ParseError("line " + std::to_string(line_no) + ": malformed number");
    }
    raw.push_back(e);
  }

  LoadResult out;
  for (const RawEdge& e : raw) {
    out.original_ids.push_back(e.u);
    out.original_ids.push_back(e.v);
  }
  std::sort(out.original_ids.begin(), out.original_ids.end());
  out.original_ids.erase(std::unique(out.original_ids.begin(), out.original_ids.end()),
                         out.original_ids.end());
  auto dense = [&](uint64_t id) {
    return static_cast<VertexId>(
        std::lower_bound(out.original_ids.begin(), out.original_ids.end(), id) - out.original_ids.begin());
  };

  std::unordered_set<uint64_t> seen;
  std::vector<Edge> edges;
  for (const RawEdge& e : raw) {
    VertexId a = dense(e.u), b = dense(e.v);
    if (a == b) {
      ++out.self_loops;
      continue;
    }
    uint64_t code = (static_cast<uint64_t>(std::min(a, b)) << 32) | std::max(a, b);
    if (!seen.insert(code).second) {
      ++out.duplicates;
      continue;
    }
    edges.push_back(Edge{a, b, e.w, static_cast<EdgeId>(edges.size()), false});
  }
  out.graph = Graph(static_cast<VertexId>(out.original_ids.size()), std::move(edges), columns == 3);
  return out;
}

LoadResult load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return load_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g, const std::vector<EdgeId>& ids) {
  std::unordered_set<EdgeId> wanted(ids.begin(), ids.end());
  for (const Edge& e : g.edges()) {
    if (!wanted.count(e.id)) continue;
    out << e.u << ' ' << e.v;
    if (g.weighted()) out << ' ' << e.w;
    out << '\n';
  }
}

}  // namespace ampc
