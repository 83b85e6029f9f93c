#include "ampc/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "ampc/baselines.hpp"
#include "ampc/errors.hpp"
#include "ampc/hashing.hpp"
#include "ampc/matching.hpp"
#include "ampc/msf.hpp"
#include "ampc/oracles.hpp"
#include "ampc/twocycle.hpp"

namespace ampc::bench {

using nlohmann::json;

namespace {

enum class Family { kMsf, kLabels, kCount, kMis, kMatching };

struct AlgorithmInfo {
  const char* name;
  Family family;
};

constexpr AlgorithmInfo kAlgorithms[] = {
    {"msf", Family::kMsf},
    {"dense-msf", Family::kMsf},
    {"kkt-msf", Family::kMsf},
    {"msf-empirical", Family::kMsf},
    {"mpc-msf", Family::kMsf},
    {"connectivity", Family::kLabels},
    {"forest-connectivity", Family::kLabels},
    {"two-cycle", Family::kCount},
    {"mpc-cycle-cc", Family::kCount},
    {"mis", Family::kMis},
    {"mpc-mis", Family::kMis},
    {"mm", Family::kMatching},
    {"mm-loglog", Family::kMatching},
    {"mpc-mm", Family::kMatching},
};

const AlgorithmInfo& algorithm_info(const std::string& name) {
  for (const auto& a : kAlgorithms) {
    if (name == a.name) return a;
  }
  throw ConfigError("unknown algorithm '" + name + "'");
}

uint64_t parse_uint(const std::string& what, const std::string& text) {
  uint64_t v = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
    throw ParseError(what + ": expected a non-negative integer, got '" + text + "'");
  }
  return v;
}

double parse_double(const std::string& what, const std::string& text) {
  try {
    size_t used = 0;
    double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw ParseError(what + ": expected a number, got '" + text + "'");
}

bool parse_bool(const std::string& what, const std::string& text) {
  if (text == "on" || text == "true" || text == "1") return true;
  if (text == "off" || text == "false" || text == "0") return false;
  throw ParseError(what + ": expected on/off, got '" + text + "'");
}

std::map<std::string, std::string> parse_pairs(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError("expected key=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    if (!out.emplace(key, item.substr(eq + 1)).second) throw ParseError("key '" + key + "' given twice");
  }
  return out;
}

struct GeneratorSpec {
  std::string name;
  std::map<std::string, std::string> args;
};

GeneratorSpec parse_generator(const std::string& spec) {
  GeneratorSpec out;
  auto colon = spec.find(':');
  out.name = spec.substr(0, colon);
  if (colon != std::string::npos) out.args = parse_pairs(spec.substr(colon + 1));
  return out;
}

// Same text for specs that differ only in key order.
std::string input_identity(const RunConfig& cfg) {
  if (!cfg.input_file.empty()) return "file:" + cfg.input_file;
  GeneratorSpec g = parse_generator(cfg.generator);
  if (!g.args.count("seed")) g.args["seed"] = std::to_string(cfg.seed);
  std::string id = "gen:" + g.name;
  for (const auto& [k, v] : g.args) id += "," + k + "=" + v;
  return id;
}

struct Loaded {
  Graph graph;
  std::vector<uint64_t> original;  // empty for generated inputs
  size_t duplicates = 0;
  size_t self_loops = 0;
};

Loaded load_input(const RunConfig& cfg) {
  Loaded out;
  if (!cfg.input_file.empty()) {
    LoadResult r = load_edge_list(cfg.input_file);
    out.graph = std::move(r.graph);
    out.original = std::move(r.original_ids);
    out.duplicates = r.duplicates;
    out.self_loops = r.self_loops;
  } else {
    out.graph = generate(cfg.generator, cfg.seed);
  }
  return out;
}

uint64_t digest(const std::vector<uint64_t>& values) {
  uint64_t h = values.size();
  for (uint64_t v : values) h = hash_combine(h, v);
  return h;
}

std::string hex(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json metrics_json(const RunMetrics& m) {
  return {{"rounds", m.rounds},
          {"shuffles", m.shuffles},
          {"total_queries", m.total_queries},
          {"total_writes", m.total_writes},
          {"max_machine_comm", m.max_machine_comm},
          {"bytes_shuffled", m.bytes_shuffled},
          {"bytes_kv", m.bytes_kv}};
}

json phases_json(const PhaseLog& log) {
  json out = json::array();
  for (const auto& p : log) {
    out.push_back({{"phase", p.phase},
                   {"live_vertices", p.live_vertices},
                   {"live_edges", p.live_edges},
                   {"shuffles", p.shuffles}});
  }
  return out;
}

// Output of one algorithm run, normalized per family.
struct Outcome {
  std::vector<EdgeId> edges;       // kMsf, kMatching
  std::vector<VertexId> labels;    // kLabels
  std::vector<char> in_set;        // kMis
  uint64_t count = 0;              // kCount
  json extra = json::object();
  json phases;
};

Outcome execute(const RunConfig& cfg, Runtime& rt, const Graph& g) {
  Outcome out;
  const std::string& alg = cfg.algorithm;
  MsfOptions msf_opt;
  msf_opt.eps = cfg.eps;
  msf_opt.seed = cfg.seed;
  if (cfg.small_threshold) msf_opt.small_threshold = *cfg.small_threshold;
  MisOptions mis_opt;
  mis_opt.eps = cfg.eps;
  uint64_t baseline_threshold = cfg.small_threshold.value_or(0);

  if (alg == "msf") {
    out.edges = msf(rt, g, msf_opt).edges;
  } else if (alg == "dense-msf") {
    out.edges = dense_msf(rt, g, msf_opt).edges;
  } else if (alg == "kkt-msf") {
    KktResult r = kkt_msf(rt, g, msf_opt);
    out.edges = std::move(r.msf.edges);
    out.extra = {{"p", r.p}, {"sampled_edges", r.sampled_edges}, {"light_edges", r.light_edges}};
  } else if (alg == "msf-empirical") {
    out.edges = msf_empirical(rt, g, msf_opt).edges;
  } else if (alg == "mpc-msf") {
    MsfBaselineResult r = mpc_msf_boruvka(rt, g, baseline_threshold, cfg.seed);
    out.edges = std::move(r.msf.edges);
    out.phases = phases_json(r.phases);
  } else if (alg == "connectivity") {
    out.labels = connectivity(rt, g, msf_opt);
  } else if (alg == "forest-connectivity") {
    out.labels = forest_connectivity(rt, g, msf_opt);
  } else if (alg == "two-cycle") {
    TwoCycleOptions opt;
    double n = std::max<double>(2, g.n());
    opt.sample_prob = cfg.sample_prob > 0 ? cfg.sample_prob : std::max(1.0 / 64, std::pow(n, -cfg.eps / 2));
    opt.seed = cfg.seed;
    TwoCycleResult r = ampc_two_cycle(rt, g, opt);
    out.count = r.components;
    out.extra = {{"sample_prob", opt.sample_prob},
                 {"samples", r.samples},
                 {"longest_walk", r.longest_walk},
                 {"unsampled_cycles", r.unsampled_cycles},
                 {"depth", r.depth}};
  } else if (alg == "mpc-cycle-cc") {
    CycleCcResult r = mpc_cycle_cc(rt, g, cfg.seed);
    out.count = r.components;
    out.phases = phases_json(r.phases);
    out.extra = {{"shrink", r.shrink}};
  } else if (alg == "mis") {
    MisResult r = ampc_mis(rt, g, VertexRank(cfg.seed), mis_opt);
    out.in_set = std::move(r.in_set);
    out.extra = {{"iterations", r.iterations}, {"truncated", r.truncated}};
  } else if (alg == "mpc-mis") {
    MisBaselineResult r = mpc_mis_rootset(rt, g, VertexRank(cfg.seed), baseline_threshold);
    out.in_set = std::move(r.in_set);
    out.phases = phases_json(r.phases);
  } else if (alg == "mm" || alg == "mm-loglog") {
    MatchingResult r = alg == "mm" ? ampc_mm_constant(rt, g, EdgeRank(cfg.seed), mis_opt)
                                   : ampc_mm_loglog(rt, g, EdgeRank(cfg.seed), mis_opt);
    out.edges = std::move(r.edges);
    out.extra = {{"iterations", r.iterations}, {"truncated", r.truncated}};
    if (!r.max_degrees.empty()) out.extra["max_degrees"] = r.max_degrees;
  } else if (alg == "mpc-mm") {
    MatchingBaselineResult r = mpc_mm_rootset(rt, g, EdgeRank(cfg.seed), baseline_threshold);
    out.edges = std::move(r.matching.edges);
    out.phases = phases_json(r.phases);
  }
  return out;
}

void plant_bug(Family family, const Graph& g, Outcome& out) {
  switch (family) {
    case Family::kMsf:
    case Family::kMatching: {
      if (!out.edges.empty()) {
        EdgeId dropped = out.edges.front();
        out.edges.erase(out.edges.begin());
        if (family == Family::kMsf) {
          for (const Edge& e : g.edges()) {
            if (e.id != dropped && !std::binary_search(out.edges.begin(), out.edges.end(), e.id)) {
              out.edges.insert(std::lower_bound(out.edges.begin(), out.edges.end(), e.id), e.id);
              break;
            }
          }
        }
      } else if (g.m() > 0) {
        out.edges.push_back(g.edge_at(0).id);
      } else {
        throw ConfigError("planted bug needs an edge in the input");
      }
      break;
    }
    case Family::kLabels: {
      if (g.n() < 2) throw ConfigError("planted bug needs two vertices");
      // Vertex 0 either leaves its component or joins another one.
      bool alone = std::count(out.labels.begin(), out.labels.end(), out.labels[0]) == 1;
      out.labels[0] = alone ? out.labels[1] : g.n();
      break;
    }
    case Family::kCount:
      ++out.count;
      break;
    case Family::kMis:
      if (g.n() == 0) throw ConfigError("planted bug needs a vertex");
      out.in_set[0] = !out.in_set[0];
      break;
  }
}

bool verify(const RunConfig& cfg, Family family, const Graph& g, const Outcome& out) {
  switch (family) {
    case Family::kMsf:
      return out.edges == kruskal(g);
    case Family::kLabels:
      return canonical_labels(out.labels) == component_labels(g);
    case Family::kCount:
      return out.count == component_count(g);
    case Family::kMis:
      return out.in_set == greedy_mis(g, VertexRank(cfg.seed));
    case Family::kMatching:
      return out.edges == greedy_matching(g, EdgeRank(cfg.seed));
  }
  return false;
}

// Summary fields plus the one-cell result used by compare.
json summarize(Family family, const Graph& g, const Outcome& out, std::string* cell) {
  json s;
  std::vector<uint64_t> values;
  uint64_t headline = 0;
  switch (family) {
    case Family::kMsf: {
      Weight total = 0;
      std::vector<Weight> weight(g.m() ? g.max_edge_id() + 1 : 0);
      for (const Edge& e : g.edges()) weight[e.id] = e.w;
      for (EdgeId id : out.edges) total += weight.at(id);
      s = {{"edges", out.edges.size()}, {"total_weight", total}, {"components", g.n() - out.edges.size()}};
      values.assign(out.edges.begin(), out.edges.end());
      headline = static_cast<uint64_t>(total);
      break;
    }
    case Family::kMatching:
      s = {{"size", out.edges.size()}};
      values.assign(out.edges.begin(), out.edges.end());
      headline = out.edges.size();
      break;
    case Family::kLabels: {
      uint64_t count = 0;
      for (VertexId v = 0; v < out.labels.size(); ++v) count += out.labels[v] == v;
      s = {{"components", count}};
      values.assign(out.labels.begin(), out.labels.end());
      headline = count;
      break;
    }
    case Family::kCount:
      s = {{"components", out.count}};
      values = {out.count};
      headline = out.count;
      break;
    case Family::kMis:
      for (VertexId v = 0; v < out.in_set.size(); ++v) {
        if (out.in_set[v]) values.push_back(v);
      }
      s = {{"size", values.size()}};
      headline = values.size();
      break;
  }
  s["digest"] = hex(digest(values));
  *cell = std::to_string(headline) + ":" + s["digest"].get<std::string>();
  return s;
}

void write_result(const std::string& path, Family family, const Loaded& in, const Outcome& out) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path);
  auto orig = [&](VertexId v) -> uint64_t { return in.original.empty() ? v : in.original[v]; };
  const Graph& g = in.graph;
  switch (family) {
    case Family::kMsf: {
      std::vector<char> keep(g.m() ? g.max_edge_id() + 1 : 0, 0);
      for (EdgeId id : out.edges) keep[id] = 1;
      for (const Edge& e : g.edges()) {
        if (!keep[e.id]) continue;
        f << orig(e.u) << ' ' << orig(e.v);
        if (g.weighted()) f << ' ' << e.w;
        f << '\n';
      }
      break;
    }
    case Family::kMatching:
      for (EdgeId id : out.edges) f << id << '\n';
      break;
    case Family::kLabels:
      for (VertexId v = 0; v < out.labels.size(); ++v) f << orig(v) << ' ' << orig(out.labels[v]) << '\n';
      break;
    case Family::kCount:
      f << out.count << '\n';
      break;
    case Family::kMis:
      for (VertexId v = 0; v < out.in_set.size(); ++v) {
        if (out.in_set[v]) f << orig(v) << '\n';
      }
      break;
  }
  if (!f) throw IoError("cannot write " + path);
}

struct Execution {
  json doc;
  int exit_code = kExitPass;
  std::string cell;
};

Execution execute_config(const RunConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  validate(cfg);
  const AlgorithmInfo& info = algorithm_info(cfg.algorithm);
  Loaded in = load_input(cfg);
  const Graph& g = in.graph;

  RuntimeConfig rc = RuntimeConfig::for_input(g.n(), g.m(), cfg.eps, cfg.seed);
  if (cfg.space) rc.space = cfg.space;
  if (cfg.machines) rc.machines = cfg.machines;
  rc.quota_slack = cfg.quota_slack;
  rc.caching = cfg.caching;
  Runtime rt(rc);

  Outcome out = execute(cfg, rt, g);
  if (cfg.plant_bug) plant_bug(info.family, g, out);

  Execution ex;
  json& doc = ex.doc;
  doc["schema"] = kReportSchema;
  doc["config"] = config_to_json(cfg);
  doc["graph"] = {{"n", g.n()}, {"m", g.m()}, {"weighted", g.weighted()},
                  {"duplicates", in.duplicates}, {"self_loops", in.self_loops}};
  doc["runtime"] = {{"space", rc.space}, {"machines", rc.machines}, {"quota", rc.quota()}};
  doc["metrics"] = metrics_json(rt.metrics());
  if (!out.phases.is_null()) doc["phases"] = out.phases;
  doc["result"] = summarize(info.family, g, out, &ex.cell);
  if (!out.extra.empty()) doc["result"]["details"] = out.extra;
  if (cfg.verify) {
    bool ok = verify(cfg, info.family, g, out);
    doc["verdict"] = ok ? "pass" : "fail";
    ex.exit_code = ok ? kExitPass : kExitOracleFail;
  } else {
    doc["verdict"] = "skipped";
  }
  if (!cfg.result_path.empty()) write_result(cfg.result_path, info.family, in, out);
  doc["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return ex;
}

void write_report(const RunConfig& cfg, const json& doc) {
  if (cfg.output.empty()) return;
  std::ofstream f(cfg.output);
  if (!f || !(f << dump_report(doc))) throw IoError("cannot write " + cfg.output);
}

}  // namespace

const std::vector<std::string>& algorithms() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& a : kAlgorithms) v.emplace_back(a.name);
    return v;
  }();
  return names;
}

void validate(const RunConfig& cfg) {
  algorithm_info(cfg.algorithm);
  if (!(cfg.eps > 0 && cfg.eps < 1)) throw ConfigError("eps must lie in (0, 1), got " + std::to_string(cfg.eps));
  if (cfg.space == 1) throw ConfigError("space S must be at least 2");
  if (cfg.quota_slack == 0) throw ConfigError("quota_slack must be positive");
  if (cfg.input_file.empty() == cfg.generator.empty()) {
    throw ConfigError("give exactly one input source (file or generator)");
  }
  if (!(cfg.sample_prob >= 0 && cfg.sample_prob <= 1)) throw ConfigError("sample probability must lie in (0, 1]");
  if (cfg.plant_bug && !cfg.verify) throw ConfigError("a planted bug needs verification enabled");
}

Graph generate(const std::string& spec, uint64_t seed) {
  GeneratorSpec gs = parse_generator(spec);
  std::map<std::string, std::string> args = gs.args;
  auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = args.find(key);
    if (it == args.end()) return std::nullopt;
    std::string v = it->second;
    args.erase(it);
    return v;
  };
  auto need_vertex = [&](const std::string& key) {
    auto v = take(key);
    if (!v) throw ParseError("generator '" + gs.name + "' needs " + key + "=");
    uint64_t x = parse_uint(gs.name + " " + key, *v);
    if (x >= kNoVertex) throw ParseError(gs.name + " " + key + " out of range");
    return static_cast<VertexId>(x);
  };
  if (auto s = take("seed")) seed = parse_uint("seed", *s);
  std::string weights = take("weights").value_or("none");
  uint64_t max_weight = 1000000;
  if (auto w = take("maxw")) max_weight = parse_uint("maxw", *w);

  Graph g;
  if (gs.name == "random") {
    VertexId n = need_vertex("n");
    auto m = take("m");
    if (!m) throw ParseError("generator 'random' needs m=");
    g = generate_random(n, parse_uint("random m", *m), seed);
  } else if (gs.name == "two-cycles") {
    g = generate_two_cycles(need_vertex("k"));
  } else if (gs.name == "path") {
    g = generate_path(need_vertex("n"));
  } else if (gs.name == "tree") {
    g = generate_random_tree(need_vertex("n"), seed);
  } else if (gs.name == "star") {
    g = generate_star(need_vertex("n"));
  } else if (gs.name == "grid") {
    VertexId rows = need_vertex("rows");
    g = generate_grid(rows, need_vertex("cols"));
  } else {
    throw ParseError("unknown generator '" + gs.name + "'");
  }
  if (!args.empty()) throw ParseError("generator '" + gs.name + "' has no key '" + args.begin()->first + "'");

  if (weights == "random") return random_weights(g, static_cast<Weight>(max_weight), seed);
  if (weights == "degree") return degree_weights(g);
  if (weights == "id") return id_weights(g);
  if (weights != "none") throw ParseError("unknown weights '" + weights + "'");
  return g;
}

RunReport run(const RunConfig& cfg) {
  RunReport report;
  try {
    Execution ex = execute_config(cfg);
    report.doc = std::move(ex.doc);
    report.exit_code = ex.exit_code;
  } catch (const Error& e) {
    report.doc = {{"schema", kReportSchema},
                  {"config", config_to_json(cfg)},
                  {"error", {{"kind", e.kind()}, {"message", e.what()}}}};
    report.exit_code = kExitError;
  } catch (const std::exception& e) {
    report.doc = {{"schema", kReportSchema},
                  {"config", config_to_json(cfg)},
                  {"error", {{"kind", "InternalError"}, {"message", e.what()}}}};
    report.exit_code = kExitError;
  }
  try {
    write_report(cfg, report.doc);
  } catch (const IoError& e) {
    report.doc["error"] = {{"kind", e.kind()}, {"message", e.what()}};
    report.exit_code = kExitError;
  }
  return report;
}

json config_to_json(const RunConfig& cfg) {
  json j = {{"algorithm", cfg.algorithm},
            {"eps", cfg.eps},
            {"machines", cfg.machines},
            {"space", cfg.space},
            {"quota_slack", cfg.quota_slack},
            {"seed", cfg.seed},
            {"caching", cfg.caching},
            {"small_threshold", nullptr},
            {"sample_prob", cfg.sample_prob},
            {"output", cfg.output},
            {"result_path", cfg.result_path},
            {"verify", cfg.verify},
            {"plant_bug", cfg.plant_bug},
            {"label", cfg.label}};
  if (cfg.small_threshold) j["small_threshold"] = *cfg.small_threshold;
  if (!cfg.input_file.empty()) j["input"] = {{"file", cfg.input_file}};
  if (!cfg.generator.empty()) j["input"]["generator"] = cfg.generator;
  return j;
}

RunConfig config_from_json(const json& j) {
  RunConfig cfg;
  try {
    cfg.algorithm = j.at("algorithm").get<std::string>();
    const json& in = j.at("input");
    if (in.contains("file")) cfg.input_file = in["file"].get<std::string>();
    if (in.contains("generator")) cfg.generator = in["generator"].get<std::string>();
    cfg.eps = j.at("eps").get<double>();
    cfg.machines = j.at("machines").get<uint32_t>();
    cfg.space = j.at("space").get<uint64_t>();
    cfg.quota_slack = j.at("quota_slack").get<uint64_t>();
    cfg.seed = j.at("seed").get<uint64_t>();
    cfg.caching = j.at("caching").get<bool>();
    if (!j.at("small_threshold").is_null()) cfg.small_threshold = j["small_threshold"].get<uint64_t>();
    cfg.sample_prob = j.at("sample_prob").get<double>();
    cfg.output = j.at("output").get<std::string>();
    cfg.result_path = j.at("result_path").get<std::string>();
    cfg.verify = j.at("verify").get<bool>();
    cfg.plant_bug = j.at("plant_bug").get<bool>();
    cfg.label = j.at("label").get<std::string>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  return cfg;
}

void apply_overrides(RunConfig& cfg, const std::string& spec) {
  for (const auto& [key, val] : parse_pairs(spec)) {
    if (key == "alg") {
      cfg.algorithm = val;
    } else if (key == "gen") {
      cfg.generator = val;
      cfg.input_file.clear();
    } else if (key == "file") {
      cfg.input_file = val;
      cfg.generator.clear();
    } else if (key == "eps") {
      cfg.eps = parse_double(key, val);
    } else if (key == "machines") {
      cfg.machines = static_cast<uint32_t>(parse_uint(key, val));
    } else if (key == "space") {
      cfg.space = parse_uint(key, val);
    } else if (key == "slack") {
      cfg.quota_slack = parse_uint(key, val);
    } else if (key == "seed") {
      cfg.seed = parse_uint(key, val);
    } else if (key == "caching") {
      cfg.caching = parse_bool(key, val);
    } else if (key == "threshold") {
      cfg.small_threshold = parse_uint(key, val);
    } else if (key == "p") {
      cfg.sample_prob = parse_double(key, val);
    } else if (key == "verify") {
      cfg.verify = parse_bool(key, val);
    } else if (key == "label") {
      cfg.label = val;
    } else {
      throw ParseError("unknown override '" + key + "'");
    }
  }
}

std::string compare(const std::vector<RunConfig>& configs) {
  if (configs.empty()) throw ConfigError("compare needs at least one run");
  for (const auto& cfg : configs) validate(cfg);
  std::string first = input_identity(configs.front());
  for (const auto& cfg : configs) {
    if (input_identity(cfg) != first) {
      throw InputMismatch("runs use different inputs: " + first + " vs " + input_identity(cfg));
    }
  }
  std::ostringstream csv;
  csv << kCompareHeader << '\n';
  for (const auto& cfg : configs) {
    Execution ex = execute_config(cfg);
    write_report(cfg, ex.doc);
    std::string name = cfg.label;
    if (name.empty()) name = cfg.caching ? cfg.algorithm : cfg.algorithm + "/nocache";
    const json& m = ex.doc["metrics"];
    csv << name << ',' << m["rounds"] << ',' << m["shuffles"] << ',' << m["total_queries"] << ','
        << m["bytes_shuffled"] << ',' << m["bytes_kv"] << ',' << ex.cell << ','
        << ex.doc["verdict"].get<std::string>() << '\n';
  }
  return csv.str();
}

std::string dump_report(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace ampc::bench
