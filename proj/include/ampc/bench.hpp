#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ampc/graph.hpp"
#include "json.hpp"

namespace ampc::bench {

// Exit codes of run().
inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitOracleFail = 2;

inline constexpr int kReportSchema = 1;

struct RunConfig {
  std::string algorithm;
  std::string input_file;  // edge-list file, or
  std::string generator;   // `name:key=val,...`
  double eps = 0.5;
  uint32_t machines = 0;   // 0: derived from the input size
  uint64_t space = 0;      // 0: ceil(n^eps)
  uint64_t quota_slack = 8;
  uint64_t seed = 0;
  bool caching = true;
  std::optional<uint64_t> small_threshold;  // unset: algorithm default
  double sample_prob = 0;  // two-cycle; 0 selects max(1/64, n^(-eps/2))
  std::string output;       // report path; empty writes nowhere
  std::string result_path;  // optional result file
  bool verify = false;
  // Corrupts the result before verification (flips one MSF edge, one MIS
  // vertex, one matching edge or one component).
  bool plant_bug = false;
  std::string label;  // compare row name; empty selects the algorithm name
};

struct RunReport {
  nlohmann::json doc;
  int exit_code = kExitError;
};

// Names accepted by RunConfig::algorithm.
const std::vector<std::string>& algorithms();

// Throws ConfigError.
void validate(const RunConfig& cfg);

// Throws ParseError on unknown names, unknown keys or malformed values.
Graph generate(const std::string& spec, uint64_t seed);

// Never throws for library errors: they become an "error" object with a
// stable "kind" and exit code 1.
RunReport run(const RunConfig& cfg);

nlohmann::json config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& j);

// Overrides fields from `key=val,...` (alg, gen, file, eps, machines, space,
// slack, seed, caching, threshold, p, verify, label).
void apply_overrides(RunConfig& cfg, const std::string& spec);

// Column order is fixed.
inline constexpr const char* kCompareHeader =
    "algorithm,rounds,shuffles,total_queries,bytes_shuffled,bytes_kv,result,check";

// Throws InputMismatch unless all configs name the same input, and rethrows
// the first run error.
std::string compare(const std::vector<RunConfig>& configs);

std::string dump_report(const nlohmann::json& doc);

}  // namespace ampc::bench
