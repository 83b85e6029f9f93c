#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ampc/codec.hpp"
#include "ampc/errors.hpp"

namespace ampc {

struct RunMetrics {
  uint64_t rounds = 0;
  uint64_t shuffles = 0;
  uint64_t total_queries = 0;
  uint64_t total_writes = 0;
  uint64_t max_machine_comm = 0;
  uint64_t bytes_shuffled = 0;
  uint64_t bytes_kv = 0;

  bool operator==(const RunMetrics&) const = default;
};

/*
 * One distributed hash table D_i of the AMPC model. A store is filled while
 * its round executes and frozen at the round barrier; afterwards it only
 * serves reads. Keys map to lists of values (multimap semantics).
 */
class DhtStore {
 public:
  explicit DhtStore(uint64_t round_index) : round_index_(round_index) {}

  uint64_t round_index() const { return round_index_; }
  bool frozen() const { return frozen_; }

  void insert(Bytes key, Bytes value);
  void freeze() { frozen_ = true; }

  // All values stored under `key`; empty when the key is absent.
  const std::vector<Bytes>& values(const Bytes& key) const;

  size_t key_count() const { return entries_.size(); }
  size_t pair_count() const { return pairs_; }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (const auto& [key, vals] : entries_) fn(key, vals);
  }

 private:
  uint64_t round_index_;
  bool frozen_ = false;
  size_t pairs_ = 0;
  std::unordered_map<Bytes, std::vector<Bytes>> entries_;
};

using StoreHandle = std::shared_ptr<const DhtStore>;
using KeyValue = std::pair<Bytes, Bytes>;
using Grouped = std::vector<std::pair<Bytes, std::vector<Bytes>>>;

struct RuntimeConfig {
  uint64_t space = 16;  // S, in key-value operations
  uint32_t machines = 1;  // P
  uint64_t quota_slack = 8;
  bool caching = true;
  uint64_t seed = 0;
  unsigned threads = 1;
  uint64_t max_pair_bytes = 64;  // bound on key + value size

  uint64_t quota() const { return quota_slack * space; }

  // S = ceil(n^eps) (at least 2) and P = ceil(n_plus_m * ceil(log2 n_plus_m) / S).
  static RuntimeConfig for_input(uint64_t n, uint64_t m, double eps, uint64_t seed);
};

class Runtime;

/*
 * Per-machine execution handle for a single round. Confined to the thread
 * running that machine. Reads go through lookup() and are charged against
 * the machine's quota unless answered from the machine-local cache.
 */
class MachineContext {
 public:
  uint32_t machine_id() const { return machine_id_; }
  uint64_t round() const { return round_; }
  uint64_t space_quota() const { return space_; }
  uint64_t quota() const { return limit_; }
  uint64_t queries_used() const { return queries_; }
  uint64_t writes_used() const { return writes_.size(); }
  uint64_t bytes_read() const { return bytes_kv_; }
  bool caching() const { return caching_; }

  const std::vector<Bytes>& lookup(const DhtStore& store, const Bytes& key);
  // True when lookup(store, key) would be answered from the cache.
  bool cached(const DhtStore& store, const Bytes& key) const;
  void write(Bytes key, Bytes value);

  std::mt19937_64& rng() { return rng_; }

 private:
  friend class Runtime;
  MachineContext(uint32_t machine_id, uint64_t round, const RuntimeConfig& cfg,
                 std::atomic<uint64_t>* tally);

  uint32_t machine_id_;
  uint64_t round_;
  uint64_t space_;
  uint64_t limit_;
  uint64_t max_pair_bytes_;
  bool caching_;
  uint64_t queries_ = 0;
  uint64_t bytes_kv_ = 0;
  std::vector<KeyValue> writes_;
  std::unordered_map<Bytes, const std::vector<Bytes>*> cache_;
  std::mt19937_64 rng_;
  std::atomic<uint64_t>* tally_;
};

// Assignment of work items to machines for one round.
struct RoundPlan {
  uint32_t machine_count = 1;
  std::vector<uint64_t> items;
  uint64_t salt = 0;

  uint32_t machine_of(uint64_t item) const;
};

class Runtime {
 public:
  using MachineBody =
      std::function<void(MachineContext&, std::span<const uint64_t> items, const DhtStore& prev)>;
  using ItemBody = std::function<void(MachineContext&, uint64_t item, const DhtStore& prev)>;

  explicit Runtime(RuntimeConfig cfg);

  const RuntimeConfig& config() const { return cfg_; }
  const RunMetrics& metrics() const { return metrics_; }
  uint64_t current_round() const { return round_; }
  uint64_t global_query_tally() const { return tally_.load(); }

  // Plan for the next round (salted by its round index).
  RoundPlan plan(std::vector<uint64_t> items) const;
  RoundPlan plan_range(uint64_t count) const;

  // Runs one AMPC round: every machine with assigned items executes `body`
  // once, reading only `prev`. Writes are merged at the barrier into the
  // returned frozen store.
  StoreHandle run_round(const RoundPlan& plan, const StoreHandle& prev, const MachineBody& body);

  // Convenience wrapper that calls `body` per item on its assigned machine.
  StoreHandle for_each_item(std::vector<uint64_t> items, const StoreHandle& prev,
                            const ItemBody& body);
  StoreHandle for_each_item(uint64_t count, const StoreHandle& prev, const ItemBody& body);

  // A shuffle round: groups pairs by key, keys and values sorted by bytes.
  Grouped shuffle(std::vector<KeyValue> items);

  // Materializes grouped shuffle output as the store of the current round.
  StoreHandle publish(const Grouped& grouped);

  // A frozen empty store, for rounds that read nothing.
  StoreHandle empty_store() const;

  // A round executed in memory on a single machine (the small-graph finish).
  void local_round() {
    ++round_;
    ++metrics_.rounds;
  }

 private:
  RuntimeConfig cfg_;
  RunMetrics metrics_;
  std::atomic<uint64_t> tally_{0};
  uint64_t round_ = 0;
};

}  // namespace ampc
