#include "ampc/runtime.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>
#include <unordered_map>

#include "ampc/hashing.hpp"

namespace ampc {

namespace {

const std::vector<Bytes> kNoValues;

}  // namespace

void DhtStore::insert(Bytes key, Bytes value) {
  if (frozen_) throw StoreFrozen("write to frozen store of round " + std::to_string(round_index_));
  entries_[std::move(key)].push_back(std::move(value));
  ++pairs_;
}

const std::vector<Bytes>& DhtStore::values(const Bytes& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? kNoValues : it->second;
}

RuntimeConfig RuntimeConfig::for_input(uint64_t n, uint64_t m, double eps, uint64_t seed) {
  RuntimeConfig cfg;
  cfg.seed = seed;
  cfg.space = std::max<uint64_t>(2, static_cast<uint64_t>(std::ceil(std::pow(std::max<uint64_t>(n, 1), eps))));
  uint64_t total = std::max<uint64_t>(n + m, 2);
  uint64_t log_total = static_cast<uint64_t>(std::ceil(std::log2(static_cast<double>(total))));
  cfg.machines = static_cast<uint32_t>(std::max<uint64_t>(1, (total * log_total + cfg.space - 1) / cfg.space));
  return cfg;
}

MachineContext::MachineContext(uint32_t machine_id, uint64_t round, const RuntimeConfig& cfg,
                               std::atomic<uint64_t>* tally)
    : machine_id_(machine_id),
      round_(round),
      space_(cfg.space),
      limit_(cfg.quota()),
      max_pair_bytes_(cfg.max_pair_bytes),
      caching_(cfg.caching),
      rng_(hash3(cfg.seed, round, machine_id)),
      tally_(tally) {}

namespace {

// Entries are per store: the same key may be read from several rounds.
Bytes cache_key_of(const DhtStore& store, const Bytes& key) {
  auto addr = reinterpret_cast<uintptr_t>(&store);
  Bytes out(reinterpret_cast<const char*>(&addr), sizeof(addr));
  out += key;
  return out;
}

}  // namespace

bool MachineContext::cached(const DhtStore& store, const Bytes& key) const {
  return caching_ && cache_.count(cache_key_of(store, key)) > 0;
}

const std::vector<Bytes>& MachineContext::lookup(const DhtStore& store, const Bytes& key) {
  if (!store.frozen() || store.round_index() >= round_) {
    throw StoreFrozen("lookup into a store that is not from a previous round");
  }
  Bytes cache_key;
  if (caching_) {
    cache_key = cache_key_of(store, key);
    auto it = cache_.find(cache_key);
    if (it != cache_.end()) return *it->second;
  }
  if (queries_ + 1 > limit_) {
    throw QuotaExceeded(machine_id_, "machine " + std::to_string(machine_id_) + " exceeded " +
                                         std::to_string(limit_) + " queries in round " +
                                         std::to_string(round_));
  }
  ++queries_;
  tally_->fetch_add(1, std::memory_order_relaxed);
  const auto& vals = store.values(key);
  bytes_kv_ += key.size();
  for (const auto& v : vals) bytes_kv_ += v.size();
  if (caching_) cache_.emplace(std::move(cache_key), &vals);
  return vals;
}

void MachineContext::write(Bytes key, Bytes value) {
  if (key.size() + value.size() > max_pair_bytes_) {
    throw OversizedPair("key-value pair of " + std::to_string(key.size() + value.size()) + " bytes");
  }
  if (writes_.size() + 1 > limit_) {
    throw QuotaExceeded(machine_id_, "machine " + std::to_string(machine_id_) + " exceeded " +
                                         std::to_string(limit_) + " writes in round " +
                                         std::to_string(round_));
  }
  writes_.emplace_back(std::move(key), std::move(value));
}

uint32_t RoundPlan::machine_of(uint64_t item) const {
  return static_cast<uint32_t>(hash_combine(salt, item) % machine_count);
}

Runtime::Runtime(RuntimeConfig cfg) : cfg_(cfg) {
  if (cfg_.space < 2) throw ConfigError("space S must be at least 2");
  if (cfg_.machines == 0) throw ConfigError("machine count must be positive");
  if (cfg_.quota_slack == 0) throw ConfigError("quota_slack must be positive");
  if (cfg_.threads == 0) cfg_.threads = 1;
}

RoundPlan Runtime::plan(std::vector<uint64_t> items) const {
  RoundPlan p;
  p.machine_count = cfg_.machines;
  p.items = std::move(items);
  p.salt = hash_combine(cfg_.seed, round_ + 1);
  return p;
}

RoundPlan Runtime::plan_range(uint64_t count) const {
  std::vector<uint64_t> items(count);
  for (uint64_t i = 0; i < count; ++i) items[i] = i;
  return plan(std::move(items));
}

StoreHandle Runtime::run_round(const RoundPlan& plan, const StoreHandle& prev,
                               const MachineBody& body) {
  if (!prev || !prev->frozen()) throw StoreFrozen("round input store must be frozen");
  ++round_;
  ++metrics_.rounds;

  std::vector<std::vector<uint64_t>> buckets(plan.machine_count);
  for (uint64_t item : plan.items) buckets[plan.machine_of(item)].push_back(item);
  std::vector<uint32_t> active;
  for (uint32_t m = 0; m < plan.machine_count; ++m) {
    if (!buckets[m].empty()) active.push_back(m);
  }

  std::vector<std::unique_ptr<MachineContext>> contexts(active.size());
  std::vector<std::exception_ptr> errors(active.size());
  auto run_machine = [&](size_t slot) {
    uint32_t m = active[slot];
    contexts[slot].reset(new MachineContext(m, round_, cfg_, &tally_));
    try {
      body(*contexts[slot], buckets[m], *prev);
    } catch (...) {
      errors[slot] = std::current_exception();
    }
  };

  unsigned threads = std::min<unsigned>(cfg_.threads, static_cast<unsigned>(active.size()));
  if (threads <= 1) {
    for (size_t s = 0; s < active.size(); ++s) run_machine(s);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (size_t s = next.fetch_add(1); s < active.size(); s = next.fetch_add(1)) run_machine(s);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  // Barrier: merge writes in machine order.
  auto next_store = std::make_shared<DhtStore>(round_);
  for (auto& ctx : contexts) {
    metrics_.total_queries += ctx->queries_;
    metrics_.total_writes += ctx->writes_.size();
    metrics_.bytes_kv += ctx->bytes_kv_;
    metrics_.max_machine_comm =
        std::max<uint64_t>(metrics_.max_machine_comm, ctx->queries_ + ctx->writes_.size());
    for (auto& [k, v] : ctx->writes_) next_store->insert(std::move(k), std::move(v));
  }
  next_store->freeze();
  return next_store;
}

StoreHandle Runtime::for_each_item(std::vector<uint64_t> items, const StoreHandle& prev,
                                   const ItemBody& body) {
  return run_round(plan(std::move(items)), prev,
                   [&](MachineContext& ctx, std::span<const uint64_t> mine, const DhtStore& store) {
                     for (uint64_t item : mine) body(ctx, item, store);
                   });
}

StoreHandle Runtime::for_each_item(uint64_t count, const StoreHandle& prev, const ItemBody& body) {
  return run_round(plan_range(count), prev,
                   [&](MachineContext& ctx, std::span<const uint64_t> mine, const DhtStore& store) {
                     for (uint64_t item : mine) body(ctx, item, store);
                   });
}

Grouped Runtime::shuffle(std::vector<KeyValue> items) {
  ++round_;
  ++metrics_.rounds;
  ++metrics_.shuffles;
  for (const auto& [k, v] : items) metrics_.bytes_shuffled += k.size() + v.size();
  Grouped out;
  std::unordered_map<Bytes, size_t> slot;
  slot.reserve(items.size());
  for (auto& [k, v] : items) {
    auto [it, fresh] = slot.try_emplace(k, out.size());
    if (fresh) out.emplace_back(std::move(k), std::vector<Bytes>{});
    out[it->second].second.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& group : out) std::sort(group.second.begin(), group.second.end());
  return out;
}

StoreHandle Runtime::publish(const Grouped& grouped) {
  auto store = std::make_shared<DhtStore>(round_);
  for (const auto& [k, vals] : grouped) {
    for (const auto& v : vals) {
      if (k.size() + v.size() > cfg_.max_pair_bytes) {
        throw OversizedPair("key-value pair of " + std::to_string(k.size() + v.size()) + " bytes");
      }
      store->insert(k, v);
      ++metrics_.total_writes;
    }
  }
  store->freeze();
  return store;
}

StoreHandle Runtime::empty_store() const {
  auto store = std::make_shared<DhtStore>(round_);
  store->freeze();
  return store;
}

}  // namespace ampc
