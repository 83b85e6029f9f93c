#include <doctest.h>

#include "ampc/codec.hpp"
#include "ampc/runtime.hpp"

using namespace ampc;

namespace {

Bytes b(const std::string& s) { return Bytes(s); }

RuntimeConfig small_config(uint32_t machines = 1, uint64_t slack = 8) {
  RuntimeConfig cfg;
  cfg.space = 16;
  cfg.machines = machines;
  cfg.quota_slack = slack;
  return cfg;
}

// Publishes key "k" = "v0" so the next round has something to read.
StoreHandle seed_store(Runtime& rt) {
  return rt.publish(rt.shuffle({{b("k"), b("v0")}}));
}

}  // namespace

TEST_CASE("reads observe the previous round, not same-round writes") {
  Runtime rt(small_config());
  auto d0 = rt.empty_store();
  auto d1 = rt.for_each_item(1, d0, [](MachineContext& ctx, uint64_t, const DhtStore& prev) {
    ctx.write(b("k"), b("fresh"));
    CHECK(ctx.lookup(prev, b("k")).empty());
  });
  CHECK(d1->values(b("k")) == std::vector<Bytes>{b("fresh")});
  rt.for_each_item(1, d1, [](MachineContext& ctx, uint64_t, const DhtStore& prev) {
    ctx.write(b("k"), b("newer"));
    CHECK(ctx.lookup(prev, b("k")) == std::vector<Bytes>{b("fresh")});
  });
}

TEST_CASE("values written in a round carry their round of origin only forward") {
  Runtime rt(small_config(4));
  auto store = rt.empty_store();
  for (int r = 0; r < 5; ++r) {
    store = rt.for_each_item(8, store, [&](MachineContext& ctx, uint64_t item, const DhtStore& prev) {
      for (const auto& v : ctx.lookup(prev, make_key(Table::kRoot, item))) {
        CHECK(ByteReader(v).u64() < ctx.round());
      }
      ByteWriter w;
      w.u64(ctx.round());
      ctx.write(make_key(Table::kRoot, item), w.take());
    });
  }
}

TEST_CASE("lookup into an unfrozen or current store is rejected") {
  Runtime rt(small_config());
  DhtStore open(0);
  rt.for_each_item(1, rt.empty_store(), [&](MachineContext& ctx, uint64_t, const DhtStore&) {
    CHECK_THROWS_AS(ctx.lookup(open, b("k")), StoreFrozen);
  });
  DhtStore frozen(0);
  frozen.freeze();
  CHECK_THROWS_AS(frozen.insert(b("k"), b("v")), StoreFrozen);
}

TEST_CASE("query quota boundary") {
  Runtime rt(small_config(1, 1));
  auto d0 = rt.empty_store();
  CHECK_NOTHROW(rt.for_each_item(1, d0, [](MachineContext& ctx, uint64_t, const DhtStore& prev) {
    for (int i = 0; i < 16; ++i) ctx.lookup(prev, make_key(Table::kRoot, i));
  }));
  CHECK_THROWS_AS(rt.for_each_item(1, d0, [](MachineContext& ctx, uint64_t, const DhtStore& prev) {
    for (int i = 0; i < 17; ++i) ctx.lookup(prev, make_key(Table::kRoot, i));
  }), QuotaExceeded);
}

TEST_CASE("write quota boundary") {
  Runtime rt(small_config(1, 1));
  CHECK_THROWS_AS(rt.for_each_item(1, rt.empty_store(), [](MachineContext& ctx, uint64_t, const DhtStore&) {
    for (int i = 0; i < 17; ++i) ctx.write(make_key(Table::kRoot, i), Bytes{});
  }), QuotaExceeded);
}

TEST_CASE("query counters add across machines") {
  Runtime rt(small_config(2));
  auto d0 = rt.empty_store();
  RoundPlan plan = rt.plan_range(64);
  uint32_t machines_seen = 0;
  rt.run_round(plan, d0, [&](MachineContext& ctx, std::span<const uint64_t>, const DhtStore& prev) {
    ++machines_seen;
    int count = ctx.machine_id() == 0 ? 3 : 5;
    for (int i = 0; i < count; ++i) ctx.lookup(prev, make_key(Table::kRoot, i));
  });
  REQUIRE(machines_seen == 2);
  CHECK(rt.metrics().total_queries == 8);
  CHECK(rt.metrics().max_machine_comm >= 5);
  CHECK(rt.global_query_tally() == rt.metrics().total_queries);
}

TEST_CASE("lookup of an absent key costs one query") {
  Runtime rt(small_config());
  rt.for_each_item(1, rt.empty_store(), [](MachineContext& ctx, uint64_t, const DhtStore& prev) {
    CHECK(ctx.lookup(prev, b("missing")).empty());
    CHECK(ctx.queries_used() == 1);
  });
}

TEST_CASE("cache hits are free; without caching every lookup counts") {
  Runtime rt(small_config());
  auto d = seed_store(rt);
  rt.for_each_item(1, d, [](MachineContext& ctx, uint64_t, const DhtStore& prev) {
    auto first = ctx.lookup(prev, b("k"));
    auto second = ctx.lookup(prev, b("k"));
    CHECK(first == second);
    CHECK(ctx.queries_used() == 1);
  });

  RuntimeConfig cfg = small_config();
  cfg.caching = false;
  Runtime plain(cfg);
  auto e = seed_store(plain);
  plain.for_each_item(1, e, [](MachineContext& ctx, uint64_t, const DhtStore& prev) {
    for (int i = 0; i < 7; ++i) ctx.lookup(prev, b("k"));
    CHECK(ctx.queries_used() == 7);
  });
}

TEST_CASE("cache distinguishes stores") {
  Runtime rt(small_config());
  auto d1 = rt.publish(rt.shuffle({{b("k"), b("one")}}));
  auto d2 = rt.publish(rt.shuffle({{b("k"), b("two")}}));
  rt.for_each_item(1, d2, [&](MachineContext& ctx, uint64_t, const DhtStore& prev) {
    CHECK(ctx.lookup(*d1, b("k")).front() == b("one"));
    CHECK(ctx.lookup(prev, b("k")).front() == b("two"));
  });
}

TEST_CASE("shuffle groups by key with values sorted") {
  Runtime rt(small_config());
  Grouped g = rt.shuffle({{b("a"), b("3")}, {b("b"), b("2")}, {b("a"), b("1")}});
  REQUIRE(g.size() == 2);
  CHECK(g[0].first == b("a"));
  CHECK(g[0].second == std::vector<Bytes>{b("1"), b("3")});
  CHECK(g[1].first == b("b"));
  CHECK(g[1].second == std::vector<Bytes>{b("2")});
  CHECK(rt.metrics().shuffles == 1);
}

TEST_CASE("empty shuffle still counts") {
  Runtime rt(small_config());
  CHECK(rt.shuffle({}).empty());
  CHECK(rt.metrics().shuffles == 1);
  CHECK(rt.metrics().bytes_shuffled == 0);
}

TEST_CASE("distinct keys give singleton groups and exact byte count") {
  Runtime rt(small_config());
  std::vector<KeyValue> items;
  uint64_t bytes = 0;
  for (uint64_t i = 0; i < 50; ++i) {
    items.emplace_back(make_key(Table::kRoot, i), b("value"));
    bytes += items.back().first.size() + 5;
  }
  Grouped g = rt.shuffle(items);
  CHECK(g.size() == 50);
  for (const auto& [k, vals] : g) CHECK(vals.size() == 1);
  CHECK(rt.metrics().bytes_shuffled == bytes);
}

TEST_CASE("oversized pairs are rejected") {
  Runtime rt(small_config());
  CHECK_THROWS_AS(rt.for_each_item(1, rt.empty_store(), [](MachineContext& ctx, uint64_t, const DhtStore&) {
    ctx.write(b("k"), Bytes(100, 'x'));
  }), OversizedPair);
}

TEST_CASE("metrics and outputs are identical across thread counts") {
  auto run = [](unsigned threads) {
    RuntimeConfig cfg = small_config(8);
    cfg.threads = threads;
    cfg.seed = 42;
    Runtime rt(cfg);
    auto store = rt.empty_store();
    for (int r = 0; r < 4; ++r) {
      store = rt.for_each_item(200, store, [](MachineContext& ctx, uint64_t item, const DhtStore& prev) {
        uint64_t sum = item;
        for (const auto& v : ctx.lookup(prev, make_key(Table::kRoot, (item * 7) % 200))) sum += ByteReader(v).u64();
        ByteWriter w;
        w.u64(sum);
        ctx.write(make_key(Table::kRoot, item), w.take());
      });
    }
    std::vector<uint64_t> out;
    for (uint64_t i = 0; i < 200; ++i) out.push_back(ByteReader(store->values(make_key(Table::kRoot, i)).front()).u64());
    return std::pair{out, rt.metrics()};
  };
  auto one = run(1);
  auto four = run(4);
  CHECK(one.first == four.first);
  CHECK(one.second == four.second);
}

TEST_CASE("configuration validation") {
  RuntimeConfig cfg;
  cfg.space = 1;
  CHECK_THROWS_AS(Runtime{cfg}, ConfigError);
  cfg = RuntimeConfig{};
  cfg.machines = 0;
  CHECK_THROWS_AS(Runtime{cfg}, ConfigError);
  auto sized = RuntimeConfig::for_input(10000, 100000, 0.5, 1);
  CHECK(sized.space == 100);
  CHECK(sized.machines == (110000 * 17 + 99) / 100);
}
