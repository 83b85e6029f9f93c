#pragma once

#include <algorithm>
#include <vector>

#include "ampc/runtime.hpp"

namespace ampc {

// Lookups charged against one query process's fetch budget. Cache hits are
// free; a fetch that would exceed the budget returns nullptr.
class BudgetedReader {
 public:
  explicit BudgetedReader(MachineContext& ctx) : ctx_(ctx) {}

  void reset(uint64_t budget) {
    left_ = budget;
    used_ = 0;
  }
  uint64_t used() const { return used_; }

  const std::vector<Bytes>* fetch(const DhtStore& store, const Bytes& key) {
    if (left_ == 0 && !ctx_.cached(store, key)) return nullptr;
    uint64_t before = ctx_.queries_used();
    const auto& vals = ctx_.lookup(store, key);
    uint64_t charged = ctx_.queries_used() - before;
    left_ -= charged;
    used_ += charged;
    return &vals;
  }

 private:
  MachineContext& ctx_;
  uint64_t left_ = 0;
  uint64_t used_ = 0;
};

// Budget for the next of `remaining` items on this machine: the per-item
// budget, cut so every later item keeps at least one fetch.
inline uint64_t item_budget(const MachineContext& ctx, uint64_t budget, uint64_t remaining) {
  uint64_t room = ctx.quota() - ctx.queries_used();
  return std::min(budget, room > remaining ? room - remaining : 0);
}

}  // namespace ampc
