#pragma once

#include <cstdint>

namespace ampc {

// splitmix64 finalizer
constexpr uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr uint64_t hash_combine(uint64_t a, uint64_t b) { return mix64(a ^ mix64(b)); }

constexpr uint64_t hash3(uint64_t a, uint64_t b, uint64_t c) {
  return hash_combine(hash_combine(a, b), c);
}

// Bernoulli(p) decided by a 64-bit hash value.
inline bool hash_below(uint64_t h, double p) {
  if (p >= 1.0) return true;
  if (p <= 0.0) return false;
  return static_cast<double>(h) < p * 18446744073709551616.0;
}

}  // namespace ampc
