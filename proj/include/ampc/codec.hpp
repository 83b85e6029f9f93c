#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace ampc {

using Bytes = std::string;

// One namespace tag per logical table sharing a DhtStore.
enum class Table : uint8_t {
  kAdjacency = 1,
  kParent = 2,
  kRoot = 3,
  kMisGraph = 4,
  kIncidence = 5,
  kComponent = 6,
  kTour = 7,
  kPivot = 8,
  kHeavyPath = 9,
  kCycle = 10,
  kVisit = 11,
  kEdge = 12,
  kState = 13,
  kUser = 200,
};

/*
 * Fixed-width big-endian field encoding. Byte-wise comparison of two encoded
 * values equals lexicographic comparison of their fields, which is what the
 * shuffle's value ordering relies on. Signed integers are stored with the
 * sign bit flipped for the same reason.
 */
class ByteWriter {
 public:
  ByteWriter() { out_.reserve(24); }

  ByteWriter& u8(uint8_t v) {
    out_.push_back(static_cast<char>(v));
    return *this;
  }
  ByteWriter& u32(uint32_t v) {
    for (int s = 24; s >= 0; s -= 8) out_.push_back(static_cast<char>((v >> s) & 0xff));
    return *this;
  }
  ByteWriter& u64(uint64_t v) {
    for (int s = 56; s >= 0; s -= 8) out_.push_back(static_cast<char>((v >> s) & 0xff));
    return *this;
  }
  ByteWriter& i64(int64_t v) { return u64(static_cast<uint64_t>(v) ^ (uint64_t{1} << 63)); }

  Bytes take() { return std::move(out_); }
  const Bytes& bytes() const { return out_; }

 private:
  Bytes out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string_view in) : in_(in) {}

  uint8_t u8() { return static_cast<uint8_t>(in_[pos_++]); }
  uint32_t u32() {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | static_cast<uint8_t>(in_[pos_++]);
    return v;
  }
  uint64_t u64() {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | static_cast<uint8_t>(in_[pos_++]);
    return v;
  }
  int64_t i64() { return static_cast<int64_t>(u64() ^ (uint64_t{1} << 63)); }

  bool done() const { return pos_ >= in_.size(); }

 private:
  std::string_view in_;
  size_t pos_ = 0;
};

// Key layout: [table tag][payload length][payload].
inline Bytes make_key(Table table, uint64_t id) {
  ByteWriter w;
  w.u8(static_cast<uint8_t>(table)).u8(8).u64(id);
  return w.take();
}

inline Bytes make_key(Table table, uint64_t a, uint64_t b) {
  ByteWriter w;
  w.u8(static_cast<uint8_t>(table)).u8(16).u64(a).u64(b);
  return w.take();
}

inline uint64_t key_id(std::string_view key) {
  ByteReader r(key.substr(2));
  return r.u64();
}

inline Table key_table(std::string_view key) { return static_cast<Table>(key[0]); }

}  // namespace ampc
