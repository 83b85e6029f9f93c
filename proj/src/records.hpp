#pragma once

#include "ampc/codec.hpp"
#include "ampc/graph.hpp"

namespace ampc::records {

struct IncidenceRecord {
  EdgeKey key;
  VertexId to;
};

// Encoded so that byte order equals EdgeKey order.
inline Bytes encode_incidence(const EdgeKey& key, VertexId to) {
  ByteWriter w;
  w.u8(key.real ? 1 : 0).i64(key.weight).u32(key.id).u32(to);
  return w.take();
}

inline IncidenceRecord decode_incidence(const Bytes& b) {
  ByteReader r(b);
  IncidenceRecord rec;
  rec.key.real = r.u8() != 0;
  rec.key.weight = r.i64();
  rec.key.id = r.u32();
  rec.to = r.u32();
  return rec;
}

inline Bytes encode_u32(uint32_t v) {
  ByteWriter w;
  w.u32(v);
  return w.take();
}

inline uint32_t decode_u32(const Bytes& b) { return ByteReader(b).u32(); }

inline Bytes encode_u64(uint64_t v) {
  ByteWriter w;
  w.u64(v);
  return w.take();
}

inline uint64_t decode_u64(const Bytes& b) { return ByteReader(b).u64(); }

}  // namespace ampc::records
