// Copyright 2026 The DyNo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dyno/serialize.h"

#include <string>

#include "dyno/errors.h"

namespace dyno {

namespace {

class Writer {
 public:
  void u16(std::uint16_t v) { uint_le(v, 2); }
  void u32(std::uint32_t v) { uint_le(v, 4); }
  void u64(std::uint64_t v) { uint_le(v, 8); }

  void uint_le(u128 v, std::size_t width) {
    for (std::size_t i = 0; i < width; ++i) {
      out_.push_back(static_cast<std::uint8_t>(v & 0xff));
      v >>= 8;
    }
  }

  void raw(const std::string& s) { out_.insert(out_.end(), s.begin(), s.end()); }

  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint16_t u16() { return static_cast<std::uint16_t>(uint_le(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(uint_le(4)); }
  std::uint64_t u64() { return static_cast<std::uint64_t>(uint_le(8)); }

  u128 uint_le(std::size_t width) {
    need(width);
    u128 v = 0;
    for (std::size_t i = 0; i < width; ++i) {
      v |= static_cast<u128>(bytes_[pos_ + i]) << (8 * i);
    }
    pos_ += width;
    return v;
  }

  std::string raw(std::size_t n) {
    need(n);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
    pos_ += n;
    return s;
  }

  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) {
    if (bytes_.size() - pos_ < n) {
      throw ParseError("serialized object truncated");
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> serialize_ciphertext(const Ciphertext& ct) {
  if (ct.slot > 0xffffffffu) {
    throw RangeError("ciphertext slot exceeds the 4-byte wire field");
  }
  Writer w;
  w.u32(static_cast<std::uint32_t>(ct.slot));
  w.u16(static_cast<std::uint16_t>(ct.label.bytes().size()));
  w.raw(ct.label.bytes());
  w.u32(static_cast<std::uint32_t>(ct.c.size()));
  const std::size_t width = ct.c.modulus().element_bytes();
  for (std::size_t i = 0; i < ct.c.size(); ++i) {
    w.uint_le(ct.c[i], width);
  }
  return w.take();
}

Ciphertext deserialize_ciphertext(std::span<const std::uint8_t> bytes,
                                  const Modulus& mod) {
  Reader r(bytes);
  const std::uint64_t slot = r.u32();
  const std::size_t label_len = r.u16();
  Label label(r.raw(label_len));
  const std::size_t m = r.u32();
  const std::size_t width = mod.element_bytes();
  std::vector<u128> elems(m);
  for (std::size_t i = 0; i < m; ++i) {
    const u128 v = r.uint_le(width);
    if (v > mod.mask()) {
      throw ParseError("serialized element not reduced mod q");
    }
    elems[i] = v;
  }
  if (!r.done()) throw ParseError("trailing bytes after ciphertext");
  return Ciphertext{slot, label, RingVector(std::move(elems), mod)};
}

std::size_t ciphertext_payload_bytes(const Ciphertext& ct) {
  return ct.c.size() * ct.c.modulus().element_bytes();
}

std::size_t ciphertext_header_bytes(const Ciphertext& ct) {
  return 4 + 2 + ct.label.bytes().size() + 4;
}

std::vector<std::uint8_t> serialize_decryption_key(const DecryptionKey& dk) {
  Writer w;
  w.u16(static_cast<std::uint16_t>(dk.label.bytes().size()));
  w.raw(dk.label.bytes());
  w.u32(static_cast<std::uint32_t>(dk.subset.size()));
  for (const std::uint64_t slot : dk.subset) {
    w.u64(slot);
  }
  const Modulus& mod = dk.y.front().modulus();
  w.u32(static_cast<std::uint32_t>(dk.y.front().size()));
  w.uint_le(dk.z, mod.element_bytes());
  return w.take();
}

DecryptionKey deserialize_decryption_key(std::span<const std::uint8_t> bytes,
                                         std::vector<RingVector> y,
                                         const Modulus& mod) {
  Reader r(bytes);
  const std::size_t label_len = r.u16();
  Label label(r.raw(label_len));
  const std::size_t count = r.u32();
  std::vector<std::uint64_t> subset(count);
  for (std::size_t i = 0; i < count; ++i) {
    subset[i] = r.u64();
  }
  const std::size_t m = r.u32();
  const u128 z = r.uint_le(mod.element_bytes());
  if (!r.done()) throw ParseError("trailing bytes after decryption key");
  if (z > mod.mask()) throw ParseError("serialized z not reduced mod q");
  if (y.size() != count) {
    throw DimensionError("coefficient vectors do not match subset size");
  }
  for (const RingVector& y_i : y) {
    if (y_i.size() != m || y_i.modulus() != mod) {
      throw DimensionError("coefficient vectors do not match key dimensions");
    }
  }
  return DecryptionKey{label, std::move(subset), std::move(y), z};
}

std::size_t decryption_key_payload_bytes(const DecryptionKey& dk) {
  return dk.y.front().modulus().element_bytes();
}

std::size_t decryption_key_header_bytes(const DecryptionKey& dk) {
  return 2 + dk.label.bytes().size() + 4 + 8 * dk.subset.size() + 4;
}

std::size_t coefficient_slot_bytes(std::uint64_t scale_y) {
  if (scale_y == 0) throw DomainError("coefficient scale must be positive");
  const u128 span = static_cast<u128>(scale_y) * 10;
  // Smallest b with 2^b >= 10 * s_y; exact, no floating point.
  std::size_t bits = 0;
  while ((u128{1} << bits) < span) ++bits;
  return (bits + 7) / 8;
}

std::vector<std::uint8_t> serialize_coefficients(
    const std::vector<i128>& scaled, std::size_t slot_bytes) {
  if (slot_bytes == 0 || slot_bytes > 16) {
    throw DomainError("coefficient slot width must lie in [1, 16] bytes");
  }
  const i128 bound = i128{1} << (8 * slot_bytes - 1);
  Writer w;
  for (const i128 v : scaled) {
    if (v >= bound || v < -bound) {
      throw RangeError("coefficient " + i128_to_string(v) +
                       " exceeds its wire slot");
    }
    w.uint_le(static_cast<u128>(v) & ((slot_bytes == 16 ? ~u128{0} : (u128{1} << (8 * slot_bytes)) - 1)),
              slot_bytes);
  }
  return w.take();
}

std::vector<i128> deserialize_coefficients(
    std::span<const std::uint8_t> bytes, std::size_t slot_bytes) {
  if (slot_bytes == 0 || slot_bytes > 16) {
    throw DomainError("coefficient slot width must lie in [1, 16] bytes");
  }
  if (bytes.size() % slot_bytes != 0) {
    throw ParseError("coefficient stream length not a slot multiple");
  }
  Reader r(bytes);
  std::vector<i128> out;
  out.reserve(bytes.size() / slot_bytes);
  const u128 sign_bit = u128{1} << (8 * slot_bytes - 1);
  while (!r.done()) {
    u128 v = r.uint_le(slot_bytes);
    if (v & sign_bit) {
      // Sign-extend the two's-complement slot.
      if (slot_bytes < 16) {
        v |= ~((u128{1} << (8 * slot_bytes)) - 1);
      }
      out.push_back(static_cast<i128>(v));
    } else {
      out.push_back(static_cast<i128>(v));
    }
  }
  return out;
}

}  // namespace dyno
