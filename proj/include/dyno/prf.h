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
//
// Pseudorandom expansion of a 256-bit client key and a label into a ring
// vector: PRF: {0,1}^256 x L -> Z_q^m. The construction is AES-256 in
// counter mode offset by a hashed label:
//
//   digest  = SHA-256(label) truncated to 16 bytes
//   elem[j] = first ceil(bits/8) bytes (big-endian) of
//             AES-256(key, digest XOR big_endian_128(j)), masked to `bits`
//
// The per-element counter makes truncation exact: expanding m' <= m elements
// yields a strict prefix of the length-m expansion, which keeps encryption
// and key generation consistent when different labels carry different vector
// lengths.

#ifndef DYNO_PRF_H_
#define DYNO_PRF_H_

#include <array>
#include <cstdint>
#include <string>

#include "dyno/ring.h"
#include "dyno/rng.h"

namespace dyno {

// 256-bit client encryption key.
struct PrfKey {
  std::array<std::uint8_t, 32> bytes{};

  static PrfKey random(Rng& rng);
  bool operator==(const PrfKey& other) const { return bytes == other.bytes; }
};

// A byte string binding ciphertexts and keys to one analysis. The empty
// label doubles as the "no label" marker of the label-free scheme. Length
// is capped at 65535 so the 2-byte serialized length field is exact.
class Label {
 public:
  static constexpr std::size_t kMaxBytes = 65535;

  Label() = default;
  explicit Label(std::string bytes);

  static Label bottom() { return Label(); }

  const std::string& bytes() const { return bytes_; }
  bool operator==(const Label& other) const { return bytes_ == other.bytes_; }
  bool operator!=(const Label& other) const { return !(*this == other); }
  bool operator<(const Label& other) const { return bytes_ < other.bytes_; }

 private:
  std::string bytes_;
};

// Deterministic expansion to m elements of [0, q). Throws DimensionError for
// m = 0.
RingVector prf_expand(const PrfKey& key, const Label& label, std::size_t m,
                      const Modulus& mod);

}  // namespace dyno

#endif  // DYNO_PRF_H_
