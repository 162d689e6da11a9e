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
// Arithmetic over Z_q for power-of-two q = 2^bits, 16 <= bits <= 127, plus
// signed fixed-point conversion between reals and ring elements. Restricting
// q to powers of two keeps uniform sampling exact (plain bit masking, no
// rejection and no modular bias) and makes serialized sizes exact multiples
// of the element byte width.

#ifndef DYNO_RING_H_
#define DYNO_RING_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dyno/errors.h"

namespace dyno {

using u128 = unsigned __int128;
using i128 = __int128;

std::string u128_to_string(u128 v);
std::string i128_to_string(i128 v);

// The modulus q = 2^bits. Immutable; all reductions are bit masks.
class Modulus {
 public:
  static constexpr int kMinBits = 16;
  static constexpr int kMaxBits = 127;

  explicit Modulus(int bits);

  int bits() const { return bits_; }
  // q - 1; also the reduction mask.
  u128 mask() const { return (u128{1} << bits_) - 1; }
  u128 q() const { return u128{1} << bits_; }
  u128 half() const { return u128{1} << (bits_ - 1); }
  u128 reduce(u128 v) const { return v & mask(); }
  // ceil(bits / 8): the serialized width of one element.
  std::size_t element_bytes() const {
    return (static_cast<std::size_t>(bits_) + 7) / 8;
  }

  bool operator==(const Modulus& other) const { return bits_ == other.bits_; }
  bool operator!=(const Modulus& other) const { return !(*this == other); }

 private:
  int bits_;
};

// Maps [0, q/2) to itself and [q/2, q) to e - q.
i128 centered_lift(u128 e, const Modulus& mod);

// Inverse of centered_lift; requires |v| < q/2. For power-of-two q the lift
// is the two's-complement bit pattern masked to `bits` bits.
u128 lift_signed(i128 v, const Modulus& mod);

// A vector of reduced ring elements sharing one modulus.
class RingVector {
 public:
  RingVector(std::vector<u128> elems, Modulus mod);
  static RingVector zero(std::size_t n, Modulus mod);

  std::size_t size() const { return elems_.size(); }
  u128 operator[](std::size_t i) const { return elems_[i]; }
  const Modulus& modulus() const { return mod_; }
  const std::vector<u128>& elems() const { return elems_; }

  void set(std::size_t i, u128 v);

  RingVector add(const RingVector& other) const;
  RingVector sub(const RingVector& other) const;

  bool operator==(const RingVector& other) const;

 private:
  std::vector<u128> elems_;
  Modulus mod_;
};

// Sum_j x[j] * y[j] mod q. Intermediate products of two < 2^127 operands
// wrap mod 2^128; the final mask recovers the value mod q because q divides
// 2^128. No trapping, no wide-limb arithmetic needed.
u128 ring_inner_product(const RingVector& x, const RingVector& y);

// Signed fixed-point codec at a positive integer scale s with 2s < q, so the
// centered lift of any value of magnitude <= 1 is unambiguous.
class FixedPointCodec {
 public:
  FixedPointCodec(std::uint64_t scale, Modulus mod);

  std::uint64_t scale() const { return scale_; }
  const Modulus& modulus() const { return mod_; }

 private:
  std::uint64_t scale_;
  Modulus mod_;
};

// round(r * s) half away from zero, lifted to [0, q). Requires |r|*s < q/2.
u128 encode_fixed(double r, const FixedPointCodec& codec);

// centered_lift(e) / out_scale. out_scale is u128 because decoded values are
// often products of two scaled operands (out_scale = s_x * s_y).
double decode_fixed(u128 e, const FixedPointCodec& codec, u128 out_scale);

}  // namespace dyno

#endif  // DYNO_RING_H_
