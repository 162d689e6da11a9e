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

#include "dyno/ring.h"

#include <cmath>
#include <utility>

namespace dyno {

std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v != 0) {
    out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return out;
}

std::string i128_to_string(i128 v) {
  if (v < 0) return "-" + u128_to_string(static_cast<u128>(-v));
  return u128_to_string(static_cast<u128>(v));
}

Modulus::Modulus(int bits) : bits_(bits) {
  if (bits < kMinBits || bits > kMaxBits) {
    throw DomainError("modulus bits must lie in [16, 127], got " +
                      std::to_string(bits));
  }
}

i128 centered_lift(u128 e, const Modulus& mod) {
  if (e > mod.mask()) {
    throw RangeError("element not reduced mod q: " + u128_to_string(e));
  }
  if (e < mod.half()) return static_cast<i128>(e);
  // q - e lies in (0, q/2], which fits the signed type.
  return -static_cast<i128>(mod.q() - e);
}

u128 lift_signed(i128 v, const Modulus& mod) {
  const u128 magnitude = v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v);
  if (magnitude >= mod.half()) {
    throw RangeError("signed value |" + i128_to_string(v) +
                     "| >= q/2; centered lift is ambiguous");
  }
  // Two's-complement bit pattern masked to `bits` bits equals v mod 2^bits.
  return static_cast<u128>(v) & mod.mask();
}

RingVector::RingVector(std::vector<u128> elems, Modulus mod)
    : elems_(std::move(elems)), mod_(mod) {
  for (const u128 e : elems_) {
    if (e > mod_.mask()) {
      throw RangeError("ring vector element not reduced mod q");
    }
  }
}

RingVector RingVector::zero(std::size_t n, Modulus mod) {
  return RingVector(std::vector<u128>(n, 0), mod);
}

void RingVector::set(std::size_t i, u128 v) {
  if (i >= elems_.size()) throw RangeError("ring vector index out of bounds");
  if (v > mod_.mask()) throw RangeError("ring vector element not reduced");
  elems_[i] = v;
}

RingVector RingVector::add(const RingVector& other) const {
  if (size() != other.size() || mod_ != other.mod_) {
    throw DimensionError("ring vector addition requires equal shape");
  }
  std::vector<u128> out(size());
  for (std::size_t i = 0; i < size(); ++i) {
    out[i] = mod_.reduce(elems_[i] + other.elems_[i]);
  }
  return RingVector(std::move(out), mod_);
}

RingVector RingVector::sub(const RingVector& other) const {
  if (size() != other.size() || mod_ != other.mod_) {
    throw DimensionError("ring vector subtraction requires equal shape");
  }
  std::vector<u128> out(size());
  for (std::size_t i = 0; i < size(); ++i) {
    out[i] = mod_.reduce(elems_[i] + mod_.q() - other.elems_[i]);
  }
  return RingVector(std::move(out), mod_);
}

bool RingVector::operator==(const RingVector& other) const {
  return mod_ == other.mod_ && elems_ == other.elems_;
}

u128 ring_inner_product(const RingVector& x, const RingVector& y) {
  if (x.size() != y.size()) {
    throw DimensionError("inner product length mismatch: " +
                         std::to_string(x.size()) + " vs " +
                         std::to_string(y.size()));
  }
  if (x.modulus() != y.modulus()) {
    throw DimensionError("inner product modulus mismatch");
  }
  u128 acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    acc += x[i] * y[i];  // wraps mod 2^128 by construction
  }
  return x.modulus().reduce(acc);
}

FixedPointCodec::FixedPointCodec(std::uint64_t scale, Modulus mod)
    : scale_(scale), mod_(mod) {
  if (scale == 0) throw DomainError("fixed-point scale must be positive");
  if (static_cast<u128>(scale) * 2 >= mod.q()) {
    throw DomainError("fixed-point scale violates 2s < q");
  }
}

u128 encode_fixed(double r, const FixedPointCodec& codec) {
  const long double scaled =
      static_cast<long double>(r) * static_cast<long double>(codec.scale());
  const long double half = ldexpl(1.0L, codec.modulus().bits() - 1);
  if (!(fabsl(scaled) < half)) {  // also rejects NaN
    throw RangeError("fixed-point encode out of range: |r|*s >= q/2");
  }
  const i128 v = static_cast<i128>(roundl(scaled));
  return static_cast<u128>(v) & codec.modulus().mask();
}

double decode_fixed(u128 e, const FixedPointCodec& codec, u128 out_scale) {
  if (out_scale == 0) throw DomainError("decode out_scale must be positive");
  const i128 centered = centered_lift(e, codec.modulus());
  return static_cast<double>(centered) / static_cast<double>(out_scale);
}

}  // namespace dyno
