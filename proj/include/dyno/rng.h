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

#ifndef DYNO_RNG_H_
#define DYNO_RNG_H_

#include <cstdint>
#include <random>

#include "dyno/ring.h"

namespace dyno {

// Deterministic randomness source. mt19937_64 has a standardized output
// sequence, and the Gaussian transform below is hand-rolled, so runs with
// equal seeds reproduce bit-identically across platforms; the std library
// distributions make no such promise.
//
// For keying material in a real deployment, construct via from_entropy().
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  static Rng from_entropy();

  std::uint64_t next_u64() { return gen_(); }

  // Uniform double in (0, 1): 53-bit mantissa centered off both endpoints.
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  void fill_bytes(std::uint8_t* out, std::size_t n);

  // Exact uniform element of [0, q): mask ceil(bits/64) words. Power-of-two
  // q means no rejection loop and no bias.
  u128 uniform_element(const Modulus& mod);

  // N(0, sigma^2) via Box-Muller; consumes two words per call, spare
  // discarded to keep the stream position independent of call history.
  double gaussian(double sigma);

 private:
  std::mt19937_64 gen_;
};

RingVector random_ring_vector(std::size_t n, const Modulus& mod, Rng& rng);

}  // namespace dyno

#endif  // DYNO_RNG_H_
