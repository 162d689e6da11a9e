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

#include "dyno/rng.h"

#include <cmath>
#include <cstring>

namespace dyno {

Rng Rng::from_entropy() {
  std::random_device rd;
  const std::uint64_t seed =
      (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
  return Rng(seed);
}

void Rng::fill_bytes(std::uint8_t* out, std::size_t n) {
  std::size_t i = 0;
  while (i < n) {
    const std::uint64_t word = next_u64();
    const std::size_t take = n - i < 8 ? n - i : 8;
    std::memcpy(out + i, &word, take);
    i += take;
  }
}

u128 Rng::uniform_element(const Modulus& mod) {
  u128 v = static_cast<u128>(next_u64());
  if (mod.bits() > 64) {
    v |= static_cast<u128>(next_u64()) << 64;
  }
  return mod.reduce(v);
}

double Rng::gaussian(double sigma) {
  if (sigma == 0.0) return 0.0;
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double mag = std::sqrt(-2.0 * std::log(u1));
  return sigma * mag * std::cos(2.0 * M_PI * u2);
}

RingVector random_ring_vector(std::size_t n, const Modulus& mod, Rng& rng) {
  std::vector<u128> elems(n);
  for (std::size_t i = 0; i < n; ++i) {
    elems[i] = rng.uniform_element(mod);
  }
  return RingVector(std::move(elems), mod);
}

}  // namespace dyno
