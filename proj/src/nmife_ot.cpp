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

#include "dyno/nmife_ot.h"

#include <vector>

#include "dyno/errors.h"

namespace dyno {

OtMasterSecret::OtMasterSecret(std::size_t n, std::size_t m, Modulus mod)
    : n_(n), m_(m), mod_(mod) {
  if (n == 0 || m == 0) {
    throw DomainError("scheme needs n >= 1 and m >= 1");
  }
}

const RingVector& OtMasterSecret::key(std::size_t i) const {
  const auto it = keys_.find(i);
  if (it == keys_.end()) {
    throw RegistrationError("slot " + std::to_string(i) + " holds no key");
  }
  return it->second;
}

RingVector ot_ekeygen(OtMasterSecret& msk, std::size_t i, Rng& rng) {
  if (i < 1 || i > msk.n_) {
    throw SlotError("slot " + std::to_string(i) + " outside [1, " +
                    std::to_string(msk.n_) + "]");
  }
  if (msk.registered(i)) {
    throw AlreadyRegisteredError("slot " + std::to_string(i) +
                                 " already registered");
  }
  RingVector key = random_ring_vector(msk.m_, msk.mod_, rng);
  msk.keys_.emplace(i, key);
  return key;
}

Ciphertext ot_enc(const RingVector& ek, const RingVector& x,
                  std::size_t slot) {
  if (x.size() != ek.size() || x.modulus() != ek.modulus()) {
    throw DimensionError("plaintext shape does not match key");
  }
  return Ciphertext{slot, Label::bottom(), x.add(ek)};
}

OtDecryptionKey ot_keygen(const OtMasterSecret& msk, const RingVector& y,
                          const NoiseSpec& noise, Rng& rng) {
  if (y.size() != msk.n() * msk.m() || y.modulus() != msk.modulus()) {
    throw DimensionError("coefficient vector must have length n*m");
  }
  if (msk.registered_count() != msk.n()) {
    throw RegistrationError("keygen requires all slots registered");
  }
  const Modulus& mod = msk.modulus();
  u128 acc = 0;
  for (std::size_t i = 1; i <= msk.n(); ++i) {
    const RingVector& ek = msk.key(i);
    for (std::size_t j = 0; j < msk.m(); ++j) {
      acc += ek[j] * y[(i - 1) * msk.m() + j];
    }
  }
  const u128 e = sample_noise_lifted(noise, mod, rng);
  const u128 z = mod.reduce(acc + mod.q() - e);
  return OtDecryptionKey{y, z};
}

i128 ot_dec(const OtDecryptionKey& dk, std::span<const Ciphertext> cts) {
  const Modulus& mod = dk.y.modulus();
  const std::size_t n = cts.size();
  if (n == 0) throw AssemblyError("no ciphertexts supplied");
  if (dk.y.size() % n != 0) {
    throw DimensionError("coefficient length is not a multiple of the "
                         "ciphertext count");
  }
  const std::size_t m = dk.y.size() / n;

  // Exactly one ciphertext per slot 1..n, in slot order.
  std::vector<bool> seen(n + 1, false);
  for (const Ciphertext& ct : cts) {
    if (ct.slot < 1 || ct.slot > n || seen[ct.slot]) {
      throw AssemblyError("ciphertexts must cover slots 1..n exactly once");
    }
    seen[ct.slot] = true;
    if (ct.c.size() != m || ct.c.modulus() != mod) {
      throw DimensionError("ciphertext shape does not match key");
    }
  }

  u128 acc = 0;
  for (const Ciphertext& ct : cts) {
    const std::size_t base = (ct.slot - 1) * m;
    for (std::size_t j = 0; j < m; ++j) {
      acc += ct.c[j] * dk.y[base + j];
    }
  }
  const u128 result = mod.reduce(acc + mod.q() - mod.reduce(dk.z));
  return centered_lift(result, mod);
}

}  // namespace dyno
