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

#include "dyno/mcfe.h"

#include <algorithm>

#include "dyno/errors.h"

namespace dyno {

MasterSecret::MasterSecret(SchemeParams params) : params_(params) {
  if (params.m_max == 0 || params.n_max == 0) {
    throw DomainError("scheme needs m_max >= 1 and n_max >= 1");
  }
}

const PrfKey& MasterSecret::key(std::uint64_t i) const {
  const auto it = keys_.find(i);
  if (it == keys_.end()) {
    throw RegistrationError("slot " + std::to_string(i) + " holds no key");
  }
  return it->second;
}

MasterSecret setup(SchemeParams params) { return MasterSecret(params); }

PrfKey ekeygen(MasterSecret& msk, std::uint64_t i, Rng& rng) {
  if (i < 1 || i > msk.params_.n_max) {
    throw SlotError("slot " + std::to_string(i) + " outside [1, n_max]");
  }
  if (msk.registered(i)) {
    throw AlreadyRegisteredError("slot " + std::to_string(i) +
                                 " already registered");
  }
  PrfKey key = PrfKey::random(rng);
  msk.keys_.emplace(i, key);
  return key;
}

Ciphertext encrypt(const PrfKey& ek, const RingVector& x, const Label& label,
                   std::uint64_t slot, const SchemeParams& params) {
  if (x.size() == 0 || x.size() > params.m_max) {
    throw DimensionError("plaintext length must lie in [1, m_max]");
  }
  if (x.modulus() != params.modulus) {
    throw DimensionError("plaintext modulus does not match scheme");
  }
  const RingVector pad = prf_expand(ek, label, x.size(), params.modulus);
  return Ciphertext{slot, label, x.add(pad)};
}

DecryptionKey keygen(const MasterSecret& msk,
                     const std::vector<std::uint64_t>& subset,
                     const std::vector<RingVector>& y, const Label& label,
                     const NoiseSpec& noise, Rng& rng) {
  if (subset.empty()) throw SubsetError("key subset must be non-empty");
  if (y.size() != subset.size()) {
    throw DimensionError("one coefficient vector per subset slot required");
  }

  // Canonicalize to ascending order, keeping y aligned with its slot.
  std::vector<std::size_t> order(subset.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&subset](std::size_t a, std::size_t b) {
              return subset[a] < subset[b];
            });

  const Modulus& mod = msk.params().modulus;
  const std::size_t m = y.front().size();
  if (m == 0 || m > msk.params().m_max) {
    throw DimensionError("coefficient length must lie in [1, m_max]");
  }

  std::vector<std::uint64_t> sorted_subset;
  std::vector<RingVector> sorted_y;
  sorted_subset.reserve(subset.size());
  sorted_y.reserve(subset.size());
  u128 acc = 0;
  for (const std::size_t k : order) {
    const std::uint64_t slot = subset[k];
    if (!sorted_subset.empty() && sorted_subset.back() == slot) {
      throw SubsetError("key subset contains slot " + std::to_string(slot) +
                        " twice");
    }
    if (!msk.registered(slot)) {
      throw RegistrationError("slot " + std::to_string(slot) +
                              " in subset holds no key");
    }
    const RingVector& y_i = y[k];
    if (y_i.size() != m || y_i.modulus() != mod) {
      throw DimensionError("coefficient vectors must share length and "
                           "modulus");
    }
    // Pad truncated to m, matching encryption's truncation for this label.
    const RingVector pad = prf_expand(msk.key(slot), label, m, mod);
    for (std::size_t j = 0; j < m; ++j) {
      acc += pad[j] * y_i[j];
    }
    sorted_subset.push_back(slot);
    sorted_y.push_back(y_i);
  }

  const u128 e = sample_noise_lifted(noise, mod, rng);
  const u128 z = mod.reduce(acc + mod.q() - e);
  return DecryptionKey{label, std::move(sorted_subset), std::move(sorted_y),
                       z};
}

i128 decrypt(const DecryptionKey& dk, std::span<const Ciphertext> cts) {
  if (dk.subset.empty()) throw SubsetError("decryption key has empty subset");
  if (cts.size() != dk.subset.size()) {
    throw AssemblyError("expected " + std::to_string(dk.subset.size()) +
                        " ciphertexts, got " + std::to_string(cts.size()));
  }
  const Modulus& mod = dk.y.front().modulus();
  const std::size_t m = dk.y.front().size();

  // Index ciphertexts by slot and require exact coverage of S.
  std::map<std::uint64_t, const Ciphertext*> by_slot;
  for (const Ciphertext& ct : cts) {
    if (!by_slot.emplace(ct.slot, &ct).second) {
      throw AssemblyError("duplicate ciphertext for slot " +
                          std::to_string(ct.slot));
    }
  }

  u128 acc = 0;
  for (std::size_t k = 0; k < dk.subset.size(); ++k) {
    const auto it = by_slot.find(dk.subset[k]);
    if (it == by_slot.end()) {
      throw AssemblyError("missing ciphertext for slot " +
                          std::to_string(dk.subset[k]));
    }
    const Ciphertext& ct = *it->second;
    if (ct.label != dk.label) {
      throw LabelError("ciphertext label does not match key label");
    }
    if (ct.c.size() != m || ct.c.modulus() != mod) {
      throw DimensionError("ciphertext shape does not match key");
    }
    for (std::size_t j = 0; j < m; ++j) {
      acc += ct.c[j] * dk.y[k][j];
    }
  }
  const u128 result = mod.reduce(acc + mod.q() - mod.reduce(dk.z));
  return centered_lift(result, mod);
}

}  // namespace dyno
