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
// Label-keyed, dynamically registered noisy multi-client inner-product FE.
// Clients join at any time (one 256-bit PRF key each); a ciphertext binds a
// client's vector to a label; a decryption key binds coefficient vectors to
// a label and an explicit client subset S and embeds one noise value. Only
// matching labels combine, and evaluation reveals the noisy inner product
//
//   sum_{i in S} <x_i, y_i> + e
//
// and nothing else about the x_i. Replacing the PRF pads with recorded
// uniform vectors recovers the one-time-pad scheme exactly, which is the
// basis of its security argument and of the equivalence tests.

#ifndef DYNO_MCFE_H_
#define DYNO_MCFE_H_

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "dyno/ciphertext.h"
#include "dyno/noise.h"
#include "dyno/prf.h"
#include "dyno/ring.h"
#include "dyno/rng.h"

namespace dyno {

struct SchemeParams {
  std::size_t m_max = 0;   // longest vector a label may carry
  std::uint64_t n_max = 0; // largest client index; may be astronomically big
  Modulus modulus;

  SchemeParams(std::size_t m_max_, std::uint64_t n_max_, Modulus mod)
      : m_max(m_max_), n_max(n_max_), modulus(mod) {}
};

// Client keys registered so far. Storage is O(registered clients); n_max
// only bounds the index range.
class MasterSecret {
 public:
  explicit MasterSecret(SchemeParams params);

  const SchemeParams& params() const { return params_; }
  bool registered(std::uint64_t i) const { return keys_.count(i) != 0; }
  std::size_t registered_count() const { return keys_.size(); }
  // Throws RegistrationError for an unregistered slot.
  const PrfKey& key(std::uint64_t i) const;

 private:
  friend PrfKey ekeygen(MasterSecret& msk, std::uint64_t i, Rng& rng);

  SchemeParams params_;
  std::map<std::uint64_t, PrfKey> keys_;
};

struct DecryptionKey {
  Label label;
  std::vector<std::uint64_t> subset;  // canonical ascending order
  std::vector<RingVector> y;          // one per subset slot, common length
  u128 z = 0;
};

MasterSecret setup(SchemeParams params);

// Fresh 32-byte key for slot i, stored and returned. One key per slot.
PrfKey ekeygen(MasterSecret& msk, std::uint64_t i, Rng& rng);

// c = x + PRF pad for (key, label), truncated to len(x). Deterministic; the
// one-ciphertext-per-(client, label) rule is the caller's contract, enforced
// at the protocol layer.
Ciphertext encrypt(const PrfKey& ek, const RingVector& x, const Label& label,
                   std::uint64_t slot, const SchemeParams& params);

// z = sum_{i in S} <pad_i, y_i> - e. Pads are truncated to the common
// coefficient length m, exactly as encryption truncates, so keys and
// ciphertexts agree for any per-label m <= m_max.
DecryptionKey keygen(const MasterSecret& msk,
                     const std::vector<std::uint64_t>& subset,
                     const std::vector<RingVector>& y, const Label& label,
                     const NoiseSpec& noise, Rng& rng);

// Centered lift of sum_{i in S} <c_i, y_i> - z. The ciphertexts must cover
// S exactly and carry the key's label; unlike the raw construction, misuse
// is rejected instead of silently yielding garbage.
i128 decrypt(const DecryptionKey& dk, std::span<const Ciphertext> cts);

}  // namespace dyno

#endif  // DYNO_MCFE_H_
