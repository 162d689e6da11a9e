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
// One-time-pad noisy multi-input inner-product FE: fixed client count n,
// fixed vector length m, no labels. Each client's key is a uniform ring
// vector used as an additive mask; a decryption key for coefficients y
// carries z = sum_i <ek_i, y_i> - e with an embedded noise value e.
// Information-theoretically secure for one message per slot, and the
// statistical reference for the label-keyed scheme.

#ifndef DYNO_NMIFE_OT_H_
#define DYNO_NMIFE_OT_H_

#include <cstdint>
#include <map>
#include <span>

#include "dyno/ciphertext.h"
#include "dyno/noise.h"
#include "dyno/ring.h"
#include "dyno/rng.h"

namespace dyno {

class OtMasterSecret {
 public:
  // Slots are 1-based: valid indices are [1, n].
  OtMasterSecret(std::size_t n, std::size_t m, Modulus mod);

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  const Modulus& modulus() const { return mod_; }

  bool registered(std::size_t i) const { return keys_.count(i) != 0; }
  std::size_t registered_count() const { return keys_.size(); }
  // Throws RegistrationError for an unregistered slot.
  const RingVector& key(std::size_t i) const;

  // Test-only: install a chosen pad so hand-computed keygen examples can
  // be pinned. Never used by the scheme itself.
  void set_key_for_testing(std::size_t i, RingVector key) {
    keys_.erase(i);
    keys_.emplace(i, std::move(key));
  }

 private:
  friend RingVector ot_ekeygen(OtMasterSecret& msk, std::size_t i, Rng& rng);

  std::size_t n_;
  std::size_t m_;
  Modulus mod_;
  std::map<std::size_t, RingVector> keys_;
};

struct OtDecryptionKey {
  RingVector y;  // flat, length n*m, slot i occupying [(i-1)*m, i*m)
  u128 z = 0;
};

// Samples and stores a fresh uniform key for slot i. One key per slot.
RingVector ot_ekeygen(OtMasterSecret& msk, std::size_t i, Rng& rng);

// c = x + ek componentwise mod q. The slot is recorded in the ciphertext for
// decryption-time assembly; the label is the empty placeholder.
Ciphertext ot_enc(const RingVector& ek, const RingVector& x,
                  std::size_t slot);

// z = sum_i <ek_i, y_i> - e mod q with e drawn from `noise`. Requires all n
// slots registered.
OtDecryptionKey ot_keygen(const OtMasterSecret& msk, const RingVector& y,
                          const NoiseSpec& noise, Rng& rng);

// Centered lift of sum_i <c_i, y_i> - z. Equals sum_i <x_i, y_i> + e over
// the integers whenever n*m*X*Y + |e| < q/2 for centered operand bounds
// X, Y (the signed tightening of the "n m X Y + d < q" bound).
i128 ot_dec(const OtDecryptionKey& dk, std::span<const Ciphertext> cts);

}  // namespace dyno

#endif  // DYNO_NMIFE_OT_H_
