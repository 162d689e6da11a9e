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
// Bit-exact wire formats, little-endian throughout.
//
//   PrfKey         32 raw bytes
//   Ciphertext     [slot: u32][label length: u16][label bytes][m: u32]
//                  [m elements, each ceil(bits/8) bytes]
//   DecryptionKey  [label length: u16][label bytes][|S|: u32][slots: u64
//                  each][m: u32][z: ceil(bits/8) bytes]
//
// A ciphertext's element payload is m * ceil(bits/8) bytes; everything
// before it is header. A decryption key's payload is the z field alone: the
// coefficient vectors are the analyst's own request data and are not echoed
// back (public metadata is not counted as key material). Deserializing a key
// therefore takes the coefficient vectors as a parameter.
//
// Coefficient vectors travel as signed two's-complement integers in fixed
// slots of ceil(ceil(log2(10 * s_y)) / 8) bytes: coefficients are bounded by
// 5 in magnitude, so 10 * s_y grid steps cover the signed range.

#ifndef DYNO_SERIALIZE_H_
#define DYNO_SERIALIZE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "dyno/mcfe.h"

namespace dyno {

std::vector<std::uint8_t> serialize_ciphertext(const Ciphertext& ct);
Ciphertext deserialize_ciphertext(std::span<const std::uint8_t> bytes,
                                  const Modulus& mod);

// m * ceil(bits/8).
std::size_t ciphertext_payload_bytes(const Ciphertext& ct);
// Everything else: 4 + 2 + label length + 4.
std::size_t ciphertext_header_bytes(const Ciphertext& ct);

std::vector<std::uint8_t> serialize_decryption_key(const DecryptionKey& dk);
DecryptionKey deserialize_decryption_key(std::span<const std::uint8_t> bytes,
                                         std::vector<RingVector> y,
                                         const Modulus& mod);

// ceil(bits/8): the z field.
std::size_t decryption_key_payload_bytes(const DecryptionKey& dk);
std::size_t decryption_key_header_bytes(const DecryptionKey& dk);

// Byte width of one serialized coefficient: ceil(ceil(log2(10 * s_y)) / 8),
// computed in exact integer arithmetic.
std::size_t coefficient_slot_bytes(std::uint64_t scale_y);

// Two's-complement encoding in fixed `slot_bytes`-byte little-endian slots.
// Values outside the slot's signed range raise RangeError.
std::vector<std::uint8_t> serialize_coefficients(
    const std::vector<i128>& scaled, std::size_t slot_bytes);
std::vector<i128> deserialize_coefficients(
    std::span<const std::uint8_t> bytes, std::size_t slot_bytes);

}  // namespace dyno

#endif  // DYNO_SERIALIZE_H_
