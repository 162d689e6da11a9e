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

#include "dyno/serialize.h"

#include <cstdint>
#include <vector>

#include "gtest/gtest.h"

#include "dyno/errors.h"
#include "dyno/mcfe.h"
#include "dyno/noise.h"
#include "dyno/ring.h"
#include "dyno/rng.h"

namespace dyno {
namespace {

Ciphertext sample_ciphertext(std::size_t m, const Modulus& mod,
                             std::uint64_t seed) {
  Rng rng(seed);
  return Ciphertext{7, Label("lbl"), random_ring_vector(m, mod, rng)};
}

TEST(CiphertextWireTest, RoundTrips) {
  for (const int bits : {16, 64, 72, 127}) {
    const Modulus mod(bits);
    const Ciphertext ct = sample_ciphertext(5, mod, 100 + bits);
    const std::vector<std::uint8_t> bytes = serialize_ciphertext(ct);
    const Ciphertext back = deserialize_ciphertext(bytes, mod);
    EXPECT_EQ(back.slot, ct.slot);
    EXPECT_TRUE(back.label == ct.label);
    EXPECT_TRUE(back.c == ct.c);
    EXPECT_EQ(bytes.size(),
              ciphertext_payload_bytes(ct) + ciphertext_header_bytes(ct));
  }
}

TEST(CiphertextWireTest, PublishedSizes) {
  // Data vector lengths and ring widths of the three reference studies:
  // payload = m * ceil(bits/8).
  const Ciphertext lbw = sample_ciphertext(1012, Modulus(64), 1);
  EXPECT_EQ(ciphertext_payload_bytes(lbw), 8096u);
  const Ciphertext pcs = sample_ciphertext(504, Modulus(64), 2);
  EXPECT_EQ(ciphertext_payload_bytes(pcs), 4032u);
  const Ciphertext nhanes = sample_ciphertext(1377, Modulus(72), 3);
  EXPECT_EQ(ciphertext_payload_bytes(nhanes), 12393u);
}

TEST(CiphertextWireTest, HeaderAccounting) {
  const Ciphertext ct = sample_ciphertext(5, Modulus(64), 4);
  // slot u32 + label length u16 + 3 label bytes + m u32.
  EXPECT_EQ(ciphertext_header_bytes(ct), 4u + 2u + 3u + 4u);
}

TEST(CiphertextWireTest, RejectsCorruptStreams) {
  const Modulus mod(16);
  const Ciphertext ct = sample_ciphertext(2, mod, 5);
  std::vector<std::uint8_t> bytes = serialize_ciphertext(ct);

  std::vector<std::uint8_t> truncated(bytes.begin(), bytes.end() - 1);
  EXPECT_THROW(deserialize_ciphertext(truncated, mod), ParseError);

  std::vector<std::uint8_t> trailing = bytes;
  trailing.push_back(0);
  EXPECT_THROW(deserialize_ciphertext(trailing, mod), ParseError);
}

TEST(CiphertextWireTest, RejectsUnreducedElements) {
  // bits=20 leaves the top nibble of the 3-byte element slot empty; a set
  // bit there means the element is not reduced.
  const Modulus mod(20);
  const Ciphertext ct = sample_ciphertext(1, mod, 6);
  std::vector<std::uint8_t> bytes = serialize_ciphertext(ct);
  bytes.back() |= 0xf0;
  EXPECT_THROW(deserialize_ciphertext(bytes, mod), ParseError);
}

DecryptionKey sample_key(std::size_t n, std::size_t m, const Modulus& mod,
                         std::uint64_t seed) {
  Rng rng(seed);
  MasterSecret msk = setup(SchemeParams(m, n + 10, mod));
  std::vector<std::uint64_t> subset;
  std::vector<RingVector> y;
  for (std::uint64_t i = 1; i <= n; ++i) {
    ekeygen(msk, i, rng);
    subset.push_back(i);
    y.push_back(random_ring_vector(m, mod, rng));
  }
  return keygen(msk, subset, y, Label("key"), PointMass{17}, rng);
}

TEST(DecryptionKeyWireTest, RoundTrips) {
  const Modulus mod(64);
  const DecryptionKey dk = sample_key(3, 4, mod, 7);
  const std::vector<std::uint8_t> bytes = serialize_decryption_key(dk);
  const DecryptionKey back = deserialize_decryption_key(bytes, dk.y, mod);
  EXPECT_TRUE(back.label == dk.label);
  EXPECT_EQ(back.subset, dk.subset);
  EXPECT_EQ(back.z, dk.z);
  EXPECT_EQ(bytes.size(), decryption_key_payload_bytes(dk) +
                              decryption_key_header_bytes(dk));
}

TEST(DecryptionKeyWireTest, PayloadIsZOnly) {
  // Key material on the wire is the ring element z alone; coefficients are
  // the analyst's request, slots and label are routing metadata.
  EXPECT_EQ(decryption_key_payload_bytes(sample_key(3, 4, Modulus(64), 8)),
            8u);
  EXPECT_EQ(decryption_key_payload_bytes(sample_key(2, 3, Modulus(72), 9)),
            9u);
  // One model update therefore ships m+1 keys at ceil(bits/8) bytes each:
  // 88 B, 72 B and 108 B for the three reference studies.
}

TEST(DecryptionKeyWireTest, MismatchedCoefficientsRejected) {
  const Modulus mod(64);
  const DecryptionKey dk = sample_key(3, 4, mod, 10);
  const std::vector<std::uint8_t> bytes = serialize_decryption_key(dk);
  std::vector<RingVector> wrong_count(dk.y.begin(), dk.y.end() - 1);
  EXPECT_THROW(deserialize_decryption_key(bytes, wrong_count, mod),
               DimensionError);
  std::vector<RingVector> ragged = dk.y;
  ragged.back() = RingVector({1}, mod);
  EXPECT_THROW(deserialize_decryption_key(bytes, ragged, mod),
               DimensionError);
}

TEST(CoefficientWireTest, SlotWidthFollowsScale) {
  // ceil(ceil(log2(10 * s_y)) / 8).
  EXPECT_EQ(coefficient_slot_bytes(1000000), 3u);     // 24 bits
  EXPECT_EQ(coefficient_slot_bytes(100), 2u);         // 10 bits
  EXPECT_EQ(coefficient_slot_bytes(1), 1u);           // 4 bits
  EXPECT_EQ(coefficient_slot_bytes(1000000000000ULL), 6u);  // 44 bits
}

TEST(CoefficientWireTest, RoundTripsSignedValues) {
  const std::size_t slot = coefficient_slot_bytes(1000000);
  const std::vector<i128> values = {0, 1, -1, 4999999, -5000000, 8388607,
                                    -8388608};
  const std::vector<std::uint8_t> bytes = serialize_coefficients(values, slot);
  EXPECT_EQ(bytes.size(), values.size() * slot);
  EXPECT_EQ(deserialize_coefficients(bytes, slot), values);
}

TEST(CoefficientWireTest, PublishedUploadSizes) {
  // (m+1) coefficient vectors of m~ slots at 3 bytes each.
  EXPECT_EQ(11u * 1012u * coefficient_slot_bytes(1000000), 33396u);
  EXPECT_EQ(9u * 504u * coefficient_slot_bytes(1000000), 13608u);
  EXPECT_EQ(12u * 1377u * coefficient_slot_bytes(1000000), 49572u);
}

TEST(CoefficientWireTest, RangeErrors) {
  const std::size_t slot = 3;  // signed range [-2^23, 2^23)
  EXPECT_NO_THROW(serialize_coefficients({(i128(1) << 23) - 1}, slot));
  EXPECT_THROW(serialize_coefficients({i128(1) << 23}, slot), RangeError);
  EXPECT_NO_THROW(serialize_coefficients({-(i128(1) << 23)}, slot));
  EXPECT_THROW(serialize_coefficients({-(i128(1) << 23) - 1}, slot),
               RangeError);
}

TEST(CoefficientWireTest, TruncationRejected) {
  const std::vector<std::uint8_t> bytes(7, 0);
  EXPECT_THROW(deserialize_coefficients(bytes, 3), ParseError);
}

}  // namespace
}  // namespace dyno
