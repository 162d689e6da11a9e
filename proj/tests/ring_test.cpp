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
#include <cstdint>
#include <vector>

#include "gtest/gtest.h"

#include "dyno/errors.h"
#include "dyno/rng.h"
#include "testutil.h"

namespace dyno {
namespace {

using dyno_test::BigInt;
using dyno_test::big_inner_product;
using dyno_test::big_mod;
using dyno_test::big_to_u128;
using dyno_test::to_big;

TEST(ModulusTest, AcceptsSupportedBitRange) {
  EXPECT_NO_THROW(Modulus(16));
  EXPECT_NO_THROW(Modulus(64));
  EXPECT_NO_THROW(Modulus(127));
  EXPECT_THROW(Modulus(15), DomainError);
  EXPECT_THROW(Modulus(128), DomainError);
  EXPECT_THROW(Modulus(0), DomainError);
}

TEST(ModulusTest, DerivedQuantities) {
  const Modulus mod(16);
  EXPECT_EQ(mod.bits(), 16);
  EXPECT_EQ(mod.q(), u128(1) << 16);
  EXPECT_EQ(mod.half(), u128(1) << 15);
  EXPECT_EQ(mod.mask(), u128(0xffff));
  EXPECT_EQ(mod.element_bytes(), 2u);
  EXPECT_EQ(Modulus(64).element_bytes(), 8u);
  EXPECT_EQ(Modulus(72).element_bytes(), 9u);
  EXPECT_EQ(Modulus(127).element_bytes(), 16u);
}

TEST(ModulusTest, ReduceWrapsPowersOfTwo) {
  const Modulus mod(16);
  EXPECT_EQ(mod.reduce(u128(1) << 16), 0u);
  EXPECT_EQ(mod.reduce((u128(1) << 16) + 2), 2u);
  EXPECT_EQ(mod.reduce(u128(65535)), 65535u);
}

TEST(RingVectorTest, RejectsUnreducedElements) {
  const Modulus mod(16);
  EXPECT_THROW(RingVector({u128(1) << 16}, mod), RangeError);
  EXPECT_NO_THROW(RingVector({(u128(1) << 16) - 1}, mod));
}

TEST(RingVectorTest, AddSubMod) {
  const Modulus mod(16);
  const RingVector a({65535, 1}, mod);
  const RingVector b({1, 2}, mod);
  const RingVector sum = a.add(b);
  EXPECT_EQ(sum.elems()[0], 0u);
  EXPECT_EQ(sum.elems()[1], 3u);
  const RingVector back = sum.sub(b);
  EXPECT_TRUE(back == a);
}

TEST(RingInnerProductTest, ZeroVectorAnnihilates) {
  const Modulus mod(16);
  const RingVector x({0, 0}, mod);
  const RingVector y({5, 7}, mod);
  EXPECT_EQ(ring_inner_product(x, y), 0u);
}

TEST(RingInnerProductTest, HandComputedSmallCase) {
  const Modulus mod(16);
  const RingVector x({3, 4}, mod);
  const RingVector y({5, 6}, mod);
  EXPECT_EQ(ring_inner_product(x, y), 39u);
}

TEST(RingInnerProductTest, WrapsModQ) {
  const Modulus mod(16);
  const RingVector x({u128(1) << 15, 2}, mod);
  const RingVector y({2, 1}, mod);
  // 2^16 + 2 mod 2^16.
  EXPECT_EQ(ring_inner_product(x, y), 2u);
}

TEST(RingInnerProductTest, MismatchErrors) {
  const Modulus mod(16);
  const RingVector x({1, 2}, mod);
  const RingVector y({1}, mod);
  EXPECT_THROW(ring_inner_product(x, y), DimensionError);
  const RingVector z({1, 2}, Modulus(17));
  EXPECT_THROW(ring_inner_product(x, z), DimensionError);
}

TEST(RingInnerProductTest, BilinearOverRandomTriples) {
  const Modulus mod(32);
  Rng rng(101);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t len = 1 + rng.next_u64() % 4;
    const RingVector x = random_ring_vector(len, mod, rng);
    const RingVector xp = random_ring_vector(len, mod, rng);
    const RingVector y = random_ring_vector(len, mod, rng);
    const u128 lhs = ring_inner_product(x.add(xp), y);
    const u128 rhs =
        mod.reduce(ring_inner_product(x, y) + ring_inner_product(xp, y));
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(RingInnerProductTest, MatchesBigIntOracleAtFullWidth) {
  // 254-bit intermediates must not trap or lose bits at bits=127.
  for (const int bits : {16, 64, 72, 127}) {
    const Modulus mod(bits);
    Rng rng(202 + bits);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t len = 1 + rng.next_u64() % 5;
      const RingVector x = random_ring_vector(len, mod, rng);
      const RingVector y = random_ring_vector(len, mod, rng);
      BigInt expected = 0;
      for (std::size_t j = 0; j < len; ++j) {
        expected += to_big(x.elems()[j]) * to_big(y.elems()[j]);
      }
      expected = big_mod(expected, mod);
      EXPECT_EQ(ring_inner_product(x, y), big_to_u128(expected));
    }
  }
}

TEST(CenteredLiftTest, MapsHalvesSymmetrically) {
  const Modulus mod(16);
  EXPECT_EQ(centered_lift(0, mod), 0);
  EXPECT_EQ(centered_lift(1, mod), 1);
  EXPECT_EQ(centered_lift((u128(1) << 15) - 1, mod), 32767);
  EXPECT_EQ(centered_lift(u128(1) << 15, mod), -32768);
  EXPECT_EQ(centered_lift((u128(1) << 16) - 1, mod), -1);
}

TEST(LiftSignedTest, RoundTripsWithCenteredLift) {
  const Modulus mod(16);
  Rng rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    // Strictly inside (-q/2, q/2); the boundary itself is rejected.
    const i128 v =
        static_cast<i128>(rng.next_u64() % 65535) - 32767;
    const u128 lifted = lift_signed(v, mod);
    EXPECT_LT(lifted, mod.q());
    EXPECT_EQ(centered_lift(lifted, mod), v);
  }
  EXPECT_EQ(lift_signed(-5, mod), (u128(1) << 16) - 5);
  EXPECT_THROW(lift_signed(i128(1) << 15, mod), RangeError);
  EXPECT_THROW(lift_signed(-(i128(1) << 15), mod), RangeError);
}

TEST(FixedPointCodecTest, RejectsScaleCollision) {
  // 2s < q must hold so signed unit values stay unambiguous.
  EXPECT_THROW(FixedPointCodec(u128(1) << 15, Modulus(16)), DomainError);
  EXPECT_NO_THROW(FixedPointCodec((u128(1) << 15) - 1, Modulus(16)));
}

TEST(EncodeFixedTest, SpecValues) {
  const Modulus mod(64);
  const FixedPointCodec codec(1000000, mod);
  EXPECT_EQ(encode_fixed(0.0, codec), 0u);
  EXPECT_EQ(encode_fixed(1.0, codec), 1000000u);
  EXPECT_EQ(encode_fixed(-0.5, codec), mod.q() - 500000);
}

TEST(EncodeFixedTest, RoundsHalfAwayFromZero) {
  const Modulus mod(64);
  // Scale 4 keeps every tie value exactly representable in binary, so the
  // test pins the rounding rule rather than decimal-to-binary noise.
  const FixedPointCodec codec(4, mod);
  EXPECT_EQ(encode_fixed(0.125, codec), 1u);   // 0.5 rounds away from zero
  EXPECT_EQ(encode_fixed(0.625, codec), 3u);   // 2.5 -> 3; banker's would say 2
  EXPECT_EQ(encode_fixed(-0.125, codec), mod.q() - 1);
  EXPECT_EQ(encode_fixed(-0.625, codec), mod.q() - 3);
}

TEST(EncodeFixedTest, RangeErrors) {
  const Modulus mod(16);
  const FixedPointCodec codec(1000, mod);
  // |r|*s >= q/2 = 32768.
  EXPECT_THROW(encode_fixed(32.768, codec), RangeError);
  EXPECT_NO_THROW(encode_fixed(32.767, codec));
  EXPECT_THROW(encode_fixed(-32.768, codec), RangeError);
  EXPECT_THROW(encode_fixed(std::nan(""), codec), RangeError);
  EXPECT_THROW(encode_fixed(INFINITY, codec), RangeError);
}

TEST(DecodeFixedTest, SpecValues) {
  const Modulus mod(64);
  const FixedPointCodec codec(1000000, mod);
  EXPECT_DOUBLE_EQ(decode_fixed(0, codec, 1000000), 0.0);
  EXPECT_DOUBLE_EQ(decode_fixed(1000000, codec, 1000000), 1.0);
  EXPECT_DOUBLE_EQ(decode_fixed(mod.q() - 500000, codec, 1000000), -0.5);
}

TEST(FixedPointTest, RoundTripWithinHalfUlp) {
  const Modulus mod(64);
  const u128 scale = 1000000;
  const FixedPointCodec codec(scale, mod);
  Rng rng(55);
  for (int trial = 0; trial < 10000; ++trial) {
    const double r = (rng.uniform01() - 0.5) * 2000.0;
    const u128 encoded = encode_fixed(r, codec);
    const double decoded = decode_fixed(encoded, codec, scale);
    // Round-trip error is bounded by half a quantum.
    EXPECT_NEAR(decoded, r, 0.5 / 1000000.0 + 1e-15);
    // decode returns exactly (integer value) / scale for the stored value.
    const i128 stored = centered_lift(encoded, mod);
    EXPECT_DOUBLE_EQ(decoded,
                     static_cast<double>(stored) / 1000000.0);
  }
}

TEST(Int128StringTest, FormatsExtremes) {
  EXPECT_EQ(u128_to_string(0), "0");
  EXPECT_EQ(u128_to_string(u128(1) << 64), "18446744073709551616");
  EXPECT_EQ(i128_to_string(-1), "-1");
  EXPECT_EQ(i128_to_string(i128(-1) * (i128(1) << 100)),
            "-1267650600228229401496703205376");
}

}  // namespace
}  // namespace dyno
