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

#include "dyno/noise.h"

#include <cmath>

#include "dyno/errors.h"

namespace dyno {

namespace {

u128 lift_or_overflow(i128 v, const Modulus& mod) {
  const u128 magnitude = v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v);
  if (magnitude >= mod.half()) {
    throw OverflowError("noise sample |" + i128_to_string(v) +
                        "| >= q/2 cannot be embedded");
  }
  return lift_signed(v, mod);
}

}  // namespace

u128 sample_noise_lifted(const NoiseSpec& spec, const Modulus& mod, Rng& rng) {
  if (const auto* pm = std::get_if<PointMass>(&spec)) {
    return lift_or_overflow(pm->value, mod);
  }
  const auto& rg = std::get<RoundedGaussian>(spec);
  if (!(rg.sigma >= 0.0) || !std::isfinite(rg.sigma)) {
    throw DomainError("Gaussian sigma must be finite and non-negative");
  }
  if (rg.out_scale == 0) throw DomainError("noise out_scale must be positive");
  if (rg.sigma == 0.0) return 0;
  const double g = rng.gaussian(rg.sigma);
  const double scaled = std::round(g * static_cast<double>(rg.out_scale));
  // Magnitude guard in floating point first: a double >= 2^127 would
  // overflow the i128 conversion below before the lift could reject it.
  if (std::abs(scaled) >= ldexp(1.0, mod.bits() - 1)) {
    throw OverflowError("noise sample >= q/2 cannot be embedded");
  }
  return lift_or_overflow(static_cast<i128>(scaled), mod);
}

}  // namespace dyno
