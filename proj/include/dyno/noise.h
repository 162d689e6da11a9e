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

#ifndef DYNO_NOISE_H_
#define DYNO_NOISE_H_

#include <variant>

#include "dyno/ring.h"
#include "dyno/rng.h"

namespace dyno {

// Degenerate distribution: always outputs `value`. PointMass(0) is the
// noiseless test mode; nonzero values exercise correctness deterministically.
struct PointMass {
  i128 value = 0;
};

// round(N(0, sigma^2) * out_scale): a continuous Gaussian discretized onto
// the fixed-point grid. out_scale is typically the product of the data and
// coefficient scales. This is a rounded, not a formally discrete, mechanism;
// the distinction is a known DP formality gap of this artifact.
struct RoundedGaussian {
  double sigma = 0.0;
  u128 out_scale = 1;
};

// The noise distribution a decryption key embeds.
using NoiseSpec = std::variant<PointMass, RoundedGaussian>;

// Samples from the spec and lifts to [0, q). A sample with magnitude >= q/2
// has no centered representative and raises OverflowError; it is never
// wrapped silently.
u128 sample_noise_lifted(const NoiseSpec& spec, const Modulus& mod, Rng& rng);

}  // namespace dyno

#endif  // DYNO_NOISE_H_
