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

#ifndef DYNO_CONFIG_H_
#define DYNO_CONFIG_H_

#include <cstdint>
#include <string>

#include "dyno/protocol.h"

namespace dyno {

// A full run description. Loads from a flat key=value file so runs can be
// kept under version control; command-line flags override file entries.
struct RunConfig {
  int bits = 64;
  std::uint64_t scale_x = 1000000;
  std::uint64_t scale_y = 1000000;
  double eps_max = 1.0;
  // <= 0 means "derive 1/n from the dataset at training time".
  double delta_max = 0.0;
  std::size_t iters = 50;
  double alpha = 0.1;
  double ratio = kDefaultScheduleRatio;
  std::uint64_t seed = 1;
  std::string dataset_path;
  std::string out_dir = ".";
  bool noise_off = false;
};

// Recognized keys: bits, scale, scale_x, scale_y, eps_max, delta_max,
// iters, alpha, ratio, seed, dataset, out_dir, noise (on|off). `scale` sets
// both scales at once. Unknown keys raise ConfigError.
RunConfig load_config_file(const std::string& path);
void apply_config_line(RunConfig& config, const std::string& key,
                       const std::string& value);

// Module-level preconditions checked up front: modulus range, 2s < q for
// both scales, schedule validity, budget validity. `n` and `m` may be 0
// when no dataset is loaded yet; dataset-dependent checks are skipped then.
void validate_config(const RunConfig& config, std::size_t n, std::size_t m);

// delta_max, with the 1/n default applied.
double effective_delta(const RunConfig& config, std::size_t n);

ProtocolConfig to_protocol_config(const RunConfig& config, std::size_t n);

}  // namespace dyno

#endif  // DYNO_CONFIG_H_
