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

#include "dyno/config.h"

#include <cctype>
#include <cmath>
#include <fstream>
#include <type_traits>

#include "dyno/errors.h"
#include "dyno/logreg.h"

namespace dyno {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

template <typename T>
T parse_number(const std::string& value, const std::string& key) {
  try {
    if constexpr (std::is_same_v<T, double>) {
      return std::stod(value);
    } else if constexpr (std::is_same_v<T, int>) {
      return std::stoi(value);
    } else {
      return static_cast<T>(std::stoull(value));
    }
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' has non-numeric value '" +
                      value + "'");
  }
}

}  // namespace

void apply_config_line(RunConfig& config, const std::string& key,
                       const std::string& value) {
  if (key == "bits") {
    config.bits = parse_number<int>(value, key);
  } else if (key == "scale") {
    config.scale_x = parse_number<std::uint64_t>(value, key);
    config.scale_y = config.scale_x;
  } else if (key == "scale_x") {
    config.scale_x = parse_number<std::uint64_t>(value, key);
  } else if (key == "scale_y") {
    config.scale_y = parse_number<std::uint64_t>(value, key);
  } else if (key == "eps_max") {
    config.eps_max = parse_number<double>(value, key);
  } else if (key == "delta_max") {
    config.delta_max = parse_number<double>(value, key);
  } else if (key == "iters") {
    config.iters = parse_number<std::size_t>(value, key);
  } else if (key == "alpha") {
    config.alpha = parse_number<double>(value, key);
  } else if (key == "ratio") {
    config.ratio = parse_number<double>(value, key);
  } else if (key == "seed") {
    config.seed = parse_number<std::uint64_t>(value, key);
  } else if (key == "dataset") {
    config.dataset_path = value;
  } else if (key == "out_dir") {
    config.out_dir = value;
  } else if (key == "noise") {
    if (value == "off") {
      config.noise_off = true;
    } else if (value == "on") {
      config.noise_off = false;
    } else {
      throw ConfigError("config key 'noise' takes on|off, got '" + value +
                        "'");
    }
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  RunConfig config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        " is not key=value: " + line);
    }
    apply_config_line(config, trim(stripped.substr(0, eq)),
                      trim(stripped.substr(eq + 1)));
  }
  return config;
}

double effective_delta(const RunConfig& config, std::size_t n) {
  if (config.delta_max > 0.0) return config.delta_max;
  if (n == 0) throw ConfigError("delta_max unset and dataset size unknown");
  return 1.0 / static_cast<double>(n);
}

void validate_config(const RunConfig& config, std::size_t n, std::size_t m) {
  Modulus mod(config.bits);  // throws DomainError outside [16, 127]
  if (config.scale_x == 0 || config.scale_y == 0) {
    throw ConfigError("scales must be positive");
  }
  if (static_cast<u128>(config.scale_x) * 2 >= mod.q() ||
      static_cast<u128>(config.scale_y) * 2 >= mod.q()) {
    throw ConfigError("scales violate 2s < q");
  }
  if (!(config.alpha > 0.0) || !std::isfinite(config.alpha)) {
    throw ConfigError("alpha must be finite and positive");
  }
  if (!(config.ratio >= 1.0) || !std::isfinite(config.ratio)) {
    throw ConfigError("schedule ratio must be >= 1");
  }
  if (!(config.eps_max >= 0.0) || !std::isfinite(config.eps_max)) {
    throw ConfigError("eps_max must be finite and >= 0");
  }
  if (n > 0) {
    const double delta = effective_delta(config, n);
    if (!(delta > 0.0) || !(delta < 1.0)) {
      throw ConfigError("delta_max must lie in (0, 1)");
    }
    if (config.iters >= 1) {
      // Surfaces schedule problems (overflow, bad budget) at load time.
      allocate_schedule(PrivacyParams{config.eps_max, delta}, config.iters,
                        config.ratio);
    }
  }
  if (m > 0) {
    expansion_size(m);  // throws if degenerate
  }
}

ProtocolConfig to_protocol_config(const RunConfig& config, std::size_t n) {
  ProtocolConfig out;
  out.bits = config.bits;
  out.scale_x = config.scale_x;
  out.scale_y = config.scale_y;
  out.client_budget =
      PrivacyParams{config.eps_max, effective_delta(config, n)};
  out.alpha = config.alpha;
  out.ratio = config.ratio;
  out.seed = config.seed;
  out.noise_off = config.noise_off;
  return out;
}

}  // namespace dyno
