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

#include "dyno/dp.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dyno/errors.h"
#include "dyno/noise.h"

namespace dyno {

namespace {

// log Phi(t), stable for arbitrarily negative t. Phi(t) = erfc(-t/sqrt 2)/2;
// once erfc underflows (x > ~26 gives erfc(x) < 1e-300), switch to the
// asymptotic expansion erfc(x) ~ exp(-x^2)/(x sqrt pi) (1 - 1/(2x^2) +
// 3/(4x^4)), whose relative error at the switch point is below 1e-12.
double log_phi(double t) {
  const double x = -t / std::sqrt(2.0);
  if (x < 25.0) {
    return std::log(0.5 * std::erfc(x));
  }
  const double inv2 = 1.0 / (2.0 * x * x);
  const double series = std::log1p(-inv2 * (1.0 - 3.0 * inv2));
  return std::log(0.5) - x * x - std::log(x) - 0.5 * std::log(M_PI) + series;
}

}  // namespace

void validate_privacy_params(const PrivacyParams& p) {
  if (!(p.epsilon >= 0.0) || !std::isfinite(p.epsilon)) {
    throw DomainError("epsilon must be finite and >= 0");
  }
  if (!(p.delta > 0.0) || !(p.delta < 1.0)) {
    throw DomainError("delta must lie in (0, 1)");
  }
}

double gm_privacy_loss(double epsilon, double u) {
  const double term1 = std::exp(log_phi(u / 2.0 - epsilon / u));
  const double log_term2 = epsilon + log_phi(-u / 2.0 - epsilon / u);
  const double term2 = log_term2 < -745.0 ? 0.0 : std::exp(log_term2);
  return term1 - term2;
}

double gm_calibrate(const PrivacyParams& p, double sensitivity) {
  validate_privacy_params(p);
  if (!(sensitivity > 0.0) || !std::isfinite(sensitivity)) {
    throw DomainError("sensitivity must be finite and positive");
  }

  // Bracket the boundary in u = sensitivity / sigma: lo must satisfy the
  // budget, hi must violate it. The loss is increasing in u from 0 (u -> 0)
  // to 1 (u -> inf), so both endpoints exist for any delta in (0, 1).
  double lo = 1e-9;
  for (int i = 0;
       i < 1024 && lo > 1e-306 && gm_privacy_loss(p.epsilon, lo) > p.delta;
       ++i) {
    lo /= 2.0;
  }
  if (gm_privacy_loss(p.epsilon, lo) > p.delta) {
    throw DomainError("delta too small to calibrate in double precision");
  }
  double hi = std::max(2.0 * lo, 1.0);
  for (int i = 0; i < 2048 && gm_privacy_loss(p.epsilon, hi) <= p.delta; ++i) {
    hi *= 2.0;
  }
  if (gm_privacy_loss(p.epsilon, hi) <= p.delta) {
    throw DomainError("calibration bracket failed at the high end");
  }

  // Geometric bisection converges in relative terms regardless of the
  // bracket's span in decades.
  for (int i = 0; i < 300 && hi - lo > 1e-12 * lo; ++i) {
    const double mid = std::sqrt(lo * hi);
    if (gm_privacy_loss(p.epsilon, mid) <= p.delta) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return sensitivity / lo;
}

u128 sample_noise(double sigma, u128 out_scale, const Modulus& mod,
                  Rng& rng) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw DomainError("sigma must be finite and non-negative");
  }
  if (sigma == 0.0) return 0;
  return sample_noise_lifted(RoundedGaussian{sigma, out_scale}, mod, rng);
}

void BudgetLedger::register_client(std::uint64_t client,
                                   const PrivacyParams& initial) {
  validate_privacy_params(initial);
  if (!remaining_.emplace(client, initial).second) {
    throw LedgerError("client " + std::to_string(client) +
                      " already has a budget entry");
  }
}

bool BudgetLedger::contains(std::uint64_t client) const {
  return remaining_.count(client) != 0;
}

const PrivacyParams& BudgetLedger::remaining(std::uint64_t client) const {
  const auto it = remaining_.find(client);
  if (it == remaining_.end()) {
    throw LedgerError("client " + std::to_string(client) +
                      " has no budget entry");
  }
  return it->second;
}

BudgetLedger::ChargeResult BudgetLedger::charge(
    const std::vector<std::uint64_t>& clients, const PrivacyParams& p) {
  if (!(p.epsilon >= 0.0) || !(p.delta >= 0.0) ||
      !std::isfinite(p.epsilon) || !std::isfinite(p.delta)) {
    throw DomainError("charge must be finite and non-negative");
  }
  std::vector<std::uint64_t> unique = clients;
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());

  ChargeResult result;
  for (const std::uint64_t c : unique) {
    const PrivacyParams& r = remaining(c);  // throws on unknown client
    if (r.epsilon < p.epsilon || r.delta < p.delta) {
      result.depleted.push_back(c);
    }
  }
  if (!result.depleted.empty()) {
    return result;  // nothing debited
  }
  // Every remainder satisfies r >= p, and IEEE subtraction of p from r then
  // rounds a non-negative exact difference: remainders never go negative.
  for (const std::uint64_t c : unique) {
    PrivacyParams& r = remaining_.at(c);
    r.epsilon -= p.epsilon;
    r.delta -= p.delta;
  }
  result.ok = true;
  return result;
}

void BudgetLedger::save(std::ostream& out) const {
  for (const auto& [client, p] : remaining_) {
    char line[96];
    std::snprintf(line, sizeof(line), "%llu %.17g %.17g\n",
                  static_cast<unsigned long long>(client), p.epsilon, p.delta);
    out << line;
  }
}

void BudgetLedger::save_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write ledger snapshot: " + path);
  save(out);
}

BudgetLedger BudgetLedger::load(std::istream& in) {
  BudgetLedger ledger;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::uint64_t client = 0;
    PrivacyParams p;
    if (!(fields >> client >> p.epsilon >> p.delta)) {
      throw ParseError("malformed ledger snapshot line: " + line);
    }
    if (!ledger.remaining_.emplace(client, p).second) {
      throw ParseError("duplicate client in ledger snapshot");
    }
  }
  return ledger;
}

BudgetLedger BudgetLedger::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read ledger snapshot: " + path);
  return load(in);
}

Schedule allocate_schedule(const PrivacyParams& p_max, std::size_t T,
                           double ratio) {
  validate_privacy_params(p_max);
  if (T == 0) throw DomainError("schedule needs T >= 1");
  if (!(ratio >= 1.0) || !std::isfinite(ratio)) {
    throw DomainError("schedule ratio must be finite and >= 1");
  }

  std::vector<double> weights(T);
  double total = 0.0;
  double w = 1.0;
  for (std::size_t t = 0; t < T; ++t) {
    weights[t] = w;
    total += w;
    w *= ratio;
  }
  if (!std::isfinite(total)) {
    throw DomainError("schedule weights overflow; reduce T or ratio");
  }

  Schedule schedule;
  schedule.steps.resize(T);
  // Replay the ledger's subtraction chain while assigning, clamping only
  // when float rounding would make the running total exceed the budget by
  // an ulp; otherwise the final iteration of a budget-exhausting schedule
  // would be refused spuriously.
  double rem_eps = p_max.epsilon;
  double rem_delta = p_max.delta;
  const double delta_t = p_max.delta / static_cast<double>(T);
  for (std::size_t t = 0; t < T; ++t) {
    double eps_t = p_max.epsilon * weights[t] / total;
    if (eps_t > rem_eps) eps_t = rem_eps;
    double d_t = delta_t;
    if (d_t > rem_delta) d_t = rem_delta;
    schedule.steps[t] = PrivacyParams{eps_t, d_t};
    rem_eps -= eps_t;
    rem_delta -= d_t;
  }
  return schedule;
}

}  // namespace dyno
