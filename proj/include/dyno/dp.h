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
// Differential-privacy plumbing: the analytic Gaussian mechanism (tight
// (eps, delta) calibration through the Gaussian CDF characterization, found
// by binary search), discretized noise sampling, a per-client budget ledger
// under plain sequential composition, and the geometric per-iteration
// budget schedule.

#ifndef DYNO_DP_H_
#define DYNO_DP_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "dyno/ring.h"
#include "dyno/rng.h"

namespace dyno {

struct PrivacyParams {
  double epsilon = 0.0;
  double delta = 0.0;
};

// Requires eps >= 0 and 0 < delta < 1, both finite.
void validate_privacy_params(const PrivacyParams& p);

// The privacy loss delta(u) with u = sensitivity / sigma:
//
//   delta(u) = Phi(u/2 - eps/u) - exp(eps) * Phi(-u/2 - eps/u)
//
// Exposed because calibration tests evaluate it directly as the oracle.
double gm_privacy_loss(double epsilon, double u);

// Smallest sigma (relative tolerance 1e-9) with delta(sensitivity/sigma) <=
// p.delta. The loss is monotone increasing in u, so a plain bracketed
// bisection on u suffices; the bracket doubles outward until it straddles
// the boundary.
double gm_calibrate(const PrivacyParams& p, double sensitivity);

// round(N(0, sigma^2) * out_scale) lifted to [0, q); sigma = 0 yields 0.
u128 sample_noise(double sigma, u128 out_scale, const Modulus& mod, Rng& rng);

// Remaining (eps, delta) per client. Charges are atomic across a client
// set: either every listed client is debited or none is. Single-writer.
class BudgetLedger {
 public:
  struct ChargeResult {
    bool ok = false;
    std::vector<std::uint64_t> depleted;  // empty iff ok
  };

  void register_client(std::uint64_t client, const PrivacyParams& initial);
  bool contains(std::uint64_t client) const;
  std::size_t size() const { return remaining_.size(); }
  // Throws LedgerError for an unknown client.
  const PrivacyParams& remaining(std::uint64_t client) const;

  // Requires p.epsilon >= 0 and p.delta >= 0 (a zero charge is legal and
  // leaves the ledger unchanged). Unknown clients raise LedgerError before
  // anything is debited.
  ChargeResult charge(const std::vector<std::uint64_t>& clients,
                      const PrivacyParams& p);

  // Snapshot format: one `client_index epsilon_remaining delta_remaining`
  // line per client, decimal, 17 significant digits.
  void save(std::ostream& out) const;
  void save_file(const std::string& path) const;
  static BudgetLedger load(std::istream& in);
  static BudgetLedger load_file(const std::string& path);

 private:
  std::map<std::uint64_t, PrivacyParams> remaining_;
};

struct Schedule {
  std::vector<PrivacyParams> steps;
};

// Geometric split of p_max over T iterations: eps_t proportional to
// ratio^t (so later iterations spend more), delta_t = delta_max / T.
// Requires T >= 1 and ratio >= 1.
Schedule allocate_schedule(const PrivacyParams& p_max, std::size_t T,
                           double ratio);

inline constexpr double kDefaultScheduleRatio = 1.05;

}  // namespace dyno

#endif  // DYNO_DP_H_
