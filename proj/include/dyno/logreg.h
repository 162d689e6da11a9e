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
// Logistic regression linearized for inner-product evaluation. With the
// cubic sigmoid stand-in g(z) = -a1 z^3 + a2 z + 0.5, one GD coordinate
// update
//
//   theta[j] += (alpha/n) * sum_i (y_i - g(z_i)) * x_i[j],  z_i = <theta, x_i>
//
// is a polynomial of degree <= 4 in each record's entries, so it equals an
// inner product between a per-record monomial expansion (computed once by
// the data holder) and a coefficient vector depending only on theta
// (computed fresh by the analyst each iteration). Records are never needed
// in the clear again after expansion.

#ifndef DYNO_LOGREG_H_
#define DYNO_LOGREG_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dyno/dp.h"
#include "dyno/rng.h"

namespace dyno {

// One observation: x[0] = 1 exactly, features x[1..m] in [0,1], dependent
// variable x[m+1] in {0,1}.
struct Record {
  std::vector<double> x;
};

struct Dataset {
  std::vector<Record> records;
  std::size_t m = 0;  // feature count

  std::size_t size() const { return records.size(); }
};

struct ModelParams {
  std::vector<double> theta;  // length m+1, theta[0] the intercept
  double alpha = 0.1;
  std::size_t iters = 0;
};

// Cubic least-squares fit of the sigmoid on [-8, 8]. The constants are
// normative for reproducibility; do not "improve" them.
struct SigmoidApprox {
  static constexpr double kA1 = 0.81562 / 512.0;
  static constexpr double kA2 = 1.20096 / 8.0;
  static constexpr double kDomain = 8.0;
};

// Throws DomainError unless the record satisfies its stated invariants.
void validate_record(const Record& rec, std::size_t m);

// Number of expanded values per record: all feature monomials of total
// degree <= 4 (that is C(m+4, 4) of them) plus y*x[j] for j in [0, m].
std::size_t expansion_size(std::size_t m);

// The canonical ordering of expanded positions: feature monomials sorted by
// total degree then lexicographically on their sorted index multisets
// (position 0 is the constant 1), followed by y, then y*x[1..m].
class MonomialBasis {
 public:
  explicit MonomialBasis(std::size_t m);

  std::size_t m() const { return m_; }
  std::size_t size() const { return monomials_.size() + m_ + 1; }
  std::size_t feature_monomial_count() const { return monomials_.size(); }
  // Multisets of feature indices in [1, m], each sorted ascending.
  const std::vector<std::vector<std::uint32_t>>& monomials() const {
    return monomials_;
  }
  // Position of a feature monomial given as a sorted index multiset.
  std::size_t position(const std::vector<std::uint32_t>& multiset) const;
  // Position of y*x[j]; j = 0 is the plain y term.
  std::size_t label_term_position(std::size_t j) const;

 private:
  std::size_t m_;
  std::vector<std::vector<std::uint32_t>> monomials_;
  std::map<std::vector<std::uint32_t>, std::size_t> positions_;
};

// Values of every basis entry on one record, in canonical order.
std::vector<double> monomial_expand(const Record& rec, std::size_t m);

// Coefficient vector y_j with <y_j, monomial_expand(rec, m)> equal to
// (alpha/n) * (y_rec - g(z_rec)) * x_rec[j] up to float rounding. Every
// client slot shares the same vector.
std::vector<double> update_coefficients(const ModelParams& model,
                                        std::size_t j, std::size_t n);

double sigmoid_approx(double z);
double sigmoid(double z);

// sqrt(m+1) * (alpha/n) * (1 + |a1 Theta^3 - a2 Theta|) with Theta the l1
// norm of theta: an upper bound on the l2 sensitivity of one full update
// vector under single-record replacement.
double sensitivity_bound(const std::vector<double>& theta, double alpha,
                         std::size_t n, std::size_t m);

// One plaintext GD step with g in place of the sigmoid; the oracle the
// encrypted pipeline is measured against.
std::vector<double> reference_gd_step(const std::vector<double>& theta,
                                      const Dataset& data, double alpha);

// Fraction of records with round(sigmoid(z)) = y, true sigmoid, ties at 0.5
// rounding to 1.
double predict_accuracy(const std::vector<double>& theta,
                        const Dataset& data);

// Local-DP comparison baseline: Gaussian feature noise calibrated at l2
// sensitivity sqrt(m) then clamped to [0,1], plus randomized response on
// the label with flip probability 1/(1+e^eps). Not comparable to any
// specific published curve; the baseline mechanism is this artifact's own.
Dataset ldp_perturb(const Dataset& data, const PrivacyParams& p, Rng& rng);

// CSV with a header row; every column numeric, last column the binary
// label, features pre-normalized (values are clamped to [0,1] on load).
// The constant x[0] = 1 is injected here, never stored in files.
Dataset load_csv(const std::string& path);

}  // namespace dyno

#endif  // DYNO_LOGREG_H_
