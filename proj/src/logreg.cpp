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

#include "dyno/logreg.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "dyno/errors.h"

namespace dyno {

namespace {

// Sorted multiset of the feature indices among arguments, dropping index 0:
// x[0] = 1 contributes nothing to a monomial.
std::vector<std::uint32_t> feature_multiset(
    std::initializer_list<std::size_t> indices) {
  std::vector<std::uint32_t> out;
  for (const std::size_t i : indices) {
    if (i != 0) out.push_back(static_cast<std::uint32_t>(i));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

void validate_record(const Record& rec, std::size_t m) {
  if (rec.x.size() != m + 2) {
    throw DomainError("record must have m+2 entries");
  }
  if (rec.x[0] != 1.0) throw DomainError("record constant x[0] must be 1");
  for (std::size_t j = 1; j <= m; ++j) {
    if (!(rec.x[j] >= 0.0 && rec.x[j] <= 1.0)) {
      throw DomainError("record feature outside [0, 1]");
    }
  }
  const double y = rec.x[m + 1];
  if (y != 0.0 && y != 1.0) throw DomainError("record label must be 0 or 1");
}

std::size_t expansion_size(std::size_t m) {
  if (m == 0) throw DomainError("expansion needs m >= 1");
  // C(m+4, 4) + m + 1, exact in 64-bit for any desk-scale m.
  const std::uint64_t c =
      (static_cast<std::uint64_t>(m + 1) * (m + 2) * (m + 3) * (m + 4)) / 24;
  return static_cast<std::size_t>(c + m + 1);
}

MonomialBasis::MonomialBasis(std::size_t m) : m_(m) {
  if (m == 0) throw DomainError("basis needs m >= 1");
  monomials_.push_back({});  // the constant
  // Non-decreasing index sequences of length d enumerate the sorted
  // multisets in lexicographic order for each total degree d.
  for (std::size_t d = 1; d <= 4; ++d) {
    std::vector<std::uint32_t> cur(d, 1);
    while (true) {
      monomials_.push_back(cur);
      // Advance to the next non-decreasing sequence over [1, m].
      std::size_t k = d;
      while (k > 0 && cur[k - 1] == m) --k;
      if (k == 0) break;
      const std::uint32_t next = cur[k - 1] + 1;
      for (std::size_t i = k - 1; i < d; ++i) cur[i] = next;
    }
  }
  for (std::size_t pos = 0; pos < monomials_.size(); ++pos) {
    positions_.emplace(monomials_[pos], pos);
  }
}

std::size_t MonomialBasis::position(
    const std::vector<std::uint32_t>& multiset) const {
  const auto it = positions_.find(multiset);
  if (it == positions_.end()) {
    throw DomainError("not a basis monomial (degree > 4 or index > m)");
  }
  return it->second;
}

std::size_t MonomialBasis::label_term_position(std::size_t j) const {
  if (j > m_) throw DomainError("label term index exceeds m");
  return monomials_.size() + j;
}

std::vector<double> monomial_expand(const Record& rec, std::size_t m) {
  validate_record(rec, m);
  const MonomialBasis basis(m);
  std::vector<double> out;
  out.reserve(basis.size());
  for (const auto& multiset : basis.monomials()) {
    double prod = 1.0;
    for (const std::uint32_t idx : multiset) prod *= rec.x[idx];
    out.push_back(prod);
  }
  const double y = rec.x[m + 1];
  out.push_back(y);  // y * x[0]
  for (std::size_t j = 1; j <= m; ++j) {
    out.push_back(y * rec.x[j]);
  }
  return out;
}

std::vector<double> update_coefficients(const ModelParams& model,
                                        std::size_t j, std::size_t n) {
  if (model.theta.empty()) throw DomainError("model theta is empty");
  if (n == 0) throw DomainError("dataset size must be >= 1");
  const std::size_t m = model.theta.size() - 1;
  if (j > m) throw DomainError("coordinate index exceeds m");
  for (const double t : model.theta) {
    if (!std::isfinite(t)) throw DomainError("model theta must be finite");
  }

  const MonomialBasis basis(m);
  std::vector<double> c(basis.size(), 0.0);
  const double scale = model.alpha / static_cast<double>(n);

  // (y - g(z)) x[j] = y x[j] - x[j]/2 - a2 sum_k theta[k] x[k] x[j]
  //                 + a1 sum_{k1,k2,k3} theta[k1]theta[k2]theta[k3]
  //                   x[k1]x[k2]x[k3]x[j],
  // each index ranging over [0, m] with x[0] = 1; collecting the products
  // into sorted feature multisets lands every term on one basis position.
  c[basis.label_term_position(j)] += scale;
  c[basis.position(feature_multiset({j}))] -= 0.5 * scale;
  for (std::size_t k = 0; k <= m; ++k) {
    c[basis.position(feature_multiset({k, j}))] -=
        SigmoidApprox::kA2 * model.theta[k] * scale;
  }
  for (std::size_t k1 = 0; k1 <= m; ++k1) {
    const double t1 = model.theta[k1];
    if (t1 == 0.0) continue;
    for (std::size_t k2 = 0; k2 <= m; ++k2) {
      const double t12 = t1 * model.theta[k2];
      if (t12 == 0.0) continue;
      for (std::size_t k3 = 0; k3 <= m; ++k3) {
        const double t123 = t12 * model.theta[k3];
        if (t123 == 0.0) continue;
        c[basis.position(feature_multiset({k1, k2, k3, j}))] +=
            SigmoidApprox::kA1 * t123 * scale;
      }
    }
  }
  return c;
}

double sigmoid_approx(double z) {
  return -SigmoidApprox::kA1 * z * z * z + SigmoidApprox::kA2 * z + 0.5;
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double sensitivity_bound(const std::vector<double>& theta, double alpha,
                         std::size_t n, std::size_t m) {
  if (n == 0) throw DomainError("dataset size must be >= 1");
  if (theta.size() != m + 1) {
    throw DimensionError("theta must have m+1 coordinates");
  }
  double l1 = 0.0;
  for (const double t : theta) l1 += std::abs(t);
  const double poly =
      SigmoidApprox::kA1 * l1 * l1 * l1 - SigmoidApprox::kA2 * l1;
  return std::sqrt(static_cast<double>(m + 1)) *
         (alpha / static_cast<double>(n)) * (1.0 + std::abs(poly));
}

std::vector<double> reference_gd_step(const std::vector<double>& theta,
                                      const Dataset& data, double alpha) {
  if (data.records.empty()) throw DomainError("dataset is empty");
  const std::size_t m = data.m;
  if (theta.size() != m + 1) {
    throw DimensionError("theta must have m+1 coordinates");
  }
  std::vector<double> next = theta;
  const double scale = alpha / static_cast<double>(data.size());
  for (const Record& rec : data.records) {
    double z = 0.0;
    for (std::size_t k = 0; k <= m; ++k) z += theta[k] * rec.x[k];
    const double residual = rec.x[m + 1] - sigmoid_approx(z);
    for (std::size_t j = 0; j <= m; ++j) {
      next[j] += scale * residual * rec.x[j];
    }
  }
  return next;
}

double predict_accuracy(const std::vector<double>& theta,
                        const Dataset& data) {
  if (data.records.empty()) throw DomainError("dataset is empty");
  const std::size_t m = data.m;
  if (theta.size() != m + 1) {
    throw DimensionError("theta must have m+1 coordinates");
  }
  std::size_t hits = 0;
  for (const Record& rec : data.records) {
    double z = 0.0;
    for (std::size_t k = 0; k <= m; ++k) z += theta[k] * rec.x[k];
    // sigmoid(z) >= 0.5 iff z >= 0; the tie sigmoid = 0.5 rounds to 1.
    const double predicted = z >= 0.0 ? 1.0 : 0.0;
    if (predicted == rec.x[m + 1]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(data.size());
}

Dataset ldp_perturb(const Dataset& data, const PrivacyParams& p, Rng& rng) {
  validate_privacy_params(p);
  const double sigma =
      gm_calibrate(p, std::sqrt(static_cast<double>(data.m)));
  const double flip = 1.0 / (1.0 + std::exp(p.epsilon));
  Dataset out = data;
  for (Record& rec : out.records) {
    for (std::size_t j = 1; j <= data.m; ++j) {
      rec.x[j] = std::clamp(rec.x[j] + rng.gaussian(sigma), 0.0, 1.0);
    }
    if (rng.uniform01() < flip) {
      rec.x[data.m + 1] = 1.0 - rec.x[data.m + 1];
    }
  }
  return out;
}

Dataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read dataset: " + path);

  std::string line;
  if (!std::getline(in, line)) throw ParseError("dataset has no header row");

  Dataset data;
  std::size_t columns = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> values;
    std::stringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(field, &used));
        while (used < field.size() &&
               std::isspace(static_cast<unsigned char>(field[used]))) {
          ++used;
        }
        if (used != field.size()) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": non-numeric field '" + field + "'");
      }
    }
    if (values.size() < 2) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": need at least one feature and a label");
    }
    if (columns == 0) {
      columns = values.size();
      data.m = columns - 1;
    } else if (values.size() != columns) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": ragged row width");
    }
    const double label = values.back();
    if (label != 0.0 && label != 1.0) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": label must be 0 or 1");
    }
    Record rec;
    rec.x.reserve(columns + 1);
    rec.x.push_back(1.0);
    for (std::size_t j = 0; j + 1 < values.size(); ++j) {
      rec.x.push_back(std::clamp(values[j], 0.0, 1.0));
    }
    rec.x.push_back(label);
    data.records.push_back(std::move(rec));
  }
  if (data.records.empty()) throw ParseError("dataset has no records");
  return data;
}

}  // namespace dyno
