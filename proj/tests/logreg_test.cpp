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
// Tests for the linearized logistic-regression layer. The expansion sizes
// are pinned against a brute-force multiset enumeration written here, and
// the coefficient vectors against direct evaluation of the update formula.

#include "dyno/logreg.h"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "dyno/errors.h"
#include "dyno/rng.h"
#include "gtest/gtest.h"

namespace dyno {
namespace {

// Counts every nondecreasing index tuple of length <= depth_left drawn from
// [min_idx, m], including the empty one at the root call.
void enumerate_multisets(std::size_t m, std::uint32_t min_idx,
                         std::size_t depth_left, std::size_t* count) {
  ++*count;
  if (depth_left == 0) return;
  for (std::uint32_t i = min_idx; i <= m; ++i) {
    enumerate_multisets(m, i, depth_left - 1, count);
  }
}

double g(double z) { return sigmoid_approx(z); }

Record random_record(std::size_t m, Rng& rng) {
  Record rec;
  rec.x.resize(m + 2);
  rec.x[0] = 1.0;
  for (std::size_t j = 1; j <= m; ++j) rec.x[j] = rng.uniform01();
  rec.x[m + 1] = (rng.next_u64() & 1) ? 1.0 : 0.0;
  return rec;
}

TEST(ExpansionSizeTest, PinnedValues) {
  EXPECT_EQ(expansion_size(1), 7u);
  EXPECT_EQ(expansion_size(8), 504u);
  EXPECT_EQ(expansion_size(10), 1012u);
  EXPECT_EQ(expansion_size(11), 1377u);
  EXPECT_THROW(expansion_size(0), DomainError);
}

TEST(ExpansionSizeTest, MatchesBruteForceEnumeration) {
  for (std::size_t m = 1; m <= 12; ++m) {
    std::size_t monomials = 0;
    enumerate_multisets(m, 1, 4, &monomials);
    EXPECT_EQ(expansion_size(m), monomials + m + 1) << "m=" << m;
  }
}

TEST(MonomialBasisTest, CanonicalOrderForTwoFeatures) {
  const MonomialBasis basis(2);
  const std::vector<std::vector<std::uint32_t>> expected = {
      {},           {1},          {2},          {1, 1},       {1, 2},
      {2, 2},       {1, 1, 1},    {1, 1, 2},    {1, 2, 2},    {2, 2, 2},
      {1, 1, 1, 1}, {1, 1, 1, 2}, {1, 1, 2, 2}, {1, 2, 2, 2}, {2, 2, 2, 2}};
  ASSERT_EQ(basis.monomials(), expected);
  EXPECT_EQ(basis.size(), expansion_size(2));
  EXPECT_EQ(basis.position({}), 0u);
  EXPECT_EQ(basis.position({1, 2}), 4u);
  EXPECT_EQ(basis.position({2, 2, 2, 2}), 14u);
  EXPECT_EQ(basis.label_term_position(0), 15u);
  EXPECT_EQ(basis.label_term_position(1), 16u);
  EXPECT_EQ(basis.label_term_position(2), 17u);
  EXPECT_THROW(basis.position({3}), DomainError);
  EXPECT_THROW(basis.position({1, 1, 1, 1, 1}), DomainError);
  EXPECT_THROW(basis.label_term_position(3), DomainError);
}

TEST(MonomialExpandTest, AllZeroFeaturesHitOnlyTheConstantSlot) {
  Record rec;
  rec.x = {1.0, 0.0, 0.0, 0.0, 0.0};  // m = 3, y = 0
  const std::vector<double> v = monomial_expand(rec, 3);
  ASSERT_EQ(v.size(), expansion_size(3));
  EXPECT_EQ(v[0], 1.0);
  for (std::size_t p = 1; p < v.size(); ++p) EXPECT_EQ(v[p], 0.0);
}

TEST(MonomialExpandTest, HandExampleOneFeature) {
  Record rec;
  rec.x = {1.0, 0.5, 1.0};
  const std::vector<double> v = monomial_expand(rec, 1);
  const std::vector<double> expected = {1.0,    0.5, 0.25, 0.125,
                                        0.0625, 1.0, 0.5};
  EXPECT_EQ(v, expected);
}

TEST(MonomialExpandTest, MatchesDirectProductsOnRandomRecords) {
  Rng rng(2026);
  for (std::size_t m = 1; m <= 12; ++m) {
    const MonomialBasis basis(m);
    const Record rec = random_record(m, rng);
    const std::vector<double> v = monomial_expand(rec, m);
    ASSERT_EQ(v.size(), expansion_size(m));
    for (std::size_t p = 0; p < basis.feature_monomial_count(); ++p) {
      double prod = 1.0;
      for (const std::uint32_t idx : basis.monomials()[p]) prod *= rec.x[idx];
      EXPECT_DOUBLE_EQ(v[p], prod) << "m=" << m << " p=" << p;
    }
    const double y = rec.x[m + 1];
    for (std::size_t j = 0; j <= m; ++j) {
      EXPECT_DOUBLE_EQ(v[basis.label_term_position(j)], y * rec.x[j]);
    }
  }
}

TEST(MonomialExpandTest, RejectsInvalidRecords) {
  Record bad_constant;
  bad_constant.x = {0.5, 0.2, 1.0};
  EXPECT_THROW(monomial_expand(bad_constant, 1), DomainError);
  Record bad_feature;
  bad_feature.x = {1.0, 1.5, 1.0};
  EXPECT_THROW(monomial_expand(bad_feature, 1), DomainError);
  Record bad_label;
  bad_label.x = {1.0, 0.5, 0.25};
  EXPECT_THROW(monomial_expand(bad_label, 1), DomainError);
  Record bad_length;
  bad_length.x = {1.0, 0.5, 1.0};
  EXPECT_THROW(monomial_expand(bad_length, 2), DomainError);
}

TEST(UpdateCoefficientsTest, ZeroThetaLeavesOnlyLinearAndLabelSlots) {
  const std::size_t m = 3;
  const std::size_t n = 50;
  ModelParams model;
  model.theta.assign(m + 1, 0.0);
  model.alpha = 0.1;
  const MonomialBasis basis(m);
  const double unit = model.alpha / static_cast<double>(n);

  for (std::size_t j = 0; j <= m; ++j) {
    const std::vector<double> y = update_coefficients(model, j, n);
    ASSERT_EQ(y.size(), expansion_size(m));
    // g(0) = 1/2, so the update collapses to (alpha/n)(y_rec - 1/2) x[j].
    const std::size_t x_slot =
        j == 0 ? basis.position({})
               : basis.position({static_cast<std::uint32_t>(j)});
    const std::size_t y_slot = basis.label_term_position(j);
    for (std::size_t p = 0; p < y.size(); ++p) {
      if (p == x_slot) {
        EXPECT_DOUBLE_EQ(y[p], -0.5 * unit);
      } else if (p == y_slot) {
        EXPECT_DOUBLE_EQ(y[p], unit);
      } else {
        EXPECT_EQ(y[p], 0.0) << "j=" << j << " p=" << p;
      }
    }
  }
}

TEST(UpdateCoefficientsTest, InnerProductMatchesDirectEvaluation) {
  // The linearization identity, single-feature case: 100 random records
  // against one random model, every coordinate, 1e-12 absolute.
  Rng rng(424242);
  ModelParams model;
  model.theta = {0.3 - 0.6 * rng.uniform01(), 0.8 - 1.6 * rng.uniform01()};
  model.alpha = 0.25;
  const std::size_t n = 100;
  std::vector<std::vector<double>> coeffs;
  for (std::size_t j = 0; j <= 1; ++j) {
    coeffs.push_back(update_coefficients(model, j, n));
  }
  for (int trial = 0; trial < 100; ++trial) {
    const Record rec = random_record(1, rng);
    const std::vector<double> expanded = monomial_expand(rec, 1);
    const double z = model.theta[0] + model.theta[1] * rec.x[1];
    for (std::size_t j = 0; j <= 1; ++j) {
      const double direct = model.alpha / n * (rec.x[2] - g(z)) * rec.x[j];
      double inner = 0.0;
      for (std::size_t p = 0; p < expanded.size(); ++p) {
        inner += coeffs[j][p] * expanded[p];
      }
      EXPECT_NEAR(inner, direct, 1e-12);
    }
  }
}

TEST(UpdateCoefficientsTest, LinearizationIdentityAcrossDimensions) {
  Rng rng(0xfeed);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t m = 1 + rng.next_u64() % 5;
    const std::size_t n = 1 + rng.next_u64() % 100;
    ModelParams model;
    model.alpha = 0.05 + 0.2 * rng.uniform01();
    model.theta.resize(m + 1);
    for (double& t : model.theta) t = 1.0 - 2.0 * rng.uniform01();
    const Record rec = random_record(m, rng);
    const std::vector<double> expanded = monomial_expand(rec, m);
    double z = 0.0;
    for (std::size_t k = 0; k <= m; ++k) z += model.theta[k] * rec.x[k];
    for (std::size_t j = 0; j <= m; ++j) {
      const std::vector<double> y = update_coefficients(model, j, n);
      double inner = 0.0;
      for (std::size_t p = 0; p < expanded.size(); ++p) {
        inner += y[p] * expanded[p];
      }
      const double direct =
          model.alpha / static_cast<double>(n) * (rec.x[m + 1] - g(z)) *
          rec.x[j];
      ASSERT_NEAR(inner, direct, 1e-10)
          << "trial=" << trial << " m=" << m << " j=" << j;
    }
  }
}

TEST(UpdateCoefficientsTest, DomainErrors) {
  ModelParams model;
  model.theta = {0.0, 0.0};
  EXPECT_THROW(update_coefficients(model, 2, 10), DomainError);
  EXPECT_THROW(update_coefficients(model, 0, 0), DomainError);
  model.theta[1] = NAN;
  EXPECT_THROW(update_coefficients(model, 0, 10), DomainError);
  model.theta.clear();
  EXPECT_THROW(update_coefficients(model, 0, 10), DomainError);
}

TEST(SigmoidTest, ApproximationValues) {
  EXPECT_DOUBLE_EQ(sigmoid_approx(0.0), 0.5);
  EXPECT_NEAR(sigmoid_approx(8.0), 0.88534, 1e-12);
  for (double z = -8.0; z <= 8.0; z += 0.37) {
    EXPECT_NEAR(sigmoid_approx(-z), 1.0 - sigmoid_approx(z), 1e-15);
  }
  EXPECT_DOUBLE_EQ(sigmoid(0.0), 0.5);
  EXPECT_NEAR(sigmoid(36.0), 1.0, 1e-12);
  EXPECT_NEAR(sigmoid(-36.0), 0.0, 1e-12);
  // The cubic is a least-squares fit, so the edges of [-8, 8] deviate the
  // most; the observed maximum is about 0.115.
  for (double z = -8.0; z <= 8.0; z += 0.25) {
    EXPECT_NEAR(sigmoid_approx(z), sigmoid(z), 0.12);
  }
}

TEST(SensitivityBoundTest, ClosedFormValues) {
  const std::vector<double> zero(4, 0.0);
  EXPECT_DOUBLE_EQ(sensitivity_bound(zero, 0.1, 100, 3),
                   std::sqrt(4.0) * 0.1 / 100.0);

  // m=1, alpha=0.1, n=100, l1 norm Theta = 1.
  const std::vector<double> theta{0.5, 0.5};
  const double expected =
      std::sqrt(2.0) * (0.1 / 100.0) *
      (1.0 + std::abs(SigmoidApprox::kA1 - SigmoidApprox::kA2));
  const double bound = sensitivity_bound(theta, 0.1, 100, 1);
  EXPECT_NEAR(bound, expected, 1e-15 * expected);
  EXPECT_NEAR(bound, 0.0016243, 1e-6);

  EXPECT_DOUBLE_EQ(sensitivity_bound(theta, 0.1, 200, 1), 0.5 * bound);
}

TEST(SensitivityBoundTest, BoundsRealAdjacentUpdates) {
  // Replace one record and compare the one-iteration update vectors; the
  // closed form must dominate the observed l2 distance every time.
  Rng rng(0xb0b);
  const std::size_t m = 3;
  const std::size_t n = 30;
  const double alpha = 0.2;
  for (int trial = 0; trial < 1000; ++trial) {
    Dataset data;
    data.m = m;
    for (std::size_t i = 0; i < n; ++i) {
      data.records.push_back(random_record(m, rng));
    }
    std::vector<double> theta(m + 1);
    for (double& t : theta) t = 0.75 - 1.5 * rng.uniform01();

    Dataset neighbor = data;
    neighbor.records[rng.next_u64() % n] = random_record(m, rng);

    const std::vector<double> a = reference_gd_step(theta, data, alpha);
    const std::vector<double> b = reference_gd_step(theta, neighbor, alpha);
    double dist_sq = 0.0;
    for (std::size_t j = 0; j <= m; ++j) {
      const double d = (a[j] - theta[j]) - (b[j] - theta[j]);
      dist_sq += d * d;
    }
    const double bound = sensitivity_bound(theta, alpha, n, m);
    EXPECT_LE(std::sqrt(dist_sq), bound + 1e-12) << "trial " << trial;
  }
}

TEST(ReferenceGdStepTest, CancellingRecordsLeaveThetaUnchanged) {
  // Identical features with opposite labels contribute (1-1/2)x and
  // (0-1/2)x at theta = 0: an exact IEEE cancellation.
  Dataset data;
  data.m = 2;
  Record a;
  a.x = {1.0, 0.3, 0.8, 1.0};
  Record b = a;
  b.x[3] = 0.0;
  data.records = {a, b};
  const std::vector<double> theta(3, 0.0);
  const std::vector<double> next = reference_gd_step(theta, data, 0.4);
  for (const double t : next) EXPECT_EQ(t, 0.0);
}

TEST(ReferenceGdStepTest, SingleRecordHandValue) {
  Dataset data;
  data.m = 2;
  Record rec;
  rec.x = {1.0, 0.3, 0.7, 1.0};
  data.records = {rec};
  const std::vector<double> theta(3, 0.0);
  const double alpha = 0.1;
  const std::vector<double> next = reference_gd_step(theta, data, alpha);
  ASSERT_EQ(next.size(), 3u);
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_NEAR(next[j], alpha * 0.5 * rec.x[j], 1e-17);
  }
  EXPECT_THROW(reference_gd_step(theta, Dataset{}, alpha), DomainError);
}

TEST(PredictAccuracyTest, SeparatedDataScoresPerfectly) {
  // theta = (0, 20, -20) puts z at +/-10 exactly where the labels sit.
  Dataset data;
  data.m = 2;
  for (int i = 0; i < 10; ++i) {
    Record pos;
    pos.x = {1.0, 1.0, 0.5, 1.0};  // z = 20 - 10 = 10
    Record neg;
    neg.x = {1.0, 0.5, 1.0, 0.0};  // z = 10 - 20 = -10
    data.records.push_back(pos);
    data.records.push_back(neg);
  }
  EXPECT_DOUBLE_EQ(predict_accuracy({0.0, 20.0, -20.0}, data), 1.0);
  // theta = 0 gives sigmoid(0) = 0.5 everywhere; the tie rounds to 1, so
  // the score is the positive-class fraction.
  EXPECT_DOUBLE_EQ(predict_accuracy({0.0, 0.0, 0.0}, data), 0.5);
}

TEST(PredictAccuracyTest, MatchesBruteForceRecount) {
  Rng rng(5150);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 1 + rng.next_u64() % 4;
    Dataset data;
    data.m = m;
    for (int i = 0; i < 64; ++i) data.records.push_back(random_record(m, rng));
    std::vector<double> theta(m + 1);
    for (double& t : theta) t = 4.0 - 8.0 * rng.uniform01();

    std::size_t hits = 0;
    for (const Record& rec : data.records) {
      double z = 0.0;
      for (std::size_t k = 0; k <= m; ++k) z += theta[k] * rec.x[k];
      const double p = sigmoid(z);
      const double predicted = p >= 0.5 ? 1.0 : 0.0;
      if (predicted == rec.x[m + 1]) ++hits;
    }
    EXPECT_DOUBLE_EQ(predict_accuracy(theta, data),
                     static_cast<double>(hits) / data.size());
  }
}

TEST(LdpPerturbTest, NearZeroEpsilonFlipsHalfTheLabels) {
  Rng data_rng(11);
  Dataset data;
  data.m = 2;
  for (int i = 0; i < 20000; ++i) {
    data.records.push_back(random_record(2, data_rng));
  }
  Rng rng(77);
  const Dataset noisy = ldp_perturb(data, PrivacyParams{1e-3, 1e-5}, rng);
  ASSERT_EQ(noisy.size(), data.size());
  std::size_t flips = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = 1; j <= 2; ++j) {
      EXPECT_GE(noisy.records[i].x[j], 0.0);
      EXPECT_LE(noisy.records[i].x[j], 1.0);
    }
    if (noisy.records[i].x[3] != data.records[i].x[3]) ++flips;
  }
  // flip probability 1/(1+e^0.001) ~ 0.49975; 20000 draws put the observed
  // rate within 0.015 at far beyond 4 sigma.
  EXPECT_NEAR(static_cast<double>(flips) / data.size(), 0.49975, 0.015);
}

TEST(LdpPerturbTest, LargeEpsilonIsNearTheIdentity) {
  Rng data_rng(13);
  Dataset data;
  data.m = 2;
  for (int i = 0; i < 2000; ++i) {
    data.records.push_back(random_record(2, data_rng));
  }
  Rng rng(99);
  const Dataset noisy = ldp_perturb(data, PrivacyParams{1e6, 1e-5}, rng);
  double total_delta = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    EXPECT_EQ(noisy.records[i].x[3], data.records[i].x[3]) << "label flipped";
    for (std::size_t j = 1; j <= 2; ++j) {
      total_delta += std::abs(noisy.records[i].x[j] - data.records[i].x[j]);
    }
  }
  EXPECT_LT(total_delta / (2.0 * data.size()), 0.01);
}

class CsvTest : public ::testing::Test {
 protected:
  std::string write_csv(const std::string& name, const std::string& body) {
    const std::string path = ::testing::TempDir() + name;
    std::ofstream out(path);
    out << body;
    return path;
  }
};

TEST_F(CsvTest, LoadsFeaturesAndLabelWithInjectedConstant) {
  const std::string path = write_csv(
      "dyno_csv_ok.csv", "f1,f2,label\n0.5,0.25,1\n0.1,0.9,0\n");
  const Dataset data = load_csv(path);
  EXPECT_EQ(data.m, 2u);
  ASSERT_EQ(data.size(), 2u);
  const std::vector<double> first{1.0, 0.5, 0.25, 1.0};
  const std::vector<double> second{1.0, 0.1, 0.9, 0.0};
  EXPECT_EQ(data.records[0].x, first);
  EXPECT_EQ(data.records[1].x, second);
}

TEST_F(CsvTest, ClampsFeaturesIntoTheUnitInterval) {
  const std::string path =
      write_csv("dyno_csv_clamp.csv", "f1,f2,label\n1.5,-0.25,1\n");
  const Dataset data = load_csv(path);
  EXPECT_EQ(data.records[0].x[1], 1.0);
  EXPECT_EQ(data.records[0].x[2], 0.0);
}

TEST_F(CsvTest, ParseAndIoErrors) {
  EXPECT_THROW(load_csv(::testing::TempDir() + "dyno_csv_missing.csv"),
               ConfigError);
  EXPECT_THROW(load_csv(write_csv("dyno_csv_empty.csv", "")), ParseError);
  EXPECT_THROW(load_csv(write_csv("dyno_csv_headeronly.csv", "f1,label\n")),
               ParseError);
  EXPECT_THROW(
      load_csv(write_csv("dyno_csv_badnum.csv", "f1,label\nabc,1\n")),
      ParseError);
  EXPECT_THROW(
      load_csv(write_csv("dyno_csv_badlabel.csv", "f1,label\n0.5,2\n")),
      ParseError);
  // Row width is set by the first data row; later rows must match it.
  EXPECT_THROW(load_csv(write_csv("dyno_csv_ragged.csv",
                                  "f1,f2,label\n0.5,0.25,1\n0.5,1\n")),
               ParseError);
}

}  // namespace
}  // namespace dyno
