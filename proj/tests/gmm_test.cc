// lgpspoof/gmm_test.cc

// Copyright 2026  The lgpspoof Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "lgpspoof/base.h"
#include "lgpspoof/diag_gmm.h"

namespace lgpspoof {
namespace {

DiagGmm TwoComponentGmm() {
  return DiagGmm({0.3, 0.7}, {0.0, 1.0, -2.0, 0.5}, {1.0, 2.0, 0.5, 0.25}, 2);
}

double DirectLogDensity(const DiagGmm &g, std::size_t i,
                        std::span<const double> x) {
  double s = 0.0;
  for (std::size_t d = 0; d < x.size(); ++d) {
    const double v = g.Var(i)[d], diff = x[d] - g.Mean(i)[d];
    s += -0.5 * std::log(2.0 * M_PI * v) - 0.5 * diff * diff / v;
  }
  return s;
}

FeatureMatrix Clusters(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 0.3);
  const double centres[3][2] = {{-10, 0}, {0, 10}, {10, -5}};
  FeatureMatrix x(n, 2);
  for (std::size_t t = 0; t < n; ++t)
    for (int d = 0; d < 2; ++d) x(t, d) = centres[t % 3][d] + noise(rng);
  return x;
}

TEST(DiagGmm, DensityMatchesDirectFormula) {
  const DiagGmm g = TwoComponentGmm();
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 2.0);
  for (int r = 0; r < 20; ++r) {
    const std::vector<double> x = {n(rng), n(rng)};
    for (std::size_t i = 0; i < 2; ++i)
      EXPECT_NEAR(g.ComponentLogDensity(i, x), DirectLogDensity(g, i, x), 1e-12);
    const double direct = std::log(0.3 * std::exp(DirectLogDensity(g, 0, x)) +
                                   0.7 * std::exp(DirectLogDensity(g, 1, x)));
    EXPECT_NEAR(g.LogLikelihood(x), direct, 1e-12);
  }
}

TEST(DiagGmm, ValidatesParameters) {
  EXPECT_THROW(DiagGmm({0.5, 0.6}, {0, 0}, {1, 1}, 1), InvalidArgument);
  EXPECT_THROW(DiagGmm({0.5, 0.5}, {0, 0}, {1, 0}, 1), InvalidArgument);
  EXPECT_THROW(DiagGmm({1.0}, {0, 0}, {1, 1}, 1), InvalidArgument);
  const DiagGmm g = TwoComponentGmm();
  const std::vector<double> wrong = {1.0};
  EXPECT_THROW(g.LogLikelihood(wrong), InvalidArgument);
  EXPECT_THROW(g.UtteranceLogLikelihood(FeatureMatrix(0, 2)), InvalidArgument);
}

TEST(DiagGmm, ArchiveRoundTripPreservesHash) {
  const DiagGmm g = TwoComponentGmm();
  const DiagGmm back = DiagGmm::FromArchive(
      TensorArchive::Deserialize(g.ToArchive().Serialize()));
  EXPECT_EQ(back.ContentHash(), g.ContentHash());
  EXPECT_EQ(back.NumComponents(), 2u);
  const DiagGmm other({0.3, 0.7}, {0.0, 1.0, -2.0, 0.5}, {1.0, 2.0, 0.5, 0.3}, 2);
  EXPECT_NE(other.ContentHash(), g.ContentHash());
}

TEST(LogSumExp, StableAtExtremes) {
  const std::vector<double> big = {1e6, 1e6};
  EXPECT_NEAR(LogSumExp(big), 1e6 + std::log(2.0), 1e-6);
  const std::vector<double> small = {-1e6, -1e6 - 1.0};
  EXPECT_NEAR(LogSumExp(small), -1e6 + std::log1p(std::exp(-1.0)), 1e-6);
  EXPECT_TRUE(std::isinf(LogSumExp(std::vector<double>{})));
}

TEST(Llr, IsDifferenceOfUtteranceLikelihoods) {
  const DiagGmm a = TwoComponentGmm();
  const DiagGmm b({1.0}, {0.5, 0.5}, {1.0, 1.0}, 2);
  const FeatureMatrix x = Clusters(9, 3);
  double expect = 0.0;
  for (std::size_t t = 0; t < x.NumFrames(); ++t)
    expect += a.LogLikelihood(x.Row(t)) - b.LogLikelihood(x.Row(t));
  EXPECT_NEAR(LlrScore(a, b, x), expect, 1e-9);
}

TEST(Em, SingleComponentIsClosedForm) {
  const FeatureMatrix x = Clusters(300, 4);
  EmConfig cfg;
  cfg.iterations = 3;
  const EmResult r = TrainEm(x, 1, cfg);
  for (std::size_t d = 0; d < 2; ++d) {
    double mean = 0.0, sq = 0.0;
    for (std::size_t t = 0; t < x.NumFrames(); ++t) mean += x(t, d);
    mean /= x.NumFrames();
    for (std::size_t t = 0; t < x.NumFrames(); ++t)
      sq += (x(t, d) - mean) * (x(t, d) - mean);
    EXPECT_NEAR(r.gmm.Mean(0)[d], mean, 1e-9);
    EXPECT_NEAR(r.gmm.Var(0)[d], sq / x.NumFrames(), 1e-9);
  }
  EXPECT_DOUBLE_EQ(r.gmm.Weights()[0], 1.0);
}

TEST(Em, RecoversSeparatedClusters) {
  const FeatureMatrix x = Clusters(900, 5);
  EmConfig cfg;
  cfg.seed = 9;
  const EmResult r = TrainEm(x, 3, cfg);
  const double centres[3][2] = {{-10, 0}, {0, 10}, {10, -5}};
  for (const auto &c : centres) {
    double best = 1e9;
    std::size_t k = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      const double d = std::hypot(r.gmm.Mean(i)[0] - c[0], r.gmm.Mean(i)[1] - c[1]);
      if (d < best) {
        best = d;
        k = i;
      }
    }
    EXPECT_LT(best, 0.1);
    EXPECT_NEAR(r.gmm.Weights()[k], 1.0 / 3.0, 1e-6);
    EXPECT_NEAR(r.gmm.Var(k)[0], 0.09, 0.03);
  }
}

TEST(Em, LogLikelihoodNeverDecreases) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> n(0.0, 1.0);
  FeatureMatrix x(2000, 3);
  for (std::size_t t = 0; t < 2000; ++t)
    for (std::size_t d = 0; d < 3; ++d) x(t, d) = n(rng) * (1.0 + d) + (t % 4);
  for (std::uint64_t seed : {1, 2, 3}) {
    EmConfig cfg;
    cfg.seed = seed;
    cfg.iterations = 25;
    const EmResult r = TrainEm(x, 6, cfg);
    ASSERT_EQ(r.avg_log_likelihood.size(), 26u);
    for (std::size_t i = 1; i < r.avg_log_likelihood.size(); ++i)
      EXPECT_GE(r.avg_log_likelihood[i], r.avg_log_likelihood[i - 1] - 1e-8);
    const auto w = r.gmm.Weights();
    EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 1.0, 1e-10);
  }
}

TEST(Em, VarianceFloorHolds) {
  FeatureMatrix x(100, 1);
  for (std::size_t t = 0; t < 100; ++t) x(t, 0) = t < 50 ? 0.0 : 1.0;
  EmConfig cfg;
  cfg.seed = 1;
  const EmResult r = TrainEm(x, 2, cfg);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_GE(r.gmm.Var(i)[0], 1e-3 * 0.25 - 1e-15);
}

TEST(Em, IndependentOfWorkerCount) {
  const FeatureMatrix x = Clusters(3000, 7);
  EmConfig one, four;
  one.seed = four.seed = 3;
  four.workers = 4;
  const EmResult a = TrainEm(x, 4, one), b = TrainEm(x, 4, four);
  EXPECT_EQ(a.avg_log_likelihood, b.avg_log_likelihood);
  EXPECT_EQ(a.gmm.ContentHash(), b.gmm.ContentHash());
}

TEST(Em, RejectsBadInput) {
  EmConfig cfg;
  EXPECT_THROW(TrainEm(FeatureMatrix(2, 1), 3, cfg), InvalidArgument);
  EXPECT_THROW(TrainEm(FeatureMatrix(5, 1), 0, cfg), InvalidArgument);
}

}  // namespace
}  // namespace lgpspoof
