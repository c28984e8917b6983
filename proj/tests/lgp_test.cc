// lgpspoof/lgp_test.cc

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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "lgpspoof/base.h"
#include "lgpspoof/lgp.h"

namespace lgpspoof {
namespace {

DiagGmm RandomGmm(std::size_t m, std::size_t dim, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(0.3, 2.0);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> w(m, 1.0 / m), mu(m * dim), var(m * dim);
  for (double &v : mu) v = n(rng);
  for (double &v : var) v = u(rng);
  return DiagGmm(w, mu, var, dim);
}

FeatureMatrix RandomFrames(std::size_t t, std::size_t dim, std::mt19937_64 &rng) {
  std::normal_distribution<double> n(0.0, 1.5);
  FeatureMatrix x(t, dim);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t d = 0; d < dim; ++d) x(i, d) = n(rng);
  return x;
}

TEST(Lgp, FastFormHandExample) {
  const DiagGmm g({1.0}, {1.0, 1.0}, {1.0, 1.0}, 2);
  const std::vector<double> x = {1.0, 1.0};
  EXPECT_DOUBLE_EQ(LgpFrame(g, x, LgpForm::kFast)[0], 1.0);
}

TEST(Lgp, FullAndFastDifferByAPerComponentConstant) {
  std::mt19937_64 rng(1);
  const DiagGmm g = RandomGmm(4, 3, rng);
  const FeatureMatrix x = RandomFrames(20, 3, rng);
  std::vector<double> offset;
  for (std::size_t t = 0; t < 20; ++t) {
    const auto full = LgpFrame(g, x.Row(t), LgpForm::kFull);
    const auto fast = LgpFrame(g, x.Row(t), LgpForm::kFast);
    if (offset.empty())
      for (std::size_t i = 0; i < 4; ++i) offset.push_back(full[i] - fast[i]);
    for (std::size_t i = 0; i < 4; ++i)
      EXPECT_NEAR(full[i] - fast[i], offset[i], 1e-10);
  }
  // The constant is the x-independent part of the log density.
  for (std::size_t i = 0; i < 4; ++i) {
    double c = 0.0;
    for (std::size_t d = 0; d < 3; ++d)
      c += -0.5 * std::log(2.0 * M_PI * g.Var(i)[d]) -
           0.5 * g.Mean(i)[d] * g.Mean(i)[d] / g.Var(i)[d];
    EXPECT_NEAR(offset[i], c, 1e-10);
  }
}

TEST(Lgp, NormalizedTrainingDataIsStandardized) {
  std::mt19937_64 rng(2);
  const DiagGmm g = RandomGmm(5, 2, rng);
  const std::vector<FeatureMatrix> utts = {RandomFrames(30, 2, rng),
                                           RandomFrames(45, 2, rng),
                                           RandomFrames(7, 2, rng)};
  for (LgpForm form : {LgpForm::kFull, LgpForm::kFast}) {
    const LgpNormStats stats = FitNormStats(g, utts, form);
    std::vector<double> sum(5, 0.0), sq(5, 0.0);
    std::size_t n = 0;
    for (const auto &u : utts) {
      const Tensor y = ExtractLgp(g, stats, u);
      for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t t = 0; t < u.NumFrames(); ++t) {
          sum[i] += y.At(i, t);
          sq[i] += y.At(i, t) * y.At(i, t);
        }
      n += u.NumFrames();
    }
    for (std::size_t i = 0; i < 5; ++i) {
      EXPECT_NEAR(sum[i] / n, 0.0, 1e-6);
      EXPECT_NEAR(std::sqrt(sq[i] / n), 1.0, 1e-6);
    }
  }
}

TEST(Lgp, StatsIndependentOfWorkerCount) {
  std::mt19937_64 rng(3);
  const DiagGmm g = RandomGmm(3, 2, rng);
  std::vector<FeatureMatrix> utts;
  for (int i = 0; i < 9; ++i) utts.push_back(RandomFrames(10 + i, 2, rng));
  const LgpNormStats a = FitNormStats(g, utts, LgpForm::kFast, 1);
  const LgpNormStats b = FitNormStats(g, utts, LgpForm::kFast, 3);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std, b.std);
}

TEST(Lgp, StdIsFloored) {
  const DiagGmm g({1.0}, {0.0}, {1.0}, 1);
  FeatureMatrix x(4, 1);  // constant frames give zero spread
  for (std::size_t t = 0; t < 4; ++t) x(t, 0) = 2.0;
  const std::vector<FeatureMatrix> utts = {x};
  const LgpNormStats s = FitNormStats(g, utts, LgpForm::kFast);
  EXPECT_EQ(s.std[0], LgpNormStats::kStdFloor);
  EXPECT_TRUE(ExtractLgp(g, s, x).AllFinite());
}

TEST(Lgp, ErrorsAndPersistence) {
  std::mt19937_64 rng(4);
  const DiagGmm g = RandomGmm(3, 2, rng);
  const std::vector<FeatureMatrix> one = {RandomFrames(1, 2, rng)};
  EXPECT_THROW(FitNormStats(g, one, LgpForm::kFast), InvalidArgument);
  const std::vector<FeatureMatrix> utts = {RandomFrames(10, 2, rng)};
  const LgpNormStats s = FitNormStats(g, utts, LgpForm::kFull);
  const LgpNormStats back = LgpNormStats::FromArchive(
      TensorArchive::Deserialize(s.ToArchive().Serialize()));
  EXPECT_EQ(back.form, LgpForm::kFull);
  EXPECT_EQ(back.ContentHash(), s.ContentHash());
  const DiagGmm bigger = RandomGmm(4, 2, rng);
  EXPECT_THROW(ExtractLgp(bigger, s, utts[0]), InvalidArgument);
  EXPECT_THROW(ParseLgpForm("medium"), InvalidArgument);
}

TEST(Lgp, FrameLayoutRoundTrip) {
  const Tensor y({2, 3}, std::vector<double>{1, 2, 3, 4, 5, 6});
  const FeatureMatrix f = LgpToFrames(y);
  EXPECT_EQ(f.NumFrames(), 3u);
  EXPECT_EQ(f(2, 0), 3.0);
  EXPECT_EQ(f(2, 1), 6.0);
  EXPECT_EQ(FramesToLgp(f), y);
}

}  // namespace
}  // namespace lgpspoof
