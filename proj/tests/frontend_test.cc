// lgpspoof/frontend_test.cc

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
#include <complex>
#include <filesystem>
#include <numbers>
#include <random>

#include <unistd.h>

#include <gtest/gtest.h>

#include "lgpspoof/base.h"
#include "lgpspoof/frontend.h"
#include "lgpspoof/tensor_archive.h"

namespace lgpspoof {
namespace {

Waveform Noise(std::size_t n, std::uint64_t seed, double amplitude = 0.3) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-amplitude, amplitude);
  Waveform w;
  for (std::size_t i = 0; i < n; ++i) w.samples.push_back(u(rng));
  return w;
}

// Direct evaluation of the LFCC definition: naive DFT, triangles written as
// 1 - |f - centre| / spacing, explicit DCT-II sums.
FeatureMatrix NaiveLfcc(const Waveform &w, const LfccConfig &cfg) {
  const double sr = w.sample_rate;
  const std::size_t win = std::lround(cfg.window_ms * sr / 1000.0);
  const std::size_t hop = std::lround(cfg.hop_ms * sr / 1000.0);
  const std::size_t frames = 1 + (w.samples.size() - win) / hop;
  const std::size_t nf = cfg.num_filters, n = cfg.fft_size;
  const double spacing = sr / 2.0 / (nf + 1);
  FeatureMatrix out(frames, cfg.num_ceps);
  for (std::size_t t = 0; t < frames; ++t) {
    std::vector<double> power(n / 2 + 1);
    for (std::size_t b = 0; b <= n / 2; ++b) {
      std::complex<double> acc = 0.0;
      for (std::size_t i = 0; i < win; ++i) {
        const double h =
            0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / (win - 1.0));
        acc += w.samples[t * hop + i] * h *
               std::polar(1.0, -2.0 * std::numbers::pi * b * i / n);
      }
      power[b] = std::norm(acc);
    }
    std::vector<double> loge(nf);
    for (std::size_t k = 0; k < nf; ++k) {
      double e = 0.0;
      for (std::size_t b = 0; b <= n / 2; ++b) {
        const double f = b * sr / n;
        e += std::max(0.0, 1.0 - std::abs(f - spacing * (k + 1)) / spacing) *
             power[b];
      }
      loge[k] = std::log(e + 2.220446049250313e-16);
    }
    for (std::size_t k = 0; k < cfg.num_ceps; ++k) {
      double c = 0.0;
      for (std::size_t j = 0; j < nf; ++j)
        c += loge[j] * std::cos(std::numbers::pi * k * (j + 0.5) / nf);
      out(t, k) = c * std::sqrt((k == 0 ? 1.0 : 2.0) / nf);
    }
  }
  return out;
}

TEST(Lfcc, FrameCountAndDims) {
  LfccConfig cfg;
  const Waveform w = Noise(16000, 1);
  const FeatureMatrix f = ExtractLfcc(w, cfg);
  EXPECT_EQ(f.NumFrames(), 1u + (16000u - 320u) / 160u);
  EXPECT_EQ(f.Dim(), 60u);
  cfg.include_deltas = false;
  EXPECT_EQ(ExtractLfcc(w, cfg).Dim(), 20u);
  EXPECT_THROW(ExtractLfcc(Noise(319, 1), cfg), InvalidArgument);
  cfg.num_ceps = 21;
  EXPECT_THROW(ExtractLfcc(w, cfg), InvalidArgument);
}

TEST(Lfcc, FilterbankSumsToOneInsideCentres) {
  LfccConfig cfg;
  const Tensor fb = LinearFilterbank(cfg, 16000.0);
  const double spacing = 8000.0 / 21.0;
  for (std::size_t b = 0; b < fb.Dim(1); ++b) {
    const double f = b * 16000.0 / 512.0;
    double sum = 0.0;
    for (std::size_t k = 0; k < 20; ++k) {
      EXPECT_GE(fb.At(k, b), 0.0);
      EXPECT_LE(fb.At(k, b), 1.0);
      sum += fb.At(k, b);
    }
    if (f >= spacing && f <= 20.0 * spacing) EXPECT_NEAR(sum, 1.0, 1e-12);
    if (f <= 0.0 || f >= 8000.0) EXPECT_EQ(sum, 0.0);
  }
}

TEST(Lfcc, MatchesNaiveDefinition) {
  LfccConfig cfg;
  cfg.include_deltas = false;
  const Waveform w = Noise(1600, 2);
  const FeatureMatrix fast = ExtractLfcc(w, cfg), slow = NaiveLfcc(w, cfg);
  ASSERT_EQ(fast.NumFrames(), slow.NumFrames());
  for (std::size_t t = 0; t < fast.NumFrames(); ++t)
    for (std::size_t k = 0; k < 20; ++k)
      EXPECT_NEAR(fast(t, k), slow(t, k), 1e-9);
}

TEST(Lfcc, GainMovesOnlyC0) {
  LfccConfig cfg;
  cfg.include_deltas = false;
  Waveform w = Noise(4000, 3, 0.1);
  const FeatureMatrix a = ExtractLfcc(w, cfg);
  for (double &s : w.samples) s *= 4.0;
  const FeatureMatrix b = ExtractLfcc(w, cfg);
  const double shift = std::sqrt(20.0) * 2.0 * std::log(4.0);
  for (std::size_t t = 0; t < a.NumFrames(); ++t) {
    EXPECT_NEAR(b(t, 0) - a(t, 0), shift, 1e-9);
    for (std::size_t k = 1; k < 20; ++k) EXPECT_NEAR(b(t, k), a(t, k), 1e-9);
  }
}

TEST(Deltas, LinearRampHasConstantSlope) {
  FeatureMatrix x(20, 2);
  for (std::size_t t = 0; t < 20; ++t) {
    x(t, 0) = 3.0 * t;
    x(t, 1) = -0.5 * t + 1.0;
  }
  const FeatureMatrix d = ComputeDeltas(x, 2);
  for (std::size_t t = 2; t + 2 < 20; ++t) {
    EXPECT_NEAR(d(t, 0), 3.0, 1e-12);
    EXPECT_NEAR(d(t, 1), -0.5, 1e-12);
  }
  // Replicated edges: at t = 0 the window sees x[1] - x[0] and x[2] - x[0].
  EXPECT_NEAR(d(0, 0), (1 * 3.0 + 2 * 6.0) / 10.0, 1e-12);
  const FeatureMatrix c = ComputeDeltas(FeatureMatrix(5, 1, {2, 2, 2, 2, 2}), 3);
  for (std::size_t t = 0; t < 5; ++t) EXPECT_EQ(c(t, 0), 0.0);
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("lgpspoof_frontend_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string Path(const std::string &name) const { return (dir_ / name).string(); }
  std::filesystem::path dir_;
};

TEST_F(TempDir, WavRoundTrip) {
  Waveform w = Noise(1000, 4, 0.9);
  w.sample_rate = 8000.0;
  WriteWav(Path("a.wav"), w);
  const Waveform back = ReadWav(Path("a.wav"));
  EXPECT_EQ(back.sample_rate, 8000.0);
  ASSERT_EQ(back.samples.size(), 1000u);
  for (std::size_t i = 0; i < 1000; ++i)
    EXPECT_NEAR(back.samples[i], w.samples[i], 1.0 / 32768.0);
  WriteFileBytes(Path("bad.wav"), "RIFX0000WAVE");
  EXPECT_THROW(ReadWav(Path("bad.wav")), FormatError);
}

TEST_F(TempDir, FeatureFileRoundTrip) {
  FeatureMatrix f(3, 2, {0.5, -1.25, 3.0, 4.0, 1e-3, -7.0});
  StoreFeatures(Path("f.lgpf"), f);
  const FeatureMatrix back = LoadFeatures(Path("f.lgpf"));
  ASSERT_EQ(back.NumFrames(), 3u);
  for (std::size_t i = 0; i < 6; ++i)
    EXPECT_EQ(back.Data()[i], static_cast<double>(static_cast<float>(f.Data()[i])));
  const std::string bytes = SerializeFeatures(f);
  EXPECT_EQ(bytes.substr(0, 4), "LGPF");
  EXPECT_EQ(bytes.size(), 4u + 2u + 4u + 4u + 6u * 4u);
  EXPECT_THROW(DeserializeFeatures(bytes.substr(0, bytes.size() - 1)), FormatError);
  std::string wrong_version = bytes;
  wrong_version[4] = 9;
  EXPECT_THROW(DeserializeFeatures(wrong_version), FormatError);
  EXPECT_THROW(DeserializeFeatures("XXXX"), FormatError);
}

TEST(FixLength, TruncatesAndTiles) {
  const FeatureMatrix f(3, 1, {1, 2, 3});
  EXPECT_EQ(FixLength(f, 2), FeatureMatrix(2, 1, {1, 2}));
  EXPECT_EQ(FixLength(f, 3), f);
  EXPECT_EQ(FixLength(f, 8), FeatureMatrix(8, 1, {1, 2, 3, 1, 2, 3, 1, 2}));
  EXPECT_THROW(FixLength(FeatureMatrix(0, 1), 4), InvalidArgument);
}

}  // namespace
}  // namespace lgpspoof
