// lgpspoof/frontend.h

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

#ifndef LGPSPOOF_FRONTEND_H_
#define LGPSPOOF_FRONTEND_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lgpspoof/feature_matrix.h"
#include "lgpspoof/tensor.h"

namespace lgpspoof {

struct Waveform {
  std::vector<double> samples;  // in [-1, 1)
  double sample_rate = 16000.0;
};

/// 16-bit PCM mono RIFF/WAVE.
Waveform ReadWav(const std::string &path);
void WriteWav(const std::string &path, const Waveform &wave);

struct LfccConfig {
  double window_ms = 20.0;
  double hop_ms = 10.0;
  std::size_t fft_size = 512;
  std::size_t num_filters = 20;
  std::size_t num_ceps = 20;
  std::size_t delta_window = 2;
  bool include_deltas = true;

  /// Throws InvalidArgument on inconsistent settings.
  void Validate(double sample_rate) const;
  std::size_t WindowSamples(double sample_rate) const;
  std::size_t HopSamples(double sample_rate) const;
  std::size_t FeatureDim() const {
    return include_deltas ? 3 * num_ceps : num_ceps;
  }
};

/// (num_filters, fft_size / 2 + 1) triangular filters with centres equally
/// spaced on a linear frequency axis between 0 and Nyquist.
Tensor LinearFilterbank(const LfccConfig &cfg, double sample_rate);

/// Hamming-windowed power spectrum -> linear filterbank -> log -> DCT-II,
/// keeping the first num_ceps coefficients, optionally with deltas and
/// delta-deltas appended.
FeatureMatrix ExtractLfcc(const Waveform &wave, const LfccConfig &cfg);

/// Regression deltas over +-window frames, with edge frames replicated.
FeatureMatrix ComputeDeltas(const FeatureMatrix &feats, std::size_t window);

/*
  Feature container, all little-endian:
    "LGPF"   4 bytes magic
    version  u16 (1)
    rows     u32 (frames)
    cols     u32 (dimension)
    values   rows x cols float32, row-major
*/
inline constexpr std::uint16_t kFeatureFormatVersion = 1;

std::string SerializeFeatures(const FeatureMatrix &feats);
FeatureMatrix DeserializeFeatures(std::string_view bytes);
void StoreFeatures(const std::string &path, const FeatureMatrix &feats);
FeatureMatrix LoadFeatures(const std::string &path);

/// Truncates to the first target frames, or tiles the utterance cyclically up
/// to target frames.
FeatureMatrix FixLength(const FeatureMatrix &feats, std::size_t target);

}  // namespace lgpspoof

#endif  // LGPSPOOF_FRONTEND_H_
