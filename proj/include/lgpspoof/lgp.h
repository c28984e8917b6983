// lgpspoof/lgp.h

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

#ifndef LGPSPOOF_LGP_H_
#define LGPSPOOF_LGP_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lgpspoof/diag_gmm.h"
#include "lgpspoof/feature_matrix.h"
#include "lgpspoof/tensor.h"
#include "lgpspoof/tensor_archive.h"

namespace lgpspoof {

/*
  Log Gaussian probability (LGP) features.  For every frame x the feature
  holds one value per GMM component i:

    full form:  y_i  = log N(x; mu_i, Sigma_i)
    fast form:  y'_i = -1/2 x' Sigma_i^-1 x + x' Sigma_i^-1 mu_i

  The two differ by a per-component constant that does not depend on x, so
  after per-component mean/variance normalization with statistics fitted in
  the same form they give the same feature.
*/

enum class LgpForm { kFull = 0, kFast = 1 };

LgpForm ParseLgpForm(const std::string &name);
const char *LgpFormName(LgpForm form);

void LgpFrameFull(const DiagGmm &gmm, std::span<const double> x,
                  std::span<double> out);
void LgpFrameFast(const DiagGmm &gmm, std::span<const double> x,
                  std::span<double> out);
std::vector<double> LgpFrame(const DiagGmm &gmm, std::span<const double> x,
                             LgpForm form);

struct LgpNormStats {
  std::vector<double> mean;
  std::vector<double> std;
  LgpForm form = LgpForm::kFast;

  static constexpr double kStdFloor = 1e-8;

  std::size_t Order() const { return mean.size(); }
  std::uint64_t ContentHash() const;

  TensorArchive ToArchive() const;
  static LgpNormStats FromArchive(const TensorArchive &archive);
  void Write(const std::string &path) const { ToArchive().Write(path); }
  static LgpNormStats Read(const std::string &path) {
    return FromArchive(TensorArchive::Read(path));
  }
};

/// Per-component mean and population std of the raw LGP values over every
/// frame of every utterance; std is floored at kStdFloor.
LgpNormStats FitNormStats(const DiagGmm &gmm,
                          std::span<const FeatureMatrix> utts, LgpForm form,
                          int workers = 1);

/// Normalized LGP feature of an utterance, shaped (M, T).
Tensor ExtractLgp(const DiagGmm &gmm, const LgpNormStats &stats,
                  const FeatureMatrix &utt);

/// The same feature laid out frame-major (T x M), for storage in the feature
/// container.
FeatureMatrix LgpToFrames(const Tensor &lgp);
Tensor FramesToLgp(const FeatureMatrix &frames);

}  // namespace lgpspoof

#endif  // LGPSPOOF_LGP_H_
