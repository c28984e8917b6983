// lgpspoof/diag_gmm.h

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

#ifndef LGPSPOOF_DIAG_GMM_H_
#define LGPSPOOF_DIAG_GMM_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lgpspoof/feature_matrix.h"
#include "lgpspoof/tensor_archive.h"

namespace lgpspoof {

/// Diagonal-covariance Gaussian mixture.  Immutable once constructed, so a
/// single instance can be shared by scoring threads.
class DiagGmm {
 public:
  DiagGmm() = default;
  /// means and vars are M x D row-major.  Weights must be non-negative and
  /// sum to 1 (to 1e-4; they are renormalized exactly), variances positive.
  DiagGmm(std::vector<double> weights, std::vector<double> means,
          std::vector<double> vars, std::size_t dim);

  std::size_t NumComponents() const { return weights_.size(); }
  std::size_t Dim() const { return dim_; }

  std::span<const double> Weights() const { return weights_; }
  std::span<const double> Mean(std::size_t i) const {
    return {means_.data() + i * dim_, dim_};
  }
  std::span<const double> Var(std::size_t i) const {
    return {vars_.data() + i * dim_, dim_};
  }
  std::span<const double> InvVar(std::size_t i) const {
    return {inv_vars_.data() + i * dim_, dim_};
  }
  /// log w_i - (D/2) log 2pi - 1/2 sum_d log var_{i,d}
  std::span<const double> LogConstants() const { return log_consts_; }

  /// log p_i(x), the weight-free Gaussian log density of component i.
  double ComponentLogDensity(std::size_t i, std::span<const double> x) const;
  /// All component log densities at once; out has NumComponents() entries.
  void ComponentLogDensities(std::span<const double> x,
                             std::span<double> out) const;

  /// log w_i + log p_i(x) for every component.
  void WeightedLogDensities(std::span<const double> x,
                            std::span<double> out) const;

  /// log sum_i w_i p_i(x).
  double LogLikelihood(std::span<const double> x) const;
  /// Sum of per-frame log-likelihoods.
  double UtteranceLogLikelihood(const FeatureMatrix &utt) const;

  std::uint64_t ContentHash() const;

  TensorArchive ToArchive() const;
  static DiagGmm FromArchive(const TensorArchive &archive);
  void Write(const std::string &path) const { ToArchive().Write(path); }
  static DiagGmm Read(const std::string &path) {
    return FromArchive(TensorArchive::Read(path));
  }

 private:
  void CheckDim(std::span<const double> x) const;

  std::size_t dim_ = 0;
  std::vector<double> weights_;
  std::vector<double> means_;
  std::vector<double> vars_;
  std::vector<double> inv_vars_;
  std::vector<double> log_norms_;   // -(D/2) log 2pi - 1/2 sum log var
  std::vector<double> log_consts_;  // log w + log_norms_
};

/// log p(X | genuine) - log p(X | spoof).
double LlrScore(const DiagGmm &genuine, const DiagGmm &spoof,
                const FeatureMatrix &utt);

/// Numerically stable log(sum(exp(v))).  -inf for an empty or all -inf input.
double LogSumExp(std::span<const double> v);

struct EmConfig {
  int iterations = 30;
  /// Variance floor as a fraction of the global per-dimension variance.
  double variance_floor_ratio = 1e-3;
  std::uint64_t seed = 0;
  /// Threads for the E-step.  Accumulation uses a fixed chunk order, so the
  /// result does not depend on this value.
  int workers = 1;
};

struct EmResult {
  DiagGmm gmm;
  /// Average per-frame log-likelihood of the initial model and after each
  /// iteration: iterations + 1 entries.
  std::vector<double> avg_log_likelihood;
};

/// EM training from k-means++ seeded means, uniform weights and the global
/// variance.  A component that loses all responsibility is re-seeded on the
/// frame with the lowest likelihood.
EmResult TrainEm(const FeatureMatrix &frames, std::size_t num_components,
                 const EmConfig &cfg);

/// Concatenates the frames of several utterances.
FeatureMatrix PoolFrames(std::span<const FeatureMatrix> utts);

}  // namespace lgpspoof

#endif  // LGPSPOOF_DIAG_GMM_H_
