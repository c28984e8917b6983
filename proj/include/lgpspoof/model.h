// lgpspoof/model.h

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

#ifndef LGPSPOOF_MODEL_H_
#define LGPSPOOF_MODEL_H_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "lgpspoof/diag_gmm.h"
#include "lgpspoof/feature_matrix.h"
#include "lgpspoof/layers.h"
#include "lgpspoof/lgp.h"
#include "lgpspoof/tensor_archive.h"

namespace lgpspoof {

/*
  GMM-ResNet / GMM-SENet classifiers.

  One path:   LGP (M, N) -> Conv1d(3,1,C)+BN+ReLU -> blocks x ResBlock
              -> max over time -> embedding (C)
  ResBlock:   out = x + SE(ReLU(BN(conv(ReLU(BN(conv(x)))))))   (SE optional)
  Model:      concat of path embeddings (paths * C) -> FC(2).

  Class 0 is bona fide and class 1 is spoof; the detection score is
  logit[0] - logit[1].  A two-path model feeds each path the LGP feature of
  its own GMM (genuine-trained, spoof-trained); a one-path model uses a GMM
  trained on all training data.
*/

inline constexpr int kBonafide = 0;
inline constexpr int kSpoof = 1;

struct ClassifierConfig {
  std::size_t input_dim = 512;     // GMM order M
  std::size_t channels = 512;
  std::size_t blocks = 6;
  bool se_enabled = false;
  std::size_t se_reduction = 16;
  std::size_t input_length = 400;  // N
  std::size_t paths = 1;

  void Validate() const;
};

struct ResBlock {
  Conv1dParams conv1;
  BatchNormParams bn1;
  Conv1dParams conv2;
  BatchNormParams bn2;
  std::optional<SeBlockParams> se;
};

/// Convolutional trunk of one path.  The same type holds gradients.
struct PathNetwork {
  Conv1dParams stem_conv;
  BatchNormParams stem_bn;
  std::vector<ResBlock> blocks;
  /// Temporary classifier used while pretraining a path on its own.
  std::optional<LinearParams> temp_fc;

  /// He-normal convolution weights, identity BN, zero biases.
  static PathNetwork Create(const ClassifierConfig &cfg, std::mt19937_64 &rng);
  /// Same structure, every tensor zero.
  PathNetwork ZerosLike() const;

  /// Trainable tensors in a fixed order (temp_fc last, when present).
  std::vector<Tensor *> Trainable();
  std::vector<const Tensor *> Trainable() const;
  /// Conv and res-block tensors including BN running statistics; excludes
  /// temp_fc.
  std::vector<std::pair<std::string, const Tensor *>> TrunkState() const;
};

struct ResBlockCache {
  Tensor input, conv1_out, bn1_out, relu1_out, conv2_out, bn2_out, relu2_out;
  BatchNormCache bn1, bn2;
  SeCache se;
};

struct PathCache {
  Tensor input, stem_conv_out, stem_bn_out;
  BatchNormCache stem_bn;
  std::vector<ResBlockCache> blocks;
  Tensor trunk_out;
  std::vector<std::size_t> argmax;
};

/// x is (batch, M, N); returns the (batch, C) embedding.  Train mode updates
/// BN running statistics.
Tensor PathForward(PathNetwork &net, const Tensor &x, BnMode mode,
                   PathCache *cache = nullptr);
/// Eval-mode forward on a read-only network.
Tensor PathForward(const PathNetwork &net, const Tensor &x,
                   PathCache *cache = nullptr);
/// Gradients of every trunk tensor (temp_fc left empty); `grad_input`
/// receives d/dx when non-null.
PathNetwork PathBackward(const PathNetwork &net, const Tensor &grad_embedding,
                         const PathCache &cache, Tensor *grad_input = nullptr);

/// GMM and normalization statistics that turn raw frames into a path input.
struct PathFrontend {
  DiagGmm gmm;
  LgpNormStats stats;
};

struct ModelGrads {
  std::vector<PathNetwork> paths;
  LinearParams fc;
};

struct ModelCache {
  std::vector<PathCache> paths;
  Tensor concat;  // (batch, paths * C)
};

class SpoofModel {
 public:
  SpoofModel() = default;
  /// Random trunks (seeded), zero-initialized final classifier.
  static SpoofModel Create(const ClassifierConfig &cfg,
                           std::vector<PathFrontend> frontends,
                           std::uint64_t seed);

  /// Wraps existing trunks and classifier; shapes are checked against `cfg`.
  static SpoofModel Assemble(const ClassifierConfig &cfg,
                             std::vector<PathFrontend> frontends,
                             std::vector<PathNetwork> networks,
                             LinearParams classifier);

  const ClassifierConfig &Config() const { return config_; }
  std::size_t NumPaths() const { return networks_.size(); }
  const PathFrontend &Frontend(std::size_t p) const { return frontends_[p]; }
  PathNetwork &Network(std::size_t p) { return networks_[p]; }
  const PathNetwork &Network(std::size_t p) const { return networks_[p]; }
  LinearParams &Classifier() { return fc_; }
  const LinearParams &Classifier() const { return fc_; }

  /// Normalized LGP features of `utt` for every path, each (M, T).
  std::vector<Tensor> PathInputs(const FeatureMatrix &utt) const;

  /// inputs[p] is (batch, M, N) for path p.  Returns (batch, 2) logits.
  Tensor Forward(std::span<const Tensor> inputs, BnMode mode,
                 ModelCache *cache = nullptr);
  Tensor Forward(std::span<const Tensor> inputs,
                 ModelCache *cache = nullptr) const;
  ModelGrads Backward(const Tensor &grad_logits, const ModelCache &cache) const;

  /// Eval-mode logits and score of one fixed-length raw utterance.
  struct Output {
    double logit_bonafide = 0.0;
    double logit_spoof = 0.0;
    double score = 0.0;
  };
  Output ForwardUtterance(const FeatureMatrix &segment) const;

  /// Trainable tensors of all paths followed by the final classifier.
  std::vector<Tensor *> Trainable();

  TensorArchive ToArchive() const;
  /// Rebuilds a model and checks that `frontends` match the fingerprints
  /// recorded at training time.
  static SpoofModel FromArchive(const TensorArchive &archive,
                                std::vector<PathFrontend> frontends);

 private:
  ClassifierConfig config_;
  std::vector<PathFrontend> frontends_;
  std::vector<PathNetwork> networks_;
  LinearParams fc_;
};

/// logit[0] - logit[1] for every row of (batch, 2) logits.
std::vector<double> DetectionScores(const Tensor &logits);

/// Stacks equally-shaped (M, N) tensors into (batch, M, N).
Tensor StackBatch(std::span<const Tensor *const> items);

// ------------------------------------------------------------------- UFM

struct UfmConfig {
  std::size_t segment_length = 400;  // N; segments overlap by N / 2
  void Validate() const;
};

/// Extends `utt` cyclically to the smallest multiple L of N with L >= T and
/// cuts it into 2L/N - 1 windows of N frames starting every N/2 frames.
std::vector<FeatureMatrix> SegmentUfm(const FeatureMatrix &utt,
                                      const UfmConfig &cfg);

/// Mean detection score over the UFM segments of `utt`; segments are batched.
double ScoreUtterance(const SpoofModel &model, const FeatureMatrix &utt);
/// Same, starting from precomputed path inputs, each (M, T).
double ScoreLgp(const SpoofModel &model, std::span<const Tensor> path_lgp);

}  // namespace lgpspoof

#endif  // LGPSPOOF_MODEL_H_
