// lgpspoof/training.h

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

#ifndef LGPSPOOF_TRAINING_H_
#define LGPSPOOF_TRAINING_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "lgpspoof/diag_gmm.h"
#include "lgpspoof/feature_matrix.h"
#include "lgpspoof/lgp.h"
#include "lgpspoof/model.h"

namespace lgpspoof {

struct TrainConfig {
  std::size_t batch_size = 32;
  std::size_t epochs = 100;
  /// Epochs of the fusion stage of two-step training; 0 means `epochs`.
  std::size_t fusion_epochs = 0;
  double lr = 1e-4;
  std::uint64_t seed = 0;
  std::size_t target_length = 400;  // N
  int workers = 1;

  void Validate() const;
};

struct Utterance {
  std::string id;
  FeatureMatrix features;
  int label = kBonafide;  // kBonafide or kSpoof
};

struct LabeledDataset {
  std::string partition;  // train, dev or eval
  std::vector<Utterance> utterances;

  std::size_t Size() const { return utterances.size(); }
  bool Empty() const { return utterances.empty(); }
  /// Unique ids, labels in {kBonafide, kSpoof}, equal frame dims.
  void Validate() const;
  bool HasBothClasses() const;
};

struct EpochRecord {
  std::string stage;  // "train", "path0", "path1", "fusion"
  std::size_t epoch = 0;  // 1-based
  double loss = 0.0;      // mean minibatch loss over the epoch
  /// NaN when no dev set was given.
  double dev_eer = std::numeric_limits<double>::quiet_NaN();
};

using EpochCallback = std::function<void(const EpochRecord &)>;

struct TrainResult {
  SpoofModel model;  // parameters of the selected epoch
  std::vector<EpochRecord> trace;
  std::size_t best_epoch = 0;
  double best_dev_eer = std::numeric_limits<double>::quiet_NaN();
};

/// Trains every parameter of `model` with Adam and softmax cross-entropy on
/// training utterances fixed to cfg.target_length frames.  The data are
/// reshuffled each epoch from a seed derived from cfg.seed.  With a dev set
/// holding both classes the epoch of lowest dev EER (UFM scoring, later epoch
/// on ties) is returned, otherwise the last one.  A non-finite loss throws
/// NumericError.
TrainResult TrainEndToEnd(SpoofModel model, const LabeledDataset &train,
                          const LabeledDataset *dev, const TrainConfig &cfg,
                          const EpochCallback &on_epoch = {});

struct TwoStepResult {
  SpoofModel model;  // trunks from step 1, classifier from step 2
  std::vector<PathNetwork> step1_networks;  // trunks at the end of step 1
  std::vector<TrainResult> path_results;    // single-path models of step 1
  std::vector<EpochRecord> fusion_trace;
  std::size_t best_epoch = 0;
  double best_dev_eer = std::numeric_limits<double>::quiet_NaN();
};

/// Step 1 trains each path with its own temporary classifier exactly like a
/// one-path model.  Step 2 drops the temporary classifiers, freezes the
/// trunks, and trains only the final classifier of `model` on the
/// concatenated eval-mode embeddings.
TwoStepResult TrainTwoStep(const SpoofModel &model, const LabeledDataset &train,
                           const LabeledDataset *dev, const TrainConfig &cfg,
                           const EpochCallback &on_epoch = {});

struct FrontendConfig {
  std::size_t order = 512;  // GMM components M
  EmConfig em;
  LgpForm form = LgpForm::kFast;
};

/// One path: a GMM on the pooled training frames.  Two paths: the bona fide
/// GMM first, then the spoof GMM.  Normalization statistics of each GMM are
/// fitted on the whole training set.
std::vector<PathFrontend> TrainFrontends(const LabeledDataset &train,
                                         std::size_t paths,
                                         const FrontendConfig &cfg);

/// Log-likelihood-ratio baseline scores of every utterance of `data`.
std::vector<double> LlrScores(const DiagGmm &bonafide, const DiagGmm &spoof,
                              const LabeledDataset &data, int workers = 1);

/// UFM detection scores of every utterance of `data` in dataset order.
std::vector<double> ScoreDataset(const SpoofModel &model,
                                 const LabeledDataset &data, int workers = 1);

}  // namespace lgpspoof

#endif  // LGPSPOOF_TRAINING_H_
