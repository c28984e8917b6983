// lgpspoof/training.cc

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

#include "lgpspoof/training.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>

#include "lgpspoof/adam.h"
#include "lgpspoof/base.h"
#include "lgpspoof/evaluation.h"
#include "lgpspoof/frontend.h"
#include "lgpspoof/parallel.h"

namespace lgpspoof {

void TrainConfig::Validate() const {
  if (batch_size == 0) throw InvalidArgument("train: batch size must be >= 1");
  if (epochs == 0) throw InvalidArgument("train: epochs must be >= 1");
  if (!(lr > 0.0) || !std::isfinite(lr))
    throw InvalidArgument("train: learning rate must be positive");
  UfmConfig{target_length}.Validate();
}

void LabeledDataset::Validate() const {
  std::unordered_set<std::string> ids;
  for (const auto &u : utterances) {
    if (!ids.insert(u.id).second)
      throw InvalidArgument("dataset " + partition + ": duplicate id '" +
                            u.id + "'");
    if (u.label != kBonafide && u.label != kSpoof)
      throw InvalidArgument("dataset " + partition + ": utterance '" + u.id +
                            "' has no valid label");
    if (u.features.Empty())
      throw InvalidArgument("dataset " + partition + ": utterance '" + u.id +
                            "' is empty");
    if (u.features.Dim() != utterances.front().features.Dim())
      throw InvalidArgument("dataset " + partition +
                            ": utterances differ in feature dim");
  }
}

bool LabeledDataset::HasBothClasses() const {
  bool b = false, s = false;
  for (const auto &u : utterances) (u.label == kBonafide ? b : s) = true;
  return b && s;
}

namespace {

// Path inputs of every training utterance at the fixed length, [utt][path].
std::vector<std::vector<Tensor>> FixedInputs(const SpoofModel &model,
                                             const LabeledDataset &data,
                                             std::size_t length, int workers) {
  std::vector<std::vector<Tensor>> out(data.Size());
  ParallelFor(data.Size(), workers, [&](std::size_t i) {
    out[i] = model.PathInputs(FixLength(data.utterances[i].features, length));
  });
  return out;
}

// Full-length path inputs, [utt][path].
std::vector<std::vector<Tensor>> FullInputs(const SpoofModel &model,
                                            const LabeledDataset &data,
                                            int workers) {
  std::vector<std::vector<Tensor>> out(data.Size());
  ParallelFor(data.Size(), workers, [&](std::size_t i) {
    out[i] = model.PathInputs(data.utterances[i].features);
  });
  return out;
}

double EerOf(const LabeledDataset &data, std::span<const double> scores) {
  std::vector<double> b, s;
  for (std::size_t i = 0; i < data.Size(); ++i)
    (data.utterances[i].label == kBonafide ? b : s).push_back(scores[i]);
  return ComputeEer(b, s).eer;
}

std::vector<std::size_t> EpochOrder(std::size_t n, std::uint64_t seed,
                                    std::size_t epoch) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(DeriveSeed(seed, epoch));
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

std::vector<const Tensor *> GradList(ModelGrads &g) {
  std::vector<const Tensor *> out;
  for (auto &p : g.paths) {
    auto t = p.Trainable();
    out.insert(out.end(), t.begin(), t.end());
  }
  out.push_back(&g.fc.weight);
  out.push_back(&g.fc.bias);
  return out;
}

void CheckLoss(double loss, const std::string &stage, std::size_t epoch,
               std::size_t batch) {
  if (!std::isfinite(loss))
    throw NumericError("training diverged: non-finite loss " +
                       std::to_string(loss) + " in stage " + stage +
                       ", epoch " + std::to_string(epoch) + ", batch " +
                       std::to_string(batch));
}

void CheckTrainable(const LabeledDataset &train, const TrainConfig &cfg) {
  cfg.Validate();
  if (train.Empty()) throw InvalidArgument("train: empty training set");
  train.Validate();
}

TrainResult TrainStage(SpoofModel model, const LabeledDataset &train,
                       const LabeledDataset *dev, const TrainConfig &cfg,
                       const std::string &stage, const EpochCallback &on_epoch) {
  CheckTrainable(train, cfg);
  for (std::size_t p = 0; p < model.NumPaths(); ++p)
    if (model.Network(p).temp_fc)
      throw InvalidArgument("train: path networks must not carry a temporary "
                            "classifier");
  if (model.Config().input_length != cfg.target_length)
    throw InvalidArgument("train: target length " +
                          std::to_string(cfg.target_length) +
                          " differs from the model input length " +
                          std::to_string(model.Config().input_length));
  const bool use_dev = dev && dev->HasBothClasses();
  if (use_dev) dev->Validate();

  const auto inputs =
      FixedInputs(model, train, cfg.target_length, cfg.workers);
  std::vector<std::vector<Tensor>> dev_inputs;
  if (use_dev) dev_inputs = FullInputs(model, *dev, cfg.workers);

  AdamState adam;
  adam.lr = cfg.lr;
  TrainResult result;
  const std::size_t n = train.Size(), paths = model.NumPaths();
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    const auto order = EpochOrder(n, cfg.seed, epoch);
    double loss_sum = 0.0;
    std::size_t batch_index = 0;
    for (std::size_t first = 0; first < n; first += cfg.batch_size) {
      const std::size_t count = std::min(cfg.batch_size, n - first);
      std::vector<Tensor> batch;
      for (std::size_t p = 0; p < paths; ++p) {
        std::vector<const Tensor *> items;
        for (std::size_t b = 0; b < count; ++b)
          items.push_back(&inputs[order[first + b]][p]);
        batch.push_back(StackBatch(items));
      }
      std::vector<int> labels(count);
      for (std::size_t b = 0; b < count; ++b)
        labels[b] = train.utterances[order[first + b]].label;

      ModelCache cache;
      Tensor logits = model.Forward(batch, BnMode::kTrain, &cache);
      LossResult lr = SoftmaxCrossEntropy(logits, labels);
      CheckLoss(lr.loss, stage, epoch, batch_index);
      ModelGrads grads = model.Backward(lr.grad, cache);
      std::vector<Tensor *> params = model.Trainable();
      std::vector<const Tensor *> g = GradList(grads);
      AdamStep(params, g, adam);
      loss_sum += lr.loss * count;
      ++batch_index;
    }

    EpochRecord rec;
    rec.stage = stage;
    rec.epoch = epoch;
    rec.loss = loss_sum / n;
    if (use_dev) {
      std::vector<double> scores(dev->Size());
      ParallelFor(dev->Size(), cfg.workers, [&](std::size_t i) {
        scores[i] = ScoreLgp(model, dev_inputs[i]);
      });
      rec.dev_eer = EerOf(*dev, scores);
    }
    result.trace.push_back(rec);
    if (on_epoch) on_epoch(rec);

    const bool better = !use_dev || std::isnan(result.best_dev_eer) ||
                        rec.dev_eer <= result.best_dev_eer;
    if (better) {
      result.model = model;
      result.best_epoch = epoch;
      result.best_dev_eer = rec.dev_eer;
    }
  }
  return result;
}

// Mean over UFM segments of the concatenated eval-mode path embeddings.
std::vector<double> MeanSegmentEmbedding(const SpoofModel &model,
                                         std::span<const Tensor> path_lgp) {
  const std::size_t n = model.Config().input_length, half = n / 2;
  const std::size_t c = model.Config().channels;
  const std::size_t frames = path_lgp[0].Dim(1), m = path_lgp[0].Dim(0);
  const std::size_t total = (frames + n - 1) / n * n;
  const std::size_t count = 2 * total / n - 1;
  std::vector<double> mean(model.NumPaths() * c, 0.0);
  for (std::size_t p = 0; p < model.NumPaths(); ++p) {
    Tensor x({count, m, n});
    for (std::size_t s = 0; s < count; ++s)
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t t = 0; t < n; ++t)
          x.At(s, i, t) = path_lgp[p].At(i, (s * half + t) % frames);
    Tensor emb = PathForward(model.Network(p), x);
    for (std::size_t s = 0; s < count; ++s)
      for (std::size_t k = 0; k < c; ++k) mean[p * c + k] += emb.At(s, k);
  }
  for (double &v : mean) v /= count;
  return mean;
}

}  // namespace

TrainResult TrainEndToEnd(SpoofModel model, const LabeledDataset &train,
                          const LabeledDataset *dev, const TrainConfig &cfg,
                          const EpochCallback &on_epoch) {
  return TrainStage(std::move(model), train, dev, cfg, "train", on_epoch);
}

TwoStepResult TrainTwoStep(const SpoofModel &model, const LabeledDataset &train,
                           const LabeledDataset *dev, const TrainConfig &cfg,
                           const EpochCallback &on_epoch) {
  CheckTrainable(train, cfg);
  if (model.NumPaths() != 2)
    throw InvalidArgument("two-step training needs a two-path model");
  const ClassifierConfig full_cfg = model.Config();
  ClassifierConfig path_cfg = full_cfg;
  path_cfg.paths = 1;

  TwoStepResult result;
  std::vector<PathNetwork> trunks;
  for (std::size_t p = 0; p < 2; ++p) {
    PathNetwork net = model.Network(p);
    net.temp_fc.reset();
    SpoofModel single = SpoofModel::Assemble(
        path_cfg, {model.Frontend(p)}, {std::move(net)},
        LinearParams::Zeros(full_cfg.channels, 2));
    TrainConfig path_train = cfg;
    path_train.seed = DeriveSeed(cfg.seed, 1000 + p);
    TrainResult r = TrainStage(std::move(single), train, dev, path_train,
                               "path" + std::to_string(p), on_epoch);
    trunks.push_back(r.model.Network(0));
    result.path_results.push_back(std::move(r));
  }
  result.step1_networks = trunks;

  SpoofModel fused = SpoofModel::Assemble(
      full_cfg, {model.Frontend(0), model.Frontend(1)}, std::move(trunks),
      model.Classifier());

  // Step 2: the trunks are fixed, so embeddings are computed once.
  const auto inputs = FixedInputs(fused, train, cfg.target_length, cfg.workers);
  const std::size_t n = train.Size(), width = 2 * full_cfg.channels;
  Tensor embeddings({n, width});
  ParallelFor(n, cfg.workers, [&](std::size_t i) {
    for (std::size_t p = 0; p < 2; ++p) {
      const Tensor &x = inputs[i][p];
      Tensor emb = PathForward(fused.Network(p),
                               x.Reshaped({1, x.Dim(0), x.Dim(1)}));
      for (std::size_t k = 0; k < full_cfg.channels; ++k)
        embeddings.At(i, p * full_cfg.channels + k) = emb.At(0, k);
    }
  });
  const bool use_dev = dev && dev->HasBothClasses();
  std::vector<std::vector<double>> dev_emb;
  if (use_dev) {
    const auto dev_inputs = FullInputs(fused, *dev, cfg.workers);
    dev_emb.resize(dev->Size());
    ParallelFor(dev->Size(), cfg.workers, [&](std::size_t i) {
      dev_emb[i] = MeanSegmentEmbedding(fused, dev_inputs[i]);
    });
  }

  LinearParams &fc = fused.Classifier();
  LinearParams best_fc = fc;
  AdamState adam;
  adam.lr = cfg.lr;
  const std::size_t epochs = cfg.fusion_epochs ? cfg.fusion_epochs : cfg.epochs;
  const std::uint64_t seed = DeriveSeed(cfg.seed, 2000);
  for (std::size_t epoch = 1; epoch <= epochs; ++epoch) {
    const auto order = EpochOrder(n, seed, epoch);
    double loss_sum = 0.0;
    std::size_t batch_index = 0;
    for (std::size_t first = 0; first < n; first += cfg.batch_size) {
      const std::size_t count = std::min(cfg.batch_size, n - first);
      Tensor x({count, width});
      std::vector<int> labels(count);
      for (std::size_t b = 0; b < count; ++b) {
        const std::size_t i = order[first + b];
        for (std::size_t k = 0; k < width; ++k) x.At(b, k) = embeddings.At(i, k);
        labels[b] = train.utterances[i].label;
      }
      LossResult lr = SoftmaxCrossEntropy(LinearForward(x, fc), labels);
      CheckLoss(lr.loss, "fusion", epoch, batch_index);
      LinearGrads g = LinearBackward(lr.grad, x, fc);
      Tensor *params[] = {&fc.weight, &fc.bias};
      const Tensor *grads[] = {&g.weight, &g.bias};
      AdamStep(params, grads, adam);
      loss_sum += lr.loss * count;
      ++batch_index;
    }
    EpochRecord rec;
    rec.stage = "fusion";
    rec.epoch = epoch;
    rec.loss = loss_sum / n;
    if (use_dev) {
      std::vector<double> scores(dev->Size());
      for (std::size_t i = 0; i < dev->Size(); ++i) {
        Tensor logits = LinearForward(Tensor({width}, dev_emb[i]), fc);
        scores[i] = logits[kBonafide] - logits[kSpoof];
      }
      rec.dev_eer = EerOf(*dev, scores);
    }
    result.fusion_trace.push_back(rec);
    if (on_epoch) on_epoch(rec);
    if (!use_dev || std::isnan(result.best_dev_eer) ||
        rec.dev_eer <= result.best_dev_eer) {
      best_fc = fc;
      result.best_epoch = epoch;
      result.best_dev_eer = rec.dev_eer;
    }
  }
  fc = best_fc;
  result.model = std::move(fused);
  return result;
}

std::vector<PathFrontend> TrainFrontends(const LabeledDataset &train,
                                         std::size_t paths,
                                         const FrontendConfig &cfg) {
  if (train.Empty()) throw InvalidArgument("frontend: empty training set");
  if (paths != 1 && paths != 2)
    throw InvalidArgument("frontend: paths must be 1 or 2");
  std::vector<FeatureMatrix> all;
  std::vector<FeatureMatrix> by_class[2];
  for (const auto &u : train.utterances) {
    all.push_back(u.features);
    by_class[u.label == kBonafide ? 0 : 1].push_back(u.features);
  }
  std::vector<const std::vector<FeatureMatrix> *> sources;
  if (paths == 1) {
    sources.push_back(&all);
  } else {
    if (by_class[0].empty() || by_class[1].empty())
      throw InvalidArgument("frontend: two paths need both classes in training");
    sources = {&by_class[0], &by_class[1]};
  }
  std::vector<PathFrontend> out;
  for (std::size_t p = 0; p < sources.size(); ++p) {
    EmConfig em = cfg.em;
    em.seed = DeriveSeed(cfg.em.seed, p);
    DiagGmm gmm = TrainEm(PoolFrames(*sources[p]), cfg.order, em).gmm;
    LgpNormStats stats = FitNormStats(gmm, all, cfg.form, cfg.em.workers);
    out.push_back({std::move(gmm), std::move(stats)});
  }
  return out;
}

std::vector<double> LlrScores(const DiagGmm &bonafide, const DiagGmm &spoof,
                              const LabeledDataset &data, int workers) {
  std::vector<double> scores(data.Size());
  ParallelFor(data.Size(), workers, [&](std::size_t i) {
    scores[i] = LlrScore(bonafide, spoof, data.utterances[i].features);
  });
  return scores;
}

std::vector<double> ScoreDataset(const SpoofModel &model,
                                 const LabeledDataset &data, int workers) {
  std::vector<double> scores(data.Size());
  ParallelFor(data.Size(), workers, [&](std::size_t i) {
    scores[i] = ScoreUtterance(model, data.utterances[i].features);
  });
  return scores;
}

}  // namespace lgpspoof
