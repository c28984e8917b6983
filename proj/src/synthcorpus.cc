// lgpspoof/synthcorpus.cc

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

#include "lgpspoof/synthcorpus.h"

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include "lgpspoof/base.h"
#include "lgpspoof/evaluation.h"
#include "lgpspoof/frontend.h"
#include "lgpspoof/parallel.h"

namespace lgpspoof {

CorpusTask ParseCorpusTask(const std::string &name) {
  if (name == "marginal-shift") return CorpusTask::kMarginalShift;
  if (name == "order-only") return CorpusTask::kOrderOnly;
  throw InvalidArgument("unknown corpus task '" + name +
                        "' (marginal-shift|order-only)");
}

const char *CorpusTaskName(CorpusTask task) {
  return task == CorpusTask::kMarginalShift ? "marginal-shift" : "order-only";
}

void CorpusSpec::Validate() const {
  if (dim == 0) throw InvalidArgument("corpus: dim must be >= 1");
  if (train_per_class == 0 || dev_per_class == 0 || eval_per_class == 0)
    throw InvalidArgument("corpus: utterance counts must be >= 1");
  if (min_frames < 2 || max_frames < min_frames)
    throw InvalidArgument("corpus: need 2 <= min_frames <= max_frames");
  if (!(shift >= 0.0) || !(noise >= 0.0))
    throw InvalidArgument("corpus: shift and noise must be non-negative");
}

namespace {

constexpr std::size_t kMixtureSize = 3;

struct Mixture {
  std::vector<std::vector<double>> means;  // per component, dim D
  std::vector<double> stddev;              // per component
};

// Bona fide and spoof mixtures for the marginal-shift task.
std::pair<Mixture, Mixture> ShiftMixtures(const CorpusSpec &spec) {
  std::mt19937_64 rng(DeriveSeed(spec.seed, 0));
  std::normal_distribution<double> normal(0.0, 1.0);
  Mixture bona;
  for (std::size_t k = 0; k < kMixtureSize; ++k) {
    std::vector<double> mu(spec.dim);
    for (double &v : mu) v = 3.0 * normal(rng);
    bona.means.push_back(std::move(mu));
    bona.stddev.push_back(1.0);
  }
  std::vector<double> offset(spec.dim);
  double norm = 0.0;
  for (double &v : offset) {
    v = normal(rng);
    norm += v * v;
  }
  norm = std::sqrt(norm);
  Mixture spoof = bona;
  for (auto &mu : spoof.means)
    for (std::size_t d = 0; d < spec.dim; ++d)
      mu[d] += spec.shift * offset[d] / norm;
  return {bona, spoof};
}

FeatureMatrix SampleMixture(const Mixture &mix, std::size_t frames,
                            std::mt19937_64 &rng) {
  const std::size_t dim = mix.means[0].size();
  std::uniform_int_distribution<std::size_t> pick(0, mix.means.size() - 1);
  std::normal_distribution<double> normal(0.0, 1.0);
  FeatureMatrix out(frames, dim);
  for (std::size_t t = 0; t < frames; ++t) {
    const std::size_t k = pick(rng);
    for (std::size_t d = 0; d < dim; ++d)
      out(t, d) = mix.means[k][d] + mix.stddev[k] * normal(rng);
  }
  return out;
}

FeatureMatrix SmoothTrajectory(std::size_t dim, std::size_t frames,
                               double noise, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> amp(1.0, 2.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> period(20.0, 60.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double omega = 2.0 * std::numbers::pi / period(rng);
  std::vector<double> a(dim), phi(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    a[d] = amp(rng);
    phi[d] = phase(rng);
  }
  FeatureMatrix out(frames, dim);
  for (std::size_t t = 0; t < frames; ++t)
    for (std::size_t d = 0; d < dim; ++d)
      out(t, d) = a[d] * std::sin(omega * t + phi[d]) + noise * normal(rng);
  return out;
}

FeatureMatrix Permuted(const FeatureMatrix &x, std::mt19937_64 &rng) {
  std::vector<std::size_t> order(x.NumFrames());
  for (std::size_t t = 0; t < order.size(); ++t) order[t] = t;
  std::shuffle(order.begin(), order.end(), rng);
  FeatureMatrix out(x.NumFrames(), x.Dim());
  for (std::size_t t = 0; t < order.size(); ++t) {
    auto src = x.Row(order[t]);
    std::copy(src.begin(), src.end(), out.Row(t).begin());
  }
  return out;
}

std::string UttId(const std::string &partition, int label, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s_%s_%05zu", partition.c_str(),
                label == kBonafide ? "bf" : "sp", i);
  return buf;
}

}  // namespace

Corpus GenerateCorpus(const CorpusSpec &spec, int workers) {
  spec.Validate();
  const auto [bona_mix, spoof_mix] = ShiftMixtures(spec);
  Corpus corpus;
  struct Part {
    LabeledDataset *data;
    const char *name;
    std::size_t per_class;
  };
  const Part parts[] = {{&corpus.train, "train", spec.train_per_class},
                        {&corpus.dev, "dev", spec.dev_per_class},
                        {&corpus.eval, "eval", spec.eval_per_class}};
  std::uint64_t stream = 1;
  for (const Part &part : parts) {
    part.data->partition = part.name;
    const std::size_t n = part.per_class;
    std::vector<Utterance> bona(n), spoof(n);
    ParallelFor(n, workers, [&](std::size_t i) {
      std::mt19937_64 rng(DeriveSeed(spec.seed, stream + i));
      std::uniform_int_distribution<std::size_t> len(spec.min_frames,
                                                     spec.max_frames);
      bona[i].id = UttId(part.name, kBonafide, i);
      bona[i].label = kBonafide;
      spoof[i].id = UttId(part.name, kSpoof, i);
      spoof[i].label = kSpoof;
      if (spec.task == CorpusTask::kOrderOnly) {
        bona[i].features = SmoothTrajectory(spec.dim, len(rng), spec.noise, rng);
        spoof[i].features = Permuted(bona[i].features, rng);
      } else {
        bona[i].features = SampleMixture(bona_mix, len(rng), rng);
        spoof[i].features = SampleMixture(spoof_mix, len(rng), rng);
      }
    });
    stream += n;
    // Interleave so that pairs stay adjacent in the protocol.
    for (std::size_t i = 0; i < n; ++i) {
      part.data->utterances.push_back(std::move(bona[i]));
      part.data->utterances.push_back(std::move(spoof[i]));
    }
  }
  return corpus;
}

void WriteCorpus(const Corpus &corpus, const std::string &dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(fs::path(dir) / "features", ec);
  if (ec)
    throw IoError("cannot create corpus directory '" + dir +
                  "': " + ec.message());
  for (const LabeledDataset *data : {&corpus.train, &corpus.dev, &corpus.eval}) {
    std::vector<TrialRecord> protocol;
    for (const auto &u : data->utterances) {
      StoreFeatures((fs::path(dir) / "features" / (u.id + ".lgpf")).string(),
                    u.features);
      protocol.push_back({u.id,
                          u.label == kBonafide ? TrialLabel::kBonafide
                                               : TrialLabel::kSpoof,
                          0.0});
    }
    WriteProtocol((fs::path(dir) / (data->partition + ".txt")).string(),
                  protocol);
  }
}

LabeledDataset LoadDataset(const std::string &protocol_path,
                           const std::string &features_dir,
                           const std::string &partition, int workers) {
  const auto protocol = ReadProtocol(protocol_path);
  LabeledDataset data;
  data.partition = partition;
  data.utterances.resize(protocol.size());
  ParallelFor(protocol.size(), workers, [&](std::size_t i) {
    Utterance &u = data.utterances[i];
    u.id = protocol[i].id;
    u.label = protocol[i].label == TrialLabel::kBonafide ? kBonafide : kSpoof;
    u.features = LoadFeatures(
        (std::filesystem::path(features_dir) / (u.id + ".lgpf")).string());
  });
  data.Validate();
  return data;
}

}  // namespace lgpspoof
