// lgpspoof/synthcorpus.h

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

#ifndef LGPSPOOF_SYNTHCORPUS_H_
#define LGPSPOOF_SYNTHCORPUS_H_

#include <cstdint>
#include <string>

#include "lgpspoof/training.h"

namespace lgpspoof {

/*
  Synthetic two-class corpora.

  marginal-shift: frames are i.i.d. draws from a class-specific Gaussian
    mixture.  The spoof mixture is the bona fide one with every mean moved by
    a common offset, so a frame-level GMM separates the classes.
  order-only: a bona fide utterance follows a smooth sinusoidal trajectory
    plus small noise; its paired spoof utterance holds exactly the same
    frames in a seeded random order.  Any scorer that ignores frame order
    sees identical inputs for the two classes.

  Every utterance has its own random stream derived from the seed and the
  utterance index, so generation is reproducible and independent of the
  worker count.
*/

enum class CorpusTask { kMarginalShift, kOrderOnly };

CorpusTask ParseCorpusTask(const std::string &name);
const char *CorpusTaskName(CorpusTask task);

struct CorpusSpec {
  CorpusTask task = CorpusTask::kOrderOnly;
  std::size_t dim = 4;
  // Utterances per class in each partition.
  std::size_t train_per_class = 200;
  std::size_t dev_per_class = 100;
  std::size_t eval_per_class = 100;
  std::size_t min_frames = 48;
  std::size_t max_frames = 128;
  std::uint64_t seed = 7;
  // marginal-shift only: length of the offset between class means.
  double shift = 1.5;
  // order-only only: standard deviation of the additive noise.
  double noise = 0.1;

  void Validate() const;
};

struct Corpus {
  LabeledDataset train, dev, eval;
};

Corpus GenerateCorpus(const CorpusSpec &spec, int workers = 1);

/// Writes <dir>/features/<id>.lgpf and the protocols <dir>/{train,dev,eval}.txt.
void WriteCorpus(const Corpus &corpus, const std::string &dir);

/// Reads a protocol and the feature file <features_dir>/<id>.lgpf of every
/// listed utterance.
LabeledDataset LoadDataset(const std::string &protocol_path,
                           const std::string &features_dir,
                           const std::string &partition, int workers = 1);

}  // namespace lgpspoof

#endif  // LGPSPOOF_SYNTHCORPUS_H_
