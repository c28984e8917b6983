// lgpspoof/layers.h

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

#ifndef LGPSPOOF_LAYERS_H_
#define LGPSPOOF_LAYERS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "lgpspoof/tensor.h"

namespace lgpspoof {

/*
  Hand-written forward/backward passes for the layers of the classifier.

  Sequence activations are (batch, channels, time).  Every sequence layer
  also accepts a rank-2 (channels, time) tensor, treated as a batch of one,
  and returns a tensor of the same rank it was given.  Backward functions take
  the upstream gradient plus whatever the forward pass cached, and return
  gradients for the input and for every parameter.
*/

struct Conv1dParams {
  Tensor weight;  // (out_channels, in_channels, kernel)
  Tensor bias;    // (out_channels)
  std::size_t stride = 1;
  std::size_t padding = 1;

  static Conv1dParams Zeros(std::size_t in_channels, std::size_t out_channels,
                            std::size_t kernel, std::size_t stride = 1,
                            std::size_t padding = 1);

  std::size_t OutChannels() const { return weight.Dim(0); }
  std::size_t InChannels() const { return weight.Dim(1); }
  std::size_t Kernel() const { return weight.Dim(2); }
  /// (T + 2*padding - kernel) / stride + 1.  Throws if T is too short.
  std::size_t OutputLength(std::size_t input_length) const;
};

struct Conv1dGrads {
  Tensor input, weight, bias;
};

Tensor Conv1dForward(const Tensor &x, const Conv1dParams &p);
Conv1dGrads Conv1dBackward(const Tensor &grad_out, const Tensor &x,
                           const Conv1dParams &p);

enum class BnMode { kTrain, kEval };

struct BatchNormParams {
  Tensor gamma, beta;                 // trainable, (channels)
  Tensor running_mean, running_var;   // (channels)
  double momentum = 0.1;
  double epsilon = 1e-5;

  /// gamma = 1, beta = 0, running stats (0, 1).
  static BatchNormParams Identity(std::size_t channels);
};

struct BatchNormCache {
  Tensor normalized;            // x_hat, same shape as the input
  std::vector<double> inv_std;  // per channel
  BnMode mode = BnMode::kTrain;
};

struct BatchNormGrads {
  Tensor input, gamma, beta;
};

/// Train mode normalizes each channel by its mean and biased variance over
/// batch and time, then updates the running statistics (unbiased variance).
/// Eval mode uses the running statistics and leaves `p` untouched.
Tensor BatchNormForward(const Tensor &x, BatchNormParams &p, BnMode mode,
                        BatchNormCache *cache = nullptr);
/// Eval-mode forward on read-only parameters.
Tensor BatchNormForward(const Tensor &x, const BatchNormParams &p,
                        BatchNormCache *cache = nullptr);
BatchNormGrads BatchNormBackward(const Tensor &grad_out,
                                 const BatchNormParams &p,
                                 const BatchNormCache &cache);

Tensor Relu(const Tensor &x);
Tensor ReluBackward(const Tensor &grad_out, const Tensor &x);

/// Squeeze-excitation: channel means over time -> FC -> ReLU -> FC -> sigmoid,
/// then each channel of the input is scaled by the resulting gate.
struct SeBlockParams {
  Tensor w1, b1;  // (channels / reduction, channels), (channels / reduction)
  Tensor w2, b2;  // (channels, channels / reduction), (channels)

  static SeBlockParams Zeros(std::size_t channels, std::size_t reduction);
  std::size_t Channels() const { return w1.Dim(1); }
  std::size_t InnerWidth() const { return w1.Dim(0); }
};

struct SeCache {
  Tensor squeezed;    // (batch, channels)
  Tensor hidden_pre;  // (batch, inner)
  Tensor hidden;      // (batch, inner)
  Tensor scale;       // (batch, channels), each in (0, 1)
};

struct SeGrads {
  Tensor input, w1, b1, w2, b2;
};

Tensor SeBlockForward(const Tensor &x, const SeBlockParams &p,
                      SeCache *cache = nullptr);
SeGrads SeBlockBackward(const Tensor &grad_out, const Tensor &x,
                        const SeBlockParams &p, const SeCache &cache);

struct MaxPoolResult {
  Tensor output;                    // (batch, channels) or (channels)
  std::vector<std::size_t> argmax;  // first maximal time index per row
};

MaxPoolResult MaxOverTime(const Tensor &x);
Tensor MaxOverTimeBackward(const Tensor &grad_out,
                           std::span<const std::size_t> argmax,
                           const std::vector<std::size_t> &input_shape);

struct LinearParams {
  Tensor weight;  // (out, in)
  Tensor bias;    // (out)

  static LinearParams Zeros(std::size_t in, std::size_t out);
  std::size_t InFeatures() const { return weight.Dim(1); }
  std::size_t OutFeatures() const { return weight.Dim(0); }
};

struct LinearGrads {
  Tensor input, weight, bias;
};

/// x is (in) or (batch, in).
Tensor LinearForward(const Tensor &x, const LinearParams &p);
LinearGrads LinearBackward(const Tensor &grad_out, const Tensor &x,
                           const LinearParams &p);

struct LossResult {
  double loss = 0.0;
  Tensor grad;  // d loss / d logits
};

/// Mean over the batch of -log softmax(logits)[label], in log-sum-exp form.
/// logits is (batch, classes); labels holds one class index per row.
LossResult SoftmaxCrossEntropy(const Tensor &logits,
                               std::span<const int> labels);
/// Single example, logits of rank 1.
LossResult SoftmaxCrossEntropy(const Tensor &logits, int label);

}  // namespace lgpspoof

#endif  // LGPSPOOF_LAYERS_H_
