// lgpspoof/layers.cc

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

#include "lgpspoof/layers.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "lgpspoof/base.h"

namespace lgpspoof {

namespace {

struct SeqDims {
  std::size_t batch, channels, time;
};

SeqDims SequenceDims(const Tensor &x, const char *what) {
  if (x.Rank() == 3) return {x.Dim(0), x.Dim(1), x.Dim(2)};
  if (x.Rank() == 2) return {1, x.Dim(0), x.Dim(1)};
  throw InvalidArgument(std::string(what) +
                        ": expected (channels, time) or (batch, channels, "
                        "time), got " + x.ShapeString());
}

std::vector<std::size_t> SequenceShape(const Tensor &like, std::size_t batch,
                                       std::size_t channels, std::size_t time) {
  if (like.Rank() == 2) return {channels, time};
  return {batch, channels, time};
}

// Rows of a (batch, features) or (features) tensor.
std::size_t RowCount(const Tensor &x) { return x.Rank() == 1 ? 1 : x.Dim(0); }
std::size_t RowWidth(const Tensor &x) {
  return x.Rank() == 1 ? x.Dim(0) : x.Dim(1);
}

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

// ---------------------------------------------------------------- Conv1d

Conv1dParams Conv1dParams::Zeros(std::size_t in_channels,
                                 std::size_t out_channels, std::size_t kernel,
                                 std::size_t stride, std::size_t padding) {
  if (in_channels == 0 || out_channels == 0 || kernel == 0 || stride == 0)
    throw InvalidArgument("conv1d: channels, kernel and stride must be >= 1");
  Conv1dParams p;
  p.weight = Tensor({out_channels, in_channels, kernel});
  p.bias = Tensor({out_channels});
  p.stride = stride;
  p.padding = padding;
  return p;
}

std::size_t Conv1dParams::OutputLength(std::size_t input_length) const {
  std::size_t padded = input_length + 2 * padding;
  if (padded < Kernel())
    throw InvalidArgument("conv1d: input length " +
                          std::to_string(input_length) +
                          " too short for kernel " + std::to_string(Kernel()));
  return (padded - Kernel()) / stride + 1;
}

namespace {

void CheckConv(const SeqDims &d, const Conv1dParams &p) {
  if (p.weight.Rank() != 3 || p.bias.Rank() != 1 ||
      p.bias.Dim(0) != p.OutChannels())
    throw InvalidArgument("conv1d: malformed parameters");
  if (d.channels != p.InChannels())
    throw InvalidArgument("conv1d: input has " + std::to_string(d.channels) +
                          " channels, weights expect " +
                          std::to_string(p.InChannels()));
}

// Range [lo, hi) of output positions whose tap k lands inside the input.
void TapRange(std::size_t k, const Conv1dParams &p, std::size_t in_len,
              std::size_t out_len, std::size_t *lo, std::size_t *hi) {
  long s = static_cast<long>(p.stride);
  long off = static_cast<long>(k) - static_cast<long>(p.padding);
  // in = out * s + off must satisfy 0 <= in < in_len.
  long first = off >= 0 ? 0 : (-off + s - 1) / s;
  long last_in = static_cast<long>(in_len) - 1 - off;  // out * s <= last_in
  long end = last_in < 0 ? 0 : last_in / s + 1;
  end = std::min<long>(end, static_cast<long>(out_len));
  *lo = static_cast<std::size_t>(std::min<long>(first, end));
  *hi = static_cast<std::size_t>(end);
}

}  // namespace

Tensor Conv1dForward(const Tensor &x, const Conv1dParams &p) {
  SeqDims d = SequenceDims(x, "conv1d");
  CheckConv(d, p);
  const std::size_t out_ch = p.OutChannels(), kernel = p.Kernel();
  const std::size_t out_len = p.OutputLength(d.time);
  Tensor y(SequenceShape(x, d.batch, out_ch, out_len));
  const double *xd = x.Data().data();
  const double *wd = p.weight.Data().data();
  double *yd = y.Data().data();
  for (std::size_t b = 0; b < d.batch; ++b) {
    for (std::size_t o = 0; o < out_ch; ++o) {
      double *yrow = yd + (b * out_ch + o) * out_len;
      std::fill(yrow, yrow + out_len, p.bias[o]);
      for (std::size_t c = 0; c < d.channels; ++c) {
        const double *xrow = xd + (b * d.channels + c) * d.time;
        const double *wrow = wd + (o * d.channels + c) * kernel;
        for (std::size_t k = 0; k < kernel; ++k) {
          std::size_t lo, hi;
          TapRange(k, p, d.time, out_len, &lo, &hi);
          const double w = wrow[k];
          const long off = static_cast<long>(k) - static_cast<long>(p.padding);
          for (std::size_t t = lo; t < hi; ++t)
            yrow[t] += w * xrow[static_cast<long>(t * p.stride) + off];
        }
      }
    }
  }
  return y;
}

Conv1dGrads Conv1dBackward(const Tensor &grad_out, const Tensor &x,
                           const Conv1dParams &p) {
  SeqDims d = SequenceDims(x, "conv1d backward");
  CheckConv(d, p);
  const std::size_t out_ch = p.OutChannels(), kernel = p.Kernel();
  const std::size_t out_len = p.OutputLength(d.time);
  CheckShape(grad_out, SequenceShape(x, d.batch, out_ch, out_len),
             "conv1d backward grad_out");
  Conv1dGrads g;
  g.input = Tensor(x.Shape());
  g.weight = Tensor(p.weight.Shape());
  g.bias = Tensor(p.bias.Shape());
  const double *xd = x.Data().data();
  const double *wd = p.weight.Data().data();
  const double *gd = grad_out.Data().data();
  double *gx = g.input.Data().data();
  double *gw = g.weight.Data().data();
  for (std::size_t b = 0; b < d.batch; ++b) {
    for (std::size_t o = 0; o < out_ch; ++o) {
      const double *grow = gd + (b * out_ch + o) * out_len;
      double bias_sum = 0.0;
      for (std::size_t t = 0; t < out_len; ++t) bias_sum += grow[t];
      g.bias[o] += bias_sum;
      for (std::size_t c = 0; c < d.channels; ++c) {
        const double *xrow = xd + (b * d.channels + c) * d.time;
        double *gxrow = gx + (b * d.channels + c) * d.time;
        const double *wrow = wd + (o * d.channels + c) * kernel;
        double *gwrow = gw + (o * d.channels + c) * kernel;
        for (std::size_t k = 0; k < kernel; ++k) {
          std::size_t lo, hi;
          TapRange(k, p, d.time, out_len, &lo, &hi);
          const double w = wrow[k];
          const long off = static_cast<long>(k) - static_cast<long>(p.padding);
          double acc = 0.0;
          for (std::size_t t = lo; t < hi; ++t) {
            const long i = static_cast<long>(t * p.stride) + off;
            acc += grow[t] * xrow[i];
            gxrow[i] += w * grow[t];
          }
          gwrow[k] += acc;
        }
      }
    }
  }
  return g;
}

// ------------------------------------------------------------- BatchNorm

BatchNormParams BatchNormParams::Identity(std::size_t channels) {
  BatchNormParams p;
  p.gamma = Tensor({channels}, 1.0);
  p.beta = Tensor({channels}, 0.0);
  p.running_mean = Tensor({channels}, 0.0);
  p.running_var = Tensor({channels}, 1.0);
  return p;
}

namespace {

// `running` receives the running-statistics update in train mode.
Tensor BatchNormImpl(const Tensor &x, const BatchNormParams &p, BnMode mode,
                     BatchNormParams *running, BatchNormCache *cache) {
  SeqDims d = SequenceDims(x, "batchnorm");
  CheckShape(p.gamma, {d.channels}, "batchnorm gamma");
  CheckShape(p.beta, {d.channels}, "batchnorm beta");
  CheckShape(p.running_mean, {d.channels}, "batchnorm running_mean");
  CheckShape(p.running_var, {d.channels}, "batchnorm running_var");
  const std::size_t n = d.batch * d.time;
  if (mode == BnMode::kTrain && n < 2)
    throw InvalidArgument(
        "batchnorm: train mode needs more than one value per channel");

  Tensor y(x.Shape());
  BatchNormCache local;
  BatchNormCache &c = cache ? *cache : local;
  c.mode = mode;
  c.normalized = Tensor(x.Shape());
  c.inv_std.assign(d.channels, 0.0);
  const double *xd = x.Data().data();
  for (std::size_t ch = 0; ch < d.channels; ++ch) {
    double mean, var;
    if (mode == BnMode::kTrain) {
      double sum = 0.0;
      for (std::size_t b = 0; b < d.batch; ++b) {
        const double *row = xd + (b * d.channels + ch) * d.time;
        for (std::size_t t = 0; t < d.time; ++t) sum += row[t];
      }
      mean = sum / n;
      double sq = 0.0;
      for (std::size_t b = 0; b < d.batch; ++b) {
        const double *row = xd + (b * d.channels + ch) * d.time;
        for (std::size_t t = 0; t < d.time; ++t)
          sq += (row[t] - mean) * (row[t] - mean);
      }
      var = sq / n;
      if (running) {
        running->running_mean[ch] =
            (1.0 - p.momentum) * p.running_mean[ch] + p.momentum * mean;
        running->running_var[ch] = (1.0 - p.momentum) * p.running_var[ch] +
                                   p.momentum * var * n / (n - 1.0);
      }
    } else {
      mean = p.running_mean[ch];
      var = std::max(0.0, p.running_var[ch]);
    }
    const double inv_std = 1.0 / std::sqrt(var + p.epsilon);
    c.inv_std[ch] = inv_std;
    for (std::size_t b = 0; b < d.batch; ++b) {
      const std::size_t base = (b * d.channels + ch) * d.time;
      for (std::size_t t = 0; t < d.time; ++t) {
        double xh = (xd[base + t] - mean) * inv_std;
        c.normalized[base + t] = xh;
        y[base + t] = p.gamma[ch] * xh + p.beta[ch];
      }
    }
  }
  return y;
}

}  // namespace

Tensor BatchNormForward(const Tensor &x, BatchNormParams &p, BnMode mode,
                        BatchNormCache *cache) {
  return BatchNormImpl(x, p, mode, mode == BnMode::kTrain ? &p : nullptr,
                       cache);
}

Tensor BatchNormForward(const Tensor &x, const BatchNormParams &p,
                        BatchNormCache *cache) {
  return BatchNormImpl(x, p, BnMode::kEval, nullptr, cache);
}

BatchNormGrads BatchNormBackward(const Tensor &grad_out,
                                 const BatchNormParams &p,
                                 const BatchNormCache &cache) {
  const Tensor &xh = cache.normalized;
  SeqDims d = SequenceDims(xh, "batchnorm backward");
  CheckShape(grad_out, xh.Shape(), "batchnorm backward grad_out");
  const double n = static_cast<double>(d.batch * d.time);
  BatchNormGrads g;
  g.input = Tensor(xh.Shape());
  g.gamma = Tensor({d.channels});
  g.beta = Tensor({d.channels});
  for (std::size_t ch = 0; ch < d.channels; ++ch) {
    double sum_dy = 0.0, sum_dy_xh = 0.0;
    for (std::size_t b = 0; b < d.batch; ++b) {
      const std::size_t base = (b * d.channels + ch) * d.time;
      for (std::size_t t = 0; t < d.time; ++t) {
        sum_dy += grad_out[base + t];
        sum_dy_xh += grad_out[base + t] * xh[base + t];
      }
    }
    g.beta[ch] = sum_dy;
    g.gamma[ch] = sum_dy_xh;
    const double scale = p.gamma[ch] * cache.inv_std[ch];
    for (std::size_t b = 0; b < d.batch; ++b) {
      const std::size_t base = (b * d.channels + ch) * d.time;
      for (std::size_t t = 0; t < d.time; ++t) {
        if (cache.mode == BnMode::kTrain) {
          g.input[base + t] = scale / n *
                              (n * grad_out[base + t] - sum_dy -
                               xh[base + t] * sum_dy_xh);
        } else {
          g.input[base + t] = scale * grad_out[base + t];
        }
      }
    }
  }
  return g;
}

// ------------------------------------------------------------------ ReLU

Tensor Relu(const Tensor &x) {
  Tensor y(x.Shape());
  for (std::size_t i = 0; i < x.Size(); ++i) y[i] = x[i] < 0.0 ? 0.0 : x[i];  // NaN passes through
  return y;
}

Tensor ReluBackward(const Tensor &grad_out, const Tensor &x) {
  CheckShape(grad_out, x.Shape(), "relu backward grad_out");
  Tensor g(x.Shape());
  for (std::size_t i = 0; i < x.Size(); ++i)
    g[i] = x[i] > 0.0 ? grad_out[i] : 0.0;
  return g;
}

// -------------------------------------------------------------------- SE

SeBlockParams SeBlockParams::Zeros(std::size_t channels,
                                   std::size_t reduction) {
  if (channels == 0 || reduction == 0 || channels % reduction != 0)
    throw InvalidArgument("se block: reduction " + std::to_string(reduction) +
                          " must divide channel count " +
                          std::to_string(channels));
  const std::size_t inner = channels / reduction;
  SeBlockParams p;
  p.w1 = Tensor({inner, channels});
  p.b1 = Tensor({inner});
  p.w2 = Tensor({channels, inner});
  p.b2 = Tensor({channels});
  return p;
}

Tensor SeBlockForward(const Tensor &x, const SeBlockParams &p,
                      SeCache *cache) {
  SeqDims d = SequenceDims(x, "se block");
  if (p.w1.Rank() != 2 || d.channels != p.Channels())
    throw InvalidArgument("se block: input channels " +
                          std::to_string(d.channels) + " do not match params");
  const std::size_t inner = p.InnerWidth();
  CheckShape(p.b1, {inner}, "se b1");
  CheckShape(p.w2, {d.channels, inner}, "se w2");
  CheckShape(p.b2, {d.channels}, "se b2");

  SeCache local;
  SeCache &c = cache ? *cache : local;
  c.squeezed = Tensor({d.batch, d.channels});
  c.hidden_pre = Tensor({d.batch, inner});
  c.hidden = Tensor({d.batch, inner});
  c.scale = Tensor({d.batch, d.channels});
  Tensor y(x.Shape());
  for (std::size_t b = 0; b < d.batch; ++b) {
    for (std::size_t ch = 0; ch < d.channels; ++ch) {
      const std::size_t base = (b * d.channels + ch) * d.time;
      double s = 0.0;
      for (std::size_t t = 0; t < d.time; ++t) s += x[base + t];
      c.squeezed.At(b, ch) = s / d.time;
    }
    for (std::size_t j = 0; j < inner; ++j) {
      double z = p.b1[j];
      for (std::size_t ch = 0; ch < d.channels; ++ch)
        z += p.w1.At(j, ch) * c.squeezed.At(b, ch);
      c.hidden_pre.At(b, j) = z;
      c.hidden.At(b, j) = z > 0.0 ? z : 0.0;
    }
    for (std::size_t ch = 0; ch < d.channels; ++ch) {
      double z = p.b2[ch];
      for (std::size_t j = 0; j < inner; ++j)
        z += p.w2.At(ch, j) * c.hidden.At(b, j);
      const double gate = Sigmoid(z);
      c.scale.At(b, ch) = gate;
      const std::size_t base = (b * d.channels + ch) * d.time;
      for (std::size_t t = 0; t < d.time; ++t) y[base + t] = gate * x[base + t];
    }
  }
  return y;
}

SeGrads SeBlockBackward(const Tensor &grad_out, const Tensor &x,
                        const SeBlockParams &p, const SeCache &cache) {
  SeqDims d = SequenceDims(x, "se block backward");
  CheckShape(grad_out, x.Shape(), "se backward grad_out");
  const std::size_t inner = p.InnerWidth();
  SeGrads g;
  g.input = Tensor(x.Shape());
  g.w1 = Tensor(p.w1.Shape());
  g.b1 = Tensor(p.b1.Shape());
  g.w2 = Tensor(p.w2.Shape());
  g.b2 = Tensor(p.b2.Shape());
  std::vector<double> d_pre2(d.channels), d_pre1(inner), d_squeeze(d.channels);
  for (std::size_t b = 0; b < d.batch; ++b) {
    for (std::size_t ch = 0; ch < d.channels; ++ch) {
      const std::size_t base = (b * d.channels + ch) * d.time;
      const double gate = cache.scale.At(b, ch);
      double d_gate = 0.0;
      for (std::size_t t = 0; t < d.time; ++t) {
        d_gate += grad_out[base + t] * x[base + t];
        g.input[base + t] = grad_out[base + t] * gate;
      }
      d_pre2[ch] = d_gate * gate * (1.0 - gate);
      g.b2[ch] += d_pre2[ch];
      for (std::size_t j = 0; j < inner; ++j)
        g.w2.At(ch, j) += d_pre2[ch] * cache.hidden.At(b, j);
    }
    for (std::size_t j = 0; j < inner; ++j) {
      double dh = 0.0;
      for (std::size_t ch = 0; ch < d.channels; ++ch)
        dh += p.w2.At(ch, j) * d_pre2[ch];
      d_pre1[j] = cache.hidden_pre.At(b, j) > 0.0 ? dh : 0.0;
      g.b1[j] += d_pre1[j];
      for (std::size_t ch = 0; ch < d.channels; ++ch)
        g.w1.At(j, ch) += d_pre1[j] * cache.squeezed.At(b, ch);
    }
    for (std::size_t ch = 0; ch < d.channels; ++ch) {
      double dz = 0.0;
      for (std::size_t j = 0; j < inner; ++j) dz += p.w1.At(j, ch) * d_pre1[j];
      const double per_step = dz / d.time;
      const std::size_t base = (b * d.channels + ch) * d.time;
      for (std::size_t t = 0; t < d.time; ++t) g.input[base + t] += per_step;
    }
  }
  return g;
}

// ----------------------------------------------------------- Max pooling

MaxPoolResult MaxOverTime(const Tensor &x) {
  SeqDims d = SequenceDims(x, "max over time");
  if (d.time == 0) throw InvalidArgument("max over time: empty time axis");
  MaxPoolResult r;
  r.output = x.Rank() == 2 ? Tensor({d.channels})
                           : Tensor({d.batch, d.channels});
  r.argmax.resize(d.batch * d.channels);
  for (std::size_t row = 0; row < d.batch * d.channels; ++row) {
    const std::size_t base = row * d.time;
    std::size_t best = 0;
    for (std::size_t t = 1; t < d.time; ++t)
      if (x[base + t] > x[base + best]) best = t;
    r.argmax[row] = best;
    r.output[row] = x[base + best];
  }
  return r;
}

Tensor MaxOverTimeBackward(const Tensor &grad_out,
                           std::span<const std::size_t> argmax,
                           const std::vector<std::size_t> &input_shape) {
  Tensor g(input_shape);
  SeqDims d = SequenceDims(g, "max over time backward");
  if (grad_out.Size() != d.batch * d.channels ||
      argmax.size() != d.batch * d.channels)
    throw InvalidArgument("max over time backward: size mismatch");
  for (std::size_t row = 0; row < argmax.size(); ++row)
    g[row * d.time + argmax[row]] = grad_out[row];
  return g;
}

// ---------------------------------------------------------------- Linear

LinearParams LinearParams::Zeros(std::size_t in, std::size_t out) {
  if (in == 0 || out == 0)
    throw InvalidArgument("linear: widths must be >= 1");
  LinearParams p;
  p.weight = Tensor({out, in});
  p.bias = Tensor({out});
  return p;
}

Tensor LinearForward(const Tensor &x, const LinearParams &p) {
  if ((x.Rank() != 1 && x.Rank() != 2) || RowWidth(x) != p.InFeatures())
    throw InvalidArgument("linear: input " + x.ShapeString() +
                          " does not match weight " + p.weight.ShapeString());
  const std::size_t rows = RowCount(x), in = p.InFeatures(),
                    out = p.OutFeatures();
  Tensor y = x.Rank() == 1 ? Tensor({out}) : Tensor({rows, out});
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t o = 0; o < out; ++o) {
      double z = p.bias[o];
      for (std::size_t i = 0; i < in; ++i)
        z += p.weight.At(o, i) * x[r * in + i];
      y[r * out + o] = z;
    }
  }
  return y;
}

LinearGrads LinearBackward(const Tensor &grad_out, const Tensor &x,
                           const LinearParams &p) {
  const std::size_t rows = RowCount(x), in = p.InFeatures(),
                    out = p.OutFeatures();
  if (grad_out.Size() != rows * out || RowWidth(x) != in)
    throw InvalidArgument("linear backward: shape mismatch");
  LinearGrads g;
  g.input = Tensor(x.Shape());
  g.weight = Tensor(p.weight.Shape());
  g.bias = Tensor(p.bias.Shape());
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t o = 0; o < out; ++o) {
      const double go = grad_out[r * out + o];
      g.bias[o] += go;
      for (std::size_t i = 0; i < in; ++i) {
        g.weight.At(o, i) += go * x[r * in + i];
        g.input[r * in + i] += go * p.weight.At(o, i);
      }
    }
  }
  return g;
}

// ------------------------------------------------- Softmax cross-entropy

LossResult SoftmaxCrossEntropy(const Tensor &logits,
                               std::span<const int> labels) {
  if (logits.Rank() != 2 || logits.Dim(0) != labels.size() || labels.empty())
    throw InvalidArgument("softmax cross-entropy: logits " +
                          logits.ShapeString() + " vs " +
                          std::to_string(labels.size()) + " labels");
  const std::size_t rows = logits.Dim(0), classes = logits.Dim(1);
  LossResult r;
  r.grad = Tensor(logits.Shape());
  double total = 0.0;
  for (std::size_t b = 0; b < rows; ++b) {
    const int label = labels[b];
    if (label < 0 || static_cast<std::size_t>(label) >= classes)
      throw InvalidArgument("softmax cross-entropy: label out of range");
    double mx = logits.At(b, 0);
    for (std::size_t k = 1; k < classes; ++k) mx = std::max(mx, logits.At(b, k));
    double sum = 0.0;
    for (std::size_t k = 0; k < classes; ++k)
      sum += std::exp(logits.At(b, k) - mx);
    const double log_z = mx + std::log(sum);
    total += log_z - logits.At(b, static_cast<std::size_t>(label));
    for (std::size_t k = 0; k < classes; ++k) {
      double prob = std::exp(logits.At(b, k) - log_z);
      r.grad.At(b, k) =
          (prob - (static_cast<std::size_t>(label) == k ? 1.0 : 0.0)) / rows;
    }
  }
  r.loss = total / rows;
  return r;
}

LossResult SoftmaxCrossEntropy(const Tensor &logits, int label) {
  if (logits.Rank() != 1)
    throw InvalidArgument("softmax cross-entropy: expected rank-1 logits");
  const int labels[1] = {label};
  LossResult r = SoftmaxCrossEntropy(logits.Reshaped({1, logits.Dim(0)}),
                                     labels);
  r.grad = r.grad.Reshaped({logits.Dim(0)});
  return r;
}

}  // namespace lgpspoof
