// lgpspoof/lgp.cc

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

#include "lgpspoof/lgp.h"

#include <algorithm>
#include <cmath>

#include "lgpspoof/base.h"
#include "lgpspoof/parallel.h"

namespace lgpspoof {

LgpForm ParseLgpForm(const std::string &name) {
  if (name == "full") return LgpForm::kFull;
  if (name == "fast") return LgpForm::kFast;
  throw InvalidArgument("unknown LGP form '" + name + "' (full|fast)");
}

const char *LgpFormName(LgpForm form) {
  return form == LgpForm::kFull ? "full" : "fast";
}

void LgpFrameFull(const DiagGmm &gmm, std::span<const double> x,
                  std::span<double> out) {
  gmm.ComponentLogDensities(x, out);
}

void LgpFrameFast(const DiagGmm &gmm, std::span<const double> x,
                  std::span<double> out) {
  if (x.size() != gmm.Dim())
    throw InvalidArgument("lgp: frame dim " + std::to_string(x.size()) +
                          " != gmm dim " + std::to_string(gmm.Dim()));
  if (out.size() != gmm.NumComponents())
    throw InvalidArgument("lgp: output has wrong size");
  for (std::size_t i = 0; i < gmm.NumComponents(); ++i) {
    auto mu = gmm.Mean(i);
    auto iv = gmm.InvVar(i);
    double y = 0.0;
    for (std::size_t d = 0; d < x.size(); ++d)
      y += x[d] * iv[d] * (mu[d] - 0.5 * x[d]);
    out[i] = y;
  }
}

std::vector<double> LgpFrame(const DiagGmm &gmm, std::span<const double> x,
                             LgpForm form) {
  std::vector<double> out(gmm.NumComponents());
  if (form == LgpForm::kFull)
    LgpFrameFull(gmm, x, out);
  else
    LgpFrameFast(gmm, x, out);
  return out;
}

std::uint64_t LgpNormStats::ContentHash() const {
  Fnv1a h;
  h.Update("lgp", 3);
  const std::uint8_t tag = static_cast<std::uint8_t>(form);
  h.Update(&tag, 1);
  h.UpdateAsFloat32(mean);
  h.UpdateAsFloat32(std);
  return h.Digest();
}

TensorArchive LgpNormStats::ToArchive() const {
  TensorArchive ar;
  ar.Put("lgp_mean", Tensor({mean.size()}, mean));
  ar.Put("lgp_std", Tensor({std.size()}, std));
  ar.PutScalar("form", static_cast<double>(form));
  return ar;
}

LgpNormStats LgpNormStats::FromArchive(const TensorArchive &ar) {
  LgpNormStats s;
  const Tensor &mean = ar.Get("lgp_mean");
  const Tensor &sd = ar.Get("lgp_std");
  if (mean.Rank() != 1 || !mean.SameShape(sd))
    throw FormatError("lgp stats: lgp_mean/lgp_std shape mismatch", 0);
  s.mean.assign(mean.Data().begin(), mean.Data().end());
  s.std.assign(sd.Data().begin(), sd.Data().end());
  const double form = ar.GetScalar("form");
  if (form != 0.0 && form != 1.0)
    throw FormatError("lgp stats: bad form tag", 0);
  s.form = static_cast<LgpForm>(static_cast<int>(form));
  for (double &v : s.std) v = std::max(v, kStdFloor);
  return s;
}

namespace {

// Running count / mean / sum of squared deviations, merged in a fixed order.
struct Moments {
  double count = 0.0;
  std::vector<double> mean, m2;

  explicit Moments(std::size_t m) : mean(m, 0.0), m2(m, 0.0) {}

  void Push(std::span<const double> y) {
    count += 1.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double delta = y[i] - mean[i];
      mean[i] += delta / count;
      m2[i] += delta * (y[i] - mean[i]);
    }
  }

  void Merge(const Moments &o) {
    if (o.count == 0.0) return;
    const double total = count + o.count;
    for (std::size_t i = 0; i < mean.size(); ++i) {
      const double delta = o.mean[i] - mean[i];
      mean[i] += delta * o.count / total;
      m2[i] += o.m2[i] + delta * delta * count * o.count / total;
    }
    count = total;
  }
};

}  // namespace

LgpNormStats FitNormStats(const DiagGmm &gmm,
                          std::span<const FeatureMatrix> utts, LgpForm form,
                          int workers) {
  const std::size_t m = gmm.NumComponents();
  std::vector<Moments> per_utt(utts.size(), Moments(m));
  ParallelFor(utts.size(), workers, [&](std::size_t u) {
    std::vector<double> y(m);
    for (std::size_t t = 0; t < utts[u].NumFrames(); ++t) {
      if (form == LgpForm::kFull)
        LgpFrameFull(gmm, utts[u].Row(t), y);
      else
        LgpFrameFast(gmm, utts[u].Row(t), y);
      per_utt[u].Push(y);
    }
  });
  Moments total(m);
  for (const auto &p : per_utt) total.Merge(p);
  if (total.count < 2.0)
    throw InvalidArgument("lgp stats: need at least two training frames");

  LgpNormStats stats;
  stats.form = form;
  stats.mean = total.mean;
  stats.std.resize(m);
  for (std::size_t i = 0; i < m; ++i)
    stats.std[i] = std::max(std::sqrt(std::max(total.m2[i], 0.0) / total.count),
                            LgpNormStats::kStdFloor);
  return stats;
}

Tensor ExtractLgp(const DiagGmm &gmm, const LgpNormStats &stats,
                  const FeatureMatrix &utt) {
  const std::size_t m = gmm.NumComponents();
  if (stats.Order() != m || stats.std.size() != m)
    throw InvalidArgument("lgp: stats order " + std::to_string(stats.Order()) +
                          " does not match gmm order " + std::to_string(m));
  const std::size_t frames = utt.NumFrames();
  Tensor out({m, frames});
  std::vector<double> y(m);
  for (std::size_t t = 0; t < frames; ++t) {
    if (stats.form == LgpForm::kFull)
      LgpFrameFull(gmm, utt.Row(t), y);
    else
      LgpFrameFast(gmm, utt.Row(t), y);
    for (std::size_t i = 0; i < m; ++i)
      out.At(i, t) = (y[i] - stats.mean[i]) / stats.std[i];
  }
  return out;
}

FeatureMatrix LgpToFrames(const Tensor &lgp) {
  if (lgp.Rank() != 2) throw InvalidArgument("lgp: expected (M, T) tensor");
  const std::size_t m = lgp.Dim(0), frames = lgp.Dim(1);
  FeatureMatrix f(frames, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t t = 0; t < frames; ++t) f(t, i) = lgp.At(i, t);
  return f;
}

Tensor FramesToLgp(const FeatureMatrix &frames) {
  Tensor lgp({frames.Dim(), frames.NumFrames()});
  for (std::size_t t = 0; t < frames.NumFrames(); ++t)
    for (std::size_t i = 0; i < frames.Dim(); ++i) lgp.At(i, t) = frames(t, i);
  return lgp;
}

}  // namespace lgpspoof
