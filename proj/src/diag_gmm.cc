// lgpspoof/diag_gmm.cc

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

#include "lgpspoof/diag_gmm.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "lgpspoof/base.h"
#include "lgpspoof/parallel.h"

namespace lgpspoof {

namespace {

const double kLog2Pi = std::log(2.0 * std::numbers::pi);
constexpr std::size_t kChunkFrames = 1024;

}  // namespace

double LogSumExp(std::span<const double> v) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double x : v) mx = std::max(mx, x);
  if (!std::isfinite(mx)) return mx;
  double sum = 0.0;
  for (double x : v) sum += std::exp(x - mx);
  return mx + std::log(sum);
}

DiagGmm::DiagGmm(std::vector<double> weights, std::vector<double> means,
                 std::vector<double> vars, std::size_t dim)
    : dim_(dim),
      weights_(std::move(weights)),
      means_(std::move(means)),
      vars_(std::move(vars)) {
  const std::size_t m = weights_.size();
  if (m == 0 || dim_ == 0)
    throw InvalidArgument("gmm: need at least one component and dimension");
  if (means_.size() != m * dim_ || vars_.size() != m * dim_)
    throw InvalidArgument("gmm: means/vars must be M x D");
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w))
      throw InvalidArgument("gmm: weights must be finite and non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-4)
    throw InvalidArgument("gmm: weights sum to " + std::to_string(total));
  for (double &w : weights_) w /= total;
  for (double v : vars_)
    if (!(v > 0.0) || !std::isfinite(v))
      throw InvalidArgument("gmm: variances must be positive");
  for (double mu : means_)
    if (!std::isfinite(mu)) throw InvalidArgument("gmm: non-finite mean");

  inv_vars_.resize(vars_.size());
  log_norms_.resize(m);
  log_consts_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    double log_det = 0.0;
    for (std::size_t d = 0; d < dim_; ++d) {
      inv_vars_[i * dim_ + d] = 1.0 / vars_[i * dim_ + d];
      log_det += std::log(vars_[i * dim_ + d]);
    }
    log_norms_[i] = -0.5 * static_cast<double>(dim_) * kLog2Pi - 0.5 * log_det;
    log_consts_[i] = (weights_[i] > 0.0
                          ? std::log(weights_[i])
                          : -std::numeric_limits<double>::infinity()) +
                     log_norms_[i];
  }
}

void DiagGmm::CheckDim(std::span<const double> x) const {
  if (x.size() != dim_)
    throw InvalidArgument("gmm: frame dim " + std::to_string(x.size()) +
                          " != model dim " + std::to_string(dim_));
}

double DiagGmm::ComponentLogDensity(std::size_t i,
                                    std::span<const double> x) const {
  CheckDim(x);
  if (i >= NumComponents())
    throw InvalidArgument("gmm: component index out of range");
  const double *mu = means_.data() + i * dim_;
  const double *iv = inv_vars_.data() + i * dim_;
  double maha = 0.0;
  for (std::size_t d = 0; d < dim_; ++d) {
    const double diff = x[d] - mu[d];
    maha += diff * diff * iv[d];
  }
  return log_norms_[i] - 0.5 * maha;
}

void DiagGmm::ComponentLogDensities(std::span<const double> x,
                                    std::span<double> out) const {
  CheckDim(x);
  if (out.size() != NumComponents())
    throw InvalidArgument("gmm: output span has wrong size");
  for (std::size_t i = 0; i < NumComponents(); ++i) {
    const double *mu = means_.data() + i * dim_;
    const double *iv = inv_vars_.data() + i * dim_;
    double maha = 0.0;
    for (std::size_t d = 0; d < dim_; ++d) {
      const double diff = x[d] - mu[d];
      maha += diff * diff * iv[d];
    }
    out[i] = log_norms_[i] - 0.5 * maha;
  }
}

void DiagGmm::WeightedLogDensities(std::span<const double> x,
                                   std::span<double> out) const {
  ComponentLogDensities(x, out);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] += log_consts_[i] - log_norms_[i];
}

double DiagGmm::LogLikelihood(std::span<const double> x) const {
  std::vector<double> ll(NumComponents());
  WeightedLogDensities(x, ll);
  return LogSumExp(ll);
}

double DiagGmm::UtteranceLogLikelihood(const FeatureMatrix &utt) const {
  if (utt.Empty()) throw InvalidArgument("gmm: empty utterance");
  double total = 0.0;
  for (std::size_t t = 0; t < utt.NumFrames(); ++t)
    total += LogLikelihood(utt.Row(t));
  return total;
}

std::uint64_t DiagGmm::ContentHash() const {
  Fnv1a h;
  h.Update("gmm", 3);
  h.UpdateAsFloat32(weights_);
  h.UpdateAsFloat32(means_);
  h.UpdateAsFloat32(vars_);
  return h.Digest();
}

TensorArchive DiagGmm::ToArchive() const {
  const std::size_t m = NumComponents();
  TensorArchive ar;
  ar.Put("weights", Tensor({m}, weights_));
  ar.Put("means", Tensor({m, dim_}, means_));
  ar.Put("vars", Tensor({m, dim_}, vars_));
  return ar;
}

DiagGmm DiagGmm::FromArchive(const TensorArchive &ar) {
  const Tensor &w = ar.Get("weights");
  const Tensor &mu = ar.Get("means");
  const Tensor &var = ar.Get("vars");
  if (w.Rank() != 1 || mu.Rank() != 2 || var.Rank() != 2 ||
      mu.Dim(0) != w.Dim(0) || !mu.SameShape(var))
    throw FormatError("gmm archive: inconsistent weights/means/vars shapes", 0);
  const std::size_t dim = mu.Dim(1);
  return DiagGmm({w.Data().begin(), w.Data().end()},
                 {mu.Data().begin(), mu.Data().end()},
                 {var.Data().begin(), var.Data().end()}, dim);
}

double LlrScore(const DiagGmm &genuine, const DiagGmm &spoof,
                const FeatureMatrix &utt) {
  if (genuine.Dim() != spoof.Dim())
    throw InvalidArgument("llr: models have different feature dims");
  return genuine.UtteranceLogLikelihood(utt) -
         spoof.UtteranceLogLikelihood(utt);
}

FeatureMatrix PoolFrames(std::span<const FeatureMatrix> utts) {
  FeatureMatrix pooled;
  for (const auto &u : utts)
    for (std::size_t t = 0; t < u.NumFrames(); ++t) pooled.AppendFrame(u.Row(t));
  return pooled;
}

// ------------------------------------------------------------------- EM

namespace {

struct EmAccumulator {
  std::vector<double> occupancy;  // M
  std::vector<double> first;      // M x D
  std::vector<double> second;     // M x D
  double log_likelihood = 0.0;

  EmAccumulator(std::size_t m, std::size_t d)
      : occupancy(m, 0.0), first(m * d, 0.0), second(m * d, 0.0) {}

  void Add(const EmAccumulator &o) {
    for (std::size_t i = 0; i < occupancy.size(); ++i)
      occupancy[i] += o.occupancy[i];
    for (std::size_t i = 0; i < first.size(); ++i) {
      first[i] += o.first[i];
      second[i] += o.second[i];
    }
    log_likelihood += o.log_likelihood;
  }
};

// Accumulates sufficient statistics; records each frame's log-likelihood.
EmAccumulator EStep(const DiagGmm &gmm, const FeatureMatrix &frames,
                    int workers, std::vector<double> *frame_ll) {
  const std::size_t m = gmm.NumComponents(), dim = gmm.Dim();
  const std::size_t n = frames.NumFrames();
  const std::size_t chunks = (n + kChunkFrames - 1) / kChunkFrames;
  std::vector<EmAccumulator> partial(chunks, EmAccumulator(m, dim));
  frame_ll->assign(n, 0.0);
  ParallelFor(chunks, workers, [&](std::size_t c) {
    EmAccumulator &acc = partial[c];
    std::vector<double> post(m);
    const std::size_t end = std::min(n, (c + 1) * kChunkFrames);
    for (std::size_t t = c * kChunkFrames; t < end; ++t) {
      auto x = frames.Row(t);
      gmm.WeightedLogDensities(x, post);
      const double ll = LogSumExp(post);
      (*frame_ll)[t] = ll;
      acc.log_likelihood += ll;
      for (std::size_t i = 0; i < m; ++i) {
        const double gamma = std::exp(post[i] - ll);
        if (gamma == 0.0) continue;
        acc.occupancy[i] += gamma;
        double *f = acc.first.data() + i * dim;
        double *s = acc.second.data() + i * dim;
        for (std::size_t d = 0; d < dim; ++d) {
          f[d] += gamma * x[d];
          s[d] += gamma * x[d] * x[d];
        }
      }
    }
  });
  EmAccumulator total(m, dim);
  for (const auto &p : partial) total.Add(p);
  return total;
}

std::vector<double> KMeansPlusPlusMeans(const FeatureMatrix &frames,
                                        std::size_t m,
                                        std::span<const double> global_var,
                                        std::mt19937_64 &rng) {
  const std::size_t n = frames.NumFrames(), dim = frames.Dim();
  std::vector<double> means;
  means.reserve(m * dim);
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::uniform_int_distribution<std::size_t> first(0, n - 1);
  std::size_t pick = first(rng);
  for (std::size_t k = 0; k < m; ++k) {
    auto chosen = frames.Row(pick);
    means.insert(means.end(), chosen.begin(), chosen.end());
    double total = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      auto x = frames.Row(t);
      double d2 = 0.0;
      for (std::size_t d = 0; d < dim; ++d) {
        const double diff = x[d] - chosen[d];
        d2 += diff * diff / global_var[d];
      }
      dist[t] = std::min(dist[t], d2);
      total += dist[t];
    }
    if (k + 1 == m) break;
    if (total <= 0.0) {
      // Fewer distinct frames than components; fall back to uniform picks.
      pick = first(rng);
      continue;
    }
    std::uniform_real_distribution<double> u(0.0, total);
    double target = u(rng), run = 0.0;
    pick = n - 1;
    for (std::size_t t = 0; t < n; ++t) {
      run += dist[t];
      if (run >= target && dist[t] > 0.0) {
        pick = t;
        break;
      }
    }
  }
  return means;
}

}  // namespace

EmResult TrainEm(const FeatureMatrix &frames, std::size_t num_components,
                 const EmConfig &cfg) {
  const std::size_t n = frames.NumFrames(), dim = frames.Dim(),
                    m = num_components;
  if (m == 0) throw InvalidArgument("em: need at least one component");
  if (dim == 0) throw InvalidArgument("em: frames have zero dimension");
  if (n < m)
    throw InvalidArgument("em: " + std::to_string(n) + " frames for " +
                          std::to_string(m) + " components");
  if (cfg.iterations < 1) throw InvalidArgument("em: iterations must be >= 1");
  if (!(cfg.variance_floor_ratio > 0.0))
    throw InvalidArgument("em: variance floor must be positive");

  std::vector<double> global_mean(dim, 0.0), global_var(dim, 0.0);
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t d = 0; d < dim; ++d) global_mean[d] += frames(t, d);
  for (double &v : global_mean) v /= n;
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t d = 0; d < dim; ++d) {
      const double diff = frames(t, d) - global_mean[d];
      global_var[d] += diff * diff;
    }
  std::vector<double> floor(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    global_var[d] = std::max(global_var[d] / n, 1e-10);
    floor[d] = std::max(cfg.variance_floor_ratio * global_var[d], 1e-12);
  }

  std::mt19937_64 rng(cfg.seed);
  std::vector<double> means = KMeansPlusPlusMeans(frames, m, global_var, rng);
  std::vector<double> vars;
  for (std::size_t i = 0; i < m; ++i)
    vars.insert(vars.end(), global_var.begin(), global_var.end());
  DiagGmm gmm(std::vector<double>(m, 1.0 / m), means, vars, dim);

  EmResult result;
  std::vector<double> frame_ll;
  for (int it = 0; it < cfg.iterations; ++it) {
    EmAccumulator acc = EStep(gmm, frames, cfg.workers, &frame_ll);
    result.avg_log_likelihood.push_back(acc.log_likelihood / n);

    std::vector<std::size_t> empty;
    for (std::size_t i = 0; i < m; ++i)
      if (!(acc.occupancy[i] > 1e-10)) empty.push_back(i);
    std::vector<std::size_t> worst;
    if (!empty.empty()) {
      worst.resize(n);
      std::iota(worst.begin(), worst.end(), std::size_t{0});
      std::partial_sort(worst.begin(),
                        worst.begin() + std::min(empty.size(), n), worst.end(),
                        [&](std::size_t a, std::size_t b) {
                          return frame_ll[a] < frame_ll[b] ||
                                 (frame_ll[a] == frame_ll[b] && a < b);
                        });
    }

    std::vector<double> occ = acc.occupancy;
    for (std::size_t k = 0; k < empty.size(); ++k) {
      const std::size_t i = empty[k];
      auto x = frames.Row(worst[k % n]);
      occ[i] = 1.0;
      for (std::size_t d = 0; d < dim; ++d) {
        acc.first[i * dim + d] = x[d];
        acc.second[i * dim + d] = x[d] * x[d] + global_var[d];
      }
    }
    const double total_occ = std::accumulate(occ.begin(), occ.end(), 0.0);
    std::vector<double> weights(m);
    for (std::size_t i = 0; i < m; ++i) {
      weights[i] = occ[i] / total_occ;
      for (std::size_t d = 0; d < dim; ++d) {
        const double mu = acc.first[i * dim + d] / occ[i];
        const double var = acc.second[i * dim + d] / occ[i] - mu * mu;
        means[i * dim + d] = mu;
        vars[i * dim + d] = std::max(var, floor[d]);
      }
    }
    gmm = DiagGmm(std::move(weights), means, vars, dim);
  }
  double final_ll = 0.0;
  for (std::size_t t = 0; t < n; ++t) final_ll += gmm.LogLikelihood(frames.Row(t));
  result.avg_log_likelihood.push_back(final_ll / n);
  result.gmm = std::move(gmm);
  return result;
}

}  // namespace lgpspoof
