// lgpspoof/model.cc

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

#include "lgpspoof/model.h"

#include <algorithm>
#include <cmath>
#include <type_traits>

#include "lgpspoof/base.h"

namespace lgpspoof {

void ClassifierConfig::Validate() const {
  if (input_dim == 0 || channels == 0 || blocks == 0 || input_length == 0)
    throw InvalidArgument(
        "classifier: input_dim, channels, blocks and input_length must be >= 1");
  if (paths != 1 && paths != 2)
    throw InvalidArgument("classifier: paths must be 1 or 2");
  if (se_enabled && (se_reduction == 0 || channels % se_reduction != 0))
    throw InvalidArgument("classifier: se_reduction " +
                          std::to_string(se_reduction) +
                          " must divide channels " + std::to_string(channels));
}

// -------------------------------------------------------------- PathNetwork

namespace {

void HeNormal(Tensor &w, std::size_t fan_in, std::mt19937_64 &rng) {
  std::normal_distribution<double> dist(0.0, std::sqrt(2.0 / fan_in));
  for (double &v : w.Data()) v = dist(rng);
}

void ZeroAll(PathNetwork &net) {
  for (Tensor *t : net.Trainable()) t->Fill(0.0);
  net.stem_bn.running_mean.Fill(0.0);
  net.stem_bn.running_var.Fill(0.0);
  for (auto &b : net.blocks) {
    b.bn1.running_mean.Fill(0.0);
    b.bn1.running_var.Fill(0.0);
    b.bn2.running_mean.Fill(0.0);
    b.bn2.running_var.Fill(0.0);
  }
}

}  // namespace

PathNetwork PathNetwork::Create(const ClassifierConfig &cfg,
                                std::mt19937_64 &rng) {
  cfg.Validate();
  const std::size_t c = cfg.channels;
  PathNetwork net;
  net.stem_conv = Conv1dParams::Zeros(cfg.input_dim, c, 3, 1, 1);
  HeNormal(net.stem_conv.weight, cfg.input_dim * 3, rng);
  net.stem_bn = BatchNormParams::Identity(c);
  for (std::size_t k = 0; k < cfg.blocks; ++k) {
    ResBlock b;
    b.conv1 = Conv1dParams::Zeros(c, c, 3, 1, 1);
    HeNormal(b.conv1.weight, c * 3, rng);
    b.bn1 = BatchNormParams::Identity(c);
    b.conv2 = Conv1dParams::Zeros(c, c, 3, 1, 1);
    HeNormal(b.conv2.weight, c * 3, rng);
    b.bn2 = BatchNormParams::Identity(c);
    if (cfg.se_enabled) {
      SeBlockParams se = SeBlockParams::Zeros(c, cfg.se_reduction);
      HeNormal(se.w1, c, rng);
      HeNormal(se.w2, se.InnerWidth(), rng);
      b.se = std::move(se);
    }
    net.blocks.push_back(std::move(b));
  }
  return net;
}

PathNetwork PathNetwork::ZerosLike() const {
  PathNetwork z = *this;
  ZeroAll(z);
  return z;
}

std::vector<Tensor *> PathNetwork::Trainable() {
  std::vector<Tensor *> out = {&stem_conv.weight, &stem_conv.bias,
                               &stem_bn.gamma, &stem_bn.beta};
  for (auto &b : blocks) {
    out.insert(out.end(), {&b.conv1.weight, &b.conv1.bias, &b.bn1.gamma,
                           &b.bn1.beta, &b.conv2.weight, &b.conv2.bias,
                           &b.bn2.gamma, &b.bn2.beta});
    if (b.se) out.insert(out.end(), {&b.se->w1, &b.se->b1, &b.se->w2, &b.se->b2});
  }
  if (temp_fc) out.insert(out.end(), {&temp_fc->weight, &temp_fc->bias});
  return out;
}

std::vector<const Tensor *> PathNetwork::Trainable() const {
  std::vector<Tensor *> mut = const_cast<PathNetwork *>(this)->Trainable();
  return {mut.begin(), mut.end()};
}

std::vector<std::pair<std::string, const Tensor *>> PathNetwork::TrunkState()
    const {
  std::vector<std::pair<std::string, const Tensor *>> out;
  auto conv = [&](const std::string &prefix, const Conv1dParams &p) {
    out.emplace_back(prefix + ".weight", &p.weight);
    out.emplace_back(prefix + ".bias", &p.bias);
  };
  auto bn = [&](const std::string &prefix, const BatchNormParams &p) {
    out.emplace_back(prefix + ".gamma", &p.gamma);
    out.emplace_back(prefix + ".beta", &p.beta);
    out.emplace_back(prefix + ".running_mean", &p.running_mean);
    out.emplace_back(prefix + ".running_var", &p.running_var);
  };
  conv("stem.conv", stem_conv);
  bn("stem.bn", stem_bn);
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const std::string prefix = "block" + std::to_string(k);
    const ResBlock &b = blocks[k];
    conv(prefix + ".conv1", b.conv1);
    bn(prefix + ".bn1", b.bn1);
    conv(prefix + ".conv2", b.conv2);
    bn(prefix + ".bn2", b.bn2);
    if (b.se) {
      out.emplace_back(prefix + ".se.w1", &b.se->w1);
      out.emplace_back(prefix + ".se.b1", &b.se->b1);
      out.emplace_back(prefix + ".se.w2", &b.se->w2);
      out.emplace_back(prefix + ".se.b2", &b.se->b2);
    }
  }
  return out;
}

namespace {

template <typename Net>
Tensor Normalize(Net &net_bn, const Tensor &x, BnMode mode,
                 BatchNormCache *cache) {
  if constexpr (std::is_const_v<Net>)
    return BatchNormForward(x, net_bn, cache);
  else
    return BatchNormForward(x, net_bn, mode, cache);
}

template <typename Net>
Tensor PathForwardImpl(Net &net, const Tensor &x, BnMode mode,
                       PathCache *cache) {
  if (x.Rank() != 3)
    throw InvalidArgument("path forward: expected (batch, M, N), got " +
                          x.ShapeString());
  PathCache local;
  PathCache &c = cache ? *cache : local;
  c.input = x;
  c.stem_conv_out = Conv1dForward(x, net.stem_conv);
  c.stem_bn_out = Normalize(net.stem_bn, c.stem_conv_out, mode, &c.stem_bn);
  Tensor h = Relu(c.stem_bn_out);
  c.blocks.resize(net.blocks.size());
  for (std::size_t k = 0; k < net.blocks.size(); ++k) {
    auto &b = net.blocks[k];
    ResBlockCache &bc = c.blocks[k];
    bc.input = std::move(h);
    bc.conv1_out = Conv1dForward(bc.input, b.conv1);
    bc.bn1_out = Normalize(b.bn1, bc.conv1_out, mode, &bc.bn1);
    bc.relu1_out = Relu(bc.bn1_out);
    bc.conv2_out = Conv1dForward(bc.relu1_out, b.conv2);
    bc.bn2_out = Normalize(b.bn2, bc.conv2_out, mode, &bc.bn2);
    bc.relu2_out = Relu(bc.bn2_out);
    Tensor branch = b.se ? SeBlockForward(bc.relu2_out, *b.se, &bc.se)
                         : bc.relu2_out;
    if (!branch.SameShape(bc.input))
      throw InvalidArgument("res block: branch shape " + branch.ShapeString() +
                            " differs from input " + bc.input.ShapeString());
    for (std::size_t i = 0; i < branch.Size(); ++i) branch[i] += bc.input[i];
    h = std::move(branch);
  }
  MaxPoolResult pooled = MaxOverTime(h);
  c.trunk_out = std::move(h);
  c.argmax = std::move(pooled.argmax);
  return std::move(pooled.output);
}

void AddInto(Tensor &dst, const Tensor &src) {
  for (std::size_t i = 0; i < dst.Size(); ++i) dst[i] += src[i];
}

}  // namespace

Tensor PathForward(PathNetwork &net, const Tensor &x, BnMode mode,
                   PathCache *cache) {
  return PathForwardImpl(net, x, mode, cache);
}

Tensor PathForward(const PathNetwork &net, const Tensor &x, PathCache *cache) {
  return PathForwardImpl(net, x, BnMode::kEval, cache);
}

PathNetwork PathBackward(const PathNetwork &net, const Tensor &grad_embedding,
                         const PathCache &cache, Tensor *grad_input) {
  PathNetwork g = net.ZerosLike();
  g.temp_fc.reset();
  Tensor grad = MaxOverTimeBackward(grad_embedding, cache.argmax,
                                    cache.trunk_out.Shape());
  for (std::size_t k = net.blocks.size(); k-- > 0;) {
    const ResBlock &b = net.blocks[k];
    const ResBlockCache &bc = cache.blocks[k];
    ResBlock &gb = g.blocks[k];
    // grad flows to the skip path unchanged and through the branch.
    Tensor grad_branch = grad;
    if (b.se) {
      SeGrads sg = SeBlockBackward(grad_branch, bc.relu2_out, *b.se, bc.se);
      gb.se->w1 = std::move(sg.w1);
      gb.se->b1 = std::move(sg.b1);
      gb.se->w2 = std::move(sg.w2);
      gb.se->b2 = std::move(sg.b2);
      grad_branch = std::move(sg.input);
    }
    Tensor gr2 = ReluBackward(grad_branch, bc.bn2_out);
    BatchNormGrads bn2 = BatchNormBackward(gr2, b.bn2, bc.bn2);
    gb.bn2.gamma = std::move(bn2.gamma);
    gb.bn2.beta = std::move(bn2.beta);
    Conv1dGrads c2 = Conv1dBackward(bn2.input, bc.relu1_out, b.conv2);
    gb.conv2.weight = std::move(c2.weight);
    gb.conv2.bias = std::move(c2.bias);
    Tensor gr1 = ReluBackward(c2.input, bc.bn1_out);
    BatchNormGrads bn1 = BatchNormBackward(gr1, b.bn1, bc.bn1);
    gb.bn1.gamma = std::move(bn1.gamma);
    gb.bn1.beta = std::move(bn1.beta);
    Conv1dGrads c1 = Conv1dBackward(bn1.input, bc.input, b.conv1);
    gb.conv1.weight = std::move(c1.weight);
    gb.conv1.bias = std::move(c1.bias);
    AddInto(grad, c1.input);
  }
  Tensor gs = ReluBackward(grad, cache.stem_bn_out);
  BatchNormGrads sbn = BatchNormBackward(gs, net.stem_bn, cache.stem_bn);
  g.stem_bn.gamma = std::move(sbn.gamma);
  g.stem_bn.beta = std::move(sbn.beta);
  Conv1dGrads sc = Conv1dBackward(sbn.input, cache.input, net.stem_conv);
  g.stem_conv.weight = std::move(sc.weight);
  g.stem_conv.bias = std::move(sc.bias);
  if (grad_input) *grad_input = std::move(sc.input);
  return g;
}

// --------------------------------------------------------------- SpoofModel

SpoofModel SpoofModel::Create(const ClassifierConfig &cfg,
                              std::vector<PathFrontend> frontends,
                              std::uint64_t seed) {
  cfg.Validate();
  if (frontends.size() != cfg.paths)
    throw InvalidArgument("model: " + std::to_string(frontends.size()) +
                          " frontends for " + std::to_string(cfg.paths) +
                          " paths");
  for (const auto &f : frontends) {
    if (f.gmm.NumComponents() != cfg.input_dim ||
        f.stats.Order() != cfg.input_dim)
      throw InvalidArgument("model: GMM/stats order does not match input_dim " +
                            std::to_string(cfg.input_dim));
  }
  SpoofModel m;
  m.config_ = cfg;
  m.frontends_ = std::move(frontends);
  std::mt19937_64 rng(seed);
  for (std::size_t p = 0; p < cfg.paths; ++p)
    m.networks_.push_back(PathNetwork::Create(cfg, rng));
  m.fc_ = LinearParams::Zeros(cfg.paths * cfg.channels, 2);
  return m;
}

SpoofModel SpoofModel::Assemble(const ClassifierConfig &cfg,
                                std::vector<PathFrontend> frontends,
                                std::vector<PathNetwork> networks,
                                LinearParams classifier) {
  SpoofModel m = Create(cfg, std::move(frontends), 0);
  if (networks.size() != cfg.paths)
    throw InvalidArgument("model: wrong number of path networks");
  for (std::size_t p = 0; p < cfg.paths; ++p) {
    auto want = m.networks_[p].TrunkState();
    auto have = networks[p].TrunkState();
    if (want.size() != have.size())
      throw InvalidArgument("model: path " + std::to_string(p) +
                            " network does not match the configuration");
    for (std::size_t i = 0; i < want.size(); ++i)
      if (!want[i].second->SameShape(*have[i].second))
        throw InvalidArgument("model: path " + std::to_string(p) + " tensor " +
                              have[i].first + " has shape " +
                              have[i].second->ShapeString());
  }
  if (!classifier.weight.SameShape(m.fc_.weight) ||
      !classifier.bias.SameShape(m.fc_.bias))
    throw InvalidArgument("model: classifier shape mismatch");
  m.networks_ = std::move(networks);
  m.fc_ = std::move(classifier);
  return m;
}

std::vector<Tensor> SpoofModel::PathInputs(const FeatureMatrix &utt) const {
  std::vector<Tensor> out;
  out.reserve(frontends_.size());
  for (const auto &f : frontends_) {
    out.push_back(ExtractLgp(f.gmm, f.stats, utt));
    if (!out.back().AllFinite())
      throw NumericError("model: non-finite LGP feature");
  }
  return out;
}

namespace {

template <typename Model, typename Nets>
Tensor ModelForwardImpl(Model &model, Nets &nets, const LinearParams &fc,
                        std::span<const Tensor> inputs, BnMode mode,
                        ModelCache *cache) {
  if (inputs.size() != nets.size())
    throw InvalidArgument("model forward: " + std::to_string(inputs.size()) +
                          " inputs for " + std::to_string(nets.size()) +
                          " paths");
  const std::size_t c = model.Config().channels;
  const std::size_t batch = inputs[0].Dim(0);
  ModelCache local;
  ModelCache &mc = cache ? *cache : local;
  mc.paths.resize(nets.size());
  mc.concat = Tensor({batch, nets.size() * c});
  for (std::size_t p = 0; p < nets.size(); ++p) {
    if (inputs[p].Rank() != 3 || inputs[p].Dim(0) != batch)
      throw InvalidArgument("model forward: inconsistent path batches");
    Tensor emb;
    if constexpr (std::is_const_v<Nets>)
      emb = PathForward(nets[p], inputs[p], &mc.paths[p]);
    else
      emb = PathForward(nets[p], inputs[p], mode, &mc.paths[p]);
    for (std::size_t b = 0; b < batch; ++b)
      for (std::size_t k = 0; k < c; ++k)
        mc.concat.At(b, p * c + k) = emb.At(b, k);
  }
  return LinearForward(mc.concat, fc);
}

}  // namespace

Tensor SpoofModel::Forward(std::span<const Tensor> inputs, BnMode mode,
                           ModelCache *cache) {
  return ModelForwardImpl(*this, networks_, fc_, inputs, mode, cache);
}

Tensor SpoofModel::Forward(std::span<const Tensor> inputs,
                           ModelCache *cache) const {
  return ModelForwardImpl(*this, networks_, fc_, inputs, BnMode::kEval, cache);
}

ModelGrads SpoofModel::Backward(const Tensor &grad_logits,
                                const ModelCache &cache) const {
  const std::size_t c = config_.channels;
  LinearGrads lg = LinearBackward(grad_logits, cache.concat, fc_);
  ModelGrads g;
  g.fc.weight = std::move(lg.weight);
  g.fc.bias = std::move(lg.bias);
  const std::size_t batch = cache.concat.Dim(0);
  for (std::size_t p = 0; p < networks_.size(); ++p) {
    Tensor ge({batch, c});
    for (std::size_t b = 0; b < batch; ++b)
      for (std::size_t k = 0; k < c; ++k) ge.At(b, k) = lg.input.At(b, p * c + k);
    g.paths.push_back(PathBackward(networks_[p], ge, cache.paths[p]));
  }
  return g;
}

SpoofModel::Output SpoofModel::ForwardUtterance(
    const FeatureMatrix &segment) const {
  std::vector<Tensor> inputs = PathInputs(segment);
  for (auto &t : inputs) t = t.Reshaped({1, t.Dim(0), t.Dim(1)});
  Tensor logits = Forward(inputs);
  Output out;
  out.logit_bonafide = logits.At(0, kBonafide);
  out.logit_spoof = logits.At(0, kSpoof);
  out.score = out.logit_bonafide - out.logit_spoof;
  return out;
}

std::vector<Tensor *> SpoofModel::Trainable() {
  std::vector<Tensor *> out;
  for (auto &net : networks_) {
    std::vector<Tensor *> t = net.Trainable();
    out.insert(out.end(), t.begin(), t.end());
  }
  out.push_back(&fc_.weight);
  out.push_back(&fc_.bias);
  return out;
}

TensorArchive SpoofModel::ToArchive() const {
  TensorArchive ar;
  ar.PutScalar("config.input_dim", static_cast<double>(config_.input_dim));
  ar.PutScalar("config.channels", static_cast<double>(config_.channels));
  ar.PutScalar("config.blocks", static_cast<double>(config_.blocks));
  ar.PutScalar("config.se_enabled", config_.se_enabled ? 1.0 : 0.0);
  ar.PutScalar("config.se_reduction", static_cast<double>(config_.se_reduction));
  ar.PutScalar("config.input_length", static_cast<double>(config_.input_length));
  ar.PutScalar("config.paths", static_cast<double>(config_.paths));
  for (std::size_t p = 0; p < networks_.size(); ++p) {
    const std::string prefix = "path" + std::to_string(p) + ".";
    for (const auto &[name, tensor] : networks_[p].TrunkState())
      ar.Put(prefix + name, *tensor);
    if (networks_[p].temp_fc) {
      ar.Put(prefix + "temp_fc.weight", networks_[p].temp_fc->weight);
      ar.Put(prefix + "temp_fc.bias", networks_[p].temp_fc->bias);
    }
    ar.PutUint64(prefix + "ref.gmm", frontends_[p].gmm.ContentHash());
    ar.PutUint64(prefix + "ref.stats", frontends_[p].stats.ContentHash());
  }
  ar.Put("fc.weight", fc_.weight);
  ar.Put("fc.bias", fc_.bias);
  return ar;
}

SpoofModel SpoofModel::FromArchive(const TensorArchive &ar,
                                   std::vector<PathFrontend> frontends) {
  auto count = [&](const char *name) {
    const double v = ar.GetScalar(name);
    if (!(v >= 0.0) || v != std::floor(v))
      throw FormatError(std::string("model archive: bad ") + name, 0);
    return static_cast<std::size_t>(v);
  };
  ClassifierConfig cfg;
  cfg.input_dim = count("config.input_dim");
  cfg.channels = count("config.channels");
  cfg.blocks = count("config.blocks");
  cfg.se_enabled = ar.GetScalar("config.se_enabled") != 0.0;
  cfg.se_reduction = count("config.se_reduction");
  cfg.input_length = count("config.input_length");
  cfg.paths = count("config.paths");

  for (std::size_t p = 0; p < frontends.size() && p < cfg.paths; ++p) {
    const std::string prefix = "path" + std::to_string(p) + ".";
    if (ar.GetUint64(prefix + "ref.gmm") != frontends[p].gmm.ContentHash())
      throw InvalidArgument("model: path " + std::to_string(p) +
                            " GMM differs from the one used in training");
    if (ar.GetUint64(prefix + "ref.stats") != frontends[p].stats.ContentHash())
      throw InvalidArgument("model: path " + std::to_string(p) +
                            " LGP stats differ from the ones used in training");
  }
  SpoofModel m = Create(cfg, std::move(frontends), 0);
  for (std::size_t p = 0; p < m.networks_.size(); ++p) {
    const std::string prefix = "path" + std::to_string(p) + ".";
    PathNetwork &net = m.networks_[p];
    for (auto &[name, tensor] : net.TrunkState()) {
      const Tensor &stored = ar.Get(prefix + name);
      if (!stored.SameShape(*tensor))
        throw FormatError("model archive: shape mismatch for " + prefix + name,
                          0);
      *const_cast<Tensor *>(tensor) = stored;
    }
    if (ar.Has(prefix + "temp_fc.weight")) {
      LinearParams fc;
      fc.weight = ar.Get(prefix + "temp_fc.weight");
      fc.bias = ar.Get(prefix + "temp_fc.bias");
      net.temp_fc = std::move(fc);
    }
  }
  const Tensor &w = ar.Get("fc.weight");
  const Tensor &b = ar.Get("fc.bias");
  if (!w.SameShape(m.fc_.weight) || !b.SameShape(m.fc_.bias))
    throw FormatError("model archive: final classifier shape mismatch", 0);
  m.fc_.weight = w;
  m.fc_.bias = b;
  return m;
}

std::vector<double> DetectionScores(const Tensor &logits) {
  std::vector<double> s(logits.Dim(0));
  for (std::size_t b = 0; b < s.size(); ++b)
    s[b] = logits.At(b, kBonafide) - logits.At(b, kSpoof);
  return s;
}

Tensor StackBatch(std::span<const Tensor *const> items) {
  if (items.empty()) throw InvalidArgument("stack: empty batch");
  const auto &shape = items[0]->Shape();
  if (shape.size() != 2) throw InvalidArgument("stack: items must be rank 2");
  Tensor out({items.size(), shape[0], shape[1]});
  const std::size_t per = items[0]->Size();
  for (std::size_t b = 0; b < items.size(); ++b) {
    if (items[b]->Shape() != shape)
      throw InvalidArgument("stack: items differ in shape");
    std::copy(items[b]->Data().begin(), items[b]->Data().end(),
              out.Data().begin() + b * per);
  }
  return out;
}

// ---------------------------------------------------------------------- UFM

void UfmConfig::Validate() const {
  if (segment_length < 2 || segment_length % 2 != 0)
    throw InvalidArgument("ufm: segment length must be even and >= 2, got " +
                          std::to_string(segment_length));
}

namespace {

std::size_t ExtendedLength(std::size_t frames, std::size_t n) {
  return (frames + n - 1) / n * n;
}

}  // namespace

std::vector<FeatureMatrix> SegmentUfm(const FeatureMatrix &utt,
                                      const UfmConfig &cfg) {
  cfg.Validate();
  if (utt.Empty()) throw InvalidArgument("ufm: empty utterance");
  const std::size_t n = cfg.segment_length, half = n / 2;
  const std::size_t total = ExtendedLength(utt.NumFrames(), n);
  std::vector<FeatureMatrix> segments;
  for (std::size_t start = 0; start + n <= total; start += half) {
    FeatureMatrix seg(n, utt.Dim());
    for (std::size_t t = 0; t < n; ++t) {
      auto src = utt.Row((start + t) % utt.NumFrames());
      std::copy(src.begin(), src.end(), seg.Row(t).begin());
    }
    segments.push_back(std::move(seg));
  }
  return segments;
}

double ScoreLgp(const SpoofModel &model, std::span<const Tensor> path_lgp) {
  const std::size_t n = model.Config().input_length;
  UfmConfig{n}.Validate();
  if (path_lgp.size() != model.NumPaths())
    throw InvalidArgument("score: wrong number of path inputs");
  const std::size_t frames = path_lgp[0].Dim(1);
  if (frames == 0) throw InvalidArgument("score: empty utterance");
  const std::size_t m = path_lgp[0].Dim(0);
  const std::size_t total = ExtendedLength(frames, n), half = n / 2;
  const std::size_t count = 2 * total / n - 1;
  constexpr std::size_t kMaxBatch = 64;

  double sum = 0.0;
  for (std::size_t first = 0; first < count; first += kMaxBatch) {
    const std::size_t batch = std::min(kMaxBatch, count - first);
    std::vector<Tensor> inputs;
    for (const Tensor &lgp : path_lgp) {
      Tensor x({batch, m, n});
      for (std::size_t b = 0; b < batch; ++b) {
        const std::size_t start = (first + b) * half;
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t t = 0; t < n; ++t)
            x.At(b, i, t) = lgp.At(i, (start + t) % frames);
      }
      inputs.push_back(std::move(x));
    }
    Tensor logits = model.Forward(inputs);
    for (double s : DetectionScores(logits)) sum += s;
  }
  const double score = sum / static_cast<double>(count);
  if (!std::isfinite(score)) throw NumericError("score: non-finite output");
  return score;
}

double ScoreUtterance(const SpoofModel &model, const FeatureMatrix &utt) {
  if (utt.Empty()) throw InvalidArgument("score: empty utterance");
  std::vector<Tensor> lgp = model.PathInputs(utt);
  return ScoreLgp(model, lgp);
}

}  // namespace lgpspoof
