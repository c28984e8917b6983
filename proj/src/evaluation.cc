// lgpspoof/evaluation.cc

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

#include "lgpspoof/evaluation.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "lgpspoof/base.h"

namespace lgpspoof {

TrialLabel ParseTrialLabel(std::string_view s) {
  if (s == "bonafide" || s == "genuine") return TrialLabel::kBonafide;
  if (s == "spoof") return TrialLabel::kSpoof;
  throw InvalidArgument("unknown trial label '" + std::string(s) + "'");
}

const char *TrialLabelName(TrialLabel label) {
  switch (label) {
    case TrialLabel::kBonafide: return "bonafide";
    case TrialLabel::kSpoof: return "spoof";
    default: return "unknown";
  }
}

namespace {

struct OperatingPoints {
  std::vector<double> threshold, p_miss, p_fa;
};

OperatingPoints Sweep(std::span<const double> bonafide,
                      std::span<const double> spoof) {
  if (bonafide.empty() || spoof.empty())
    throw InvalidArgument("metrics need at least one bona fide and one spoof "
                          "trial");
  std::vector<double> b(bonafide.begin(), bonafide.end());
  std::vector<double> s(spoof.begin(), spoof.end());
  for (double v : b)
    if (!std::isfinite(v)) throw InvalidArgument("metrics: non-finite score");
  for (double v : s)
    if (!std::isfinite(v)) throw InvalidArgument("metrics: non-finite score");
  std::sort(b.begin(), b.end());
  std::sort(s.begin(), s.end());
  std::vector<double> all(b);
  all.insert(all.end(), s.begin(), s.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  all.push_back(std::numeric_limits<double>::infinity());

  OperatingPoints op;
  op.threshold = all;
  const double nb = b.size(), ns = s.size();
  std::size_t ib = 0, is = 0;  // counts of scores strictly below threshold
  for (double th : all) {
    while (ib < b.size() && b[ib] < th) ++ib;
    while (is < s.size() && s[is] < th) ++is;
    op.p_miss.push_back(ib / nb);
    op.p_fa.push_back((s.size() - is) / ns);
  }
  return op;
}

void SplitByLabel(std::span<const TrialRecord> trials, std::vector<double> *b,
                  std::vector<double> *s) {
  for (const auto &t : trials) {
    if (t.label == TrialLabel::kBonafide)
      b->push_back(t.score);
    else if (t.label == TrialLabel::kSpoof)
      s->push_back(t.score);
    else
      throw InvalidArgument("metrics: trial '" + t.id + "' has no label");
  }
}

}  // namespace

EerResult ComputeEer(std::span<const double> bonafide,
                     std::span<const double> spoof) {
  OperatingPoints op = Sweep(bonafide, spoof);
  std::size_t k = 0;
  while (op.p_miss[k] < op.p_fa[k]) ++k;  // terminates at +inf
  // op.p_fa[0] is 1 and op.p_miss[0] is 0, so k >= 1.
  const double m1 = op.p_miss[k - 1], m2 = op.p_miss[k];
  const double f1 = op.p_fa[k - 1], f2 = op.p_fa[k];
  const double alpha = (f1 - m1) / ((m2 - m1) - (f2 - f1));
  EerResult r;
  r.eer = m1 + alpha * (m2 - m1);
  const double t1 = op.threshold[k - 1], t2 = op.threshold[k];
  r.threshold = std::isinf(t2) ? t1 : t1 + alpha * (t2 - t1);
  return r;
}

EerResult ComputeEer(std::span<const TrialRecord> trials) {
  std::vector<double> b, s;
  SplitByLabel(trials, &b, &s);
  return ComputeEer(b, s);
}

void TdcfCostModel::Validate() const {
  const double probs[] = {p_target, p_nontarget, p_spoof, p_miss_asv, p_fa_asv,
                          p_miss_spoof_asv};
  for (double p : probs)
    if (!(p >= 0.0 && p <= 1.0))
      throw InvalidArgument("t-DCF: probabilities must lie in [0, 1]");
  if (std::abs(p_target + p_nontarget + p_spoof - 1.0) > 1e-9)
    throw InvalidArgument("t-DCF: priors must sum to 1");
  if (!(c_miss_asv > 0 && c_fa_asv > 0 && c_miss_cm > 0 && c_fa_cm > 0))
    throw InvalidArgument("t-DCF: costs must be positive");
  if (!(C1() > 0.0) || !(C2() > 0.0))
    throw InvalidArgument("t-DCF: degenerate cost model (C1 = " +
                          std::to_string(C1()) +
                          ", C2 = " + std::to_string(C2()) + ")");
}

double TdcfCostModel::C1() const {
  return p_target * (c_miss_cm - c_miss_asv * p_miss_asv) -
         p_nontarget * c_fa_asv * p_fa_asv;
}

double TdcfCostModel::C2() const {
  return c_fa_cm * p_spoof * (1.0 - p_miss_spoof_asv);
}

TdcfCostModel ParseTdcfConfig(std::string_view text) {
  TdcfCostModel c;
  const std::pair<const char *, double *> fields[] = {
      {"p_target", &c.p_target},         {"p_nontarget", &c.p_nontarget},
      {"p_spoof", &c.p_spoof},           {"c_miss_asv", &c.c_miss_asv},
      {"c_fa_asv", &c.c_fa_asv},         {"c_miss_cm", &c.c_miss_cm},
      {"c_fa_cm", &c.c_fa_cm},           {"p_miss_asv", &c.p_miss_asv},
      {"p_fa_asv", &c.p_fa_asv},         {"p_miss_spoof_asv", &c.p_miss_spoof_asv}};
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::erase_if(line, [](char ch) { return ch == '\r'; });
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t") + 1);
      return s;
    };
    if (eq == std::string::npos)
      throw FormatError("t-DCF config line " + std::to_string(lineno) +
                        ": expected key = value", lineno);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    double *dst = nullptr;
    for (const auto &[name, ptr] : fields)
      if (key == name) dst = ptr;
    if (!dst)
      throw FormatError("t-DCF config line " + std::to_string(lineno) +
                        ": unknown key '" + key + "'", lineno);
    const auto res =
        std::from_chars(value.data(), value.data() + value.size(), *dst);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size())
      throw FormatError("t-DCF config line " + std::to_string(lineno) +
                        ": bad number '" + value + "'", lineno);
  }
  c.Validate();
  return c;
}

namespace {

std::string ReadText(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteText(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

// Splits `text` into whitespace-separated fields, one vector per non-blank
// line, with 1-based line numbers.
template <typename Fn>
void ForEachLine(std::string_view text, Fn &&fn) {
  std::size_t lineno = 0, pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      if (j > i) fields.push_back(line.substr(i, j - i));
      i = j;
    }
    if (!fields.empty()) fn(lineno, fields);
  }
}

std::string LineError(const char *what, std::size_t lineno,
                      const std::string &msg) {
  return std::string(what) + " line " + std::to_string(lineno) + ": " + msg;
}

std::string ShortestDouble(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

TdcfCostModel ReadTdcfConfig(const std::string &path) {
  return ParseTdcfConfig(ReadText(path));
}

MinTdcfResult ComputeMinTdcf(std::span<const double> bonafide,
                             std::span<const double> spoof,
                             const TdcfCostModel &cost) {
  cost.Validate();
  OperatingPoints op = Sweep(bonafide, spoof);
  const double c1 = cost.C1(), c2 = cost.C2();
  const double norm = std::min(c1, c2);
  MinTdcfResult best{std::numeric_limits<double>::infinity(), 0.0};
  for (std::size_t k = 0; k < op.threshold.size(); ++k) {
    const double t = (c1 * op.p_miss[k] + c2 * op.p_fa[k]) / norm;
    if (t < best.min_tdcf) best = {t, op.threshold[k]};
  }
  return best;
}

std::vector<TrialRecord> ParseProtocol(std::string_view text) {
  std::vector<TrialRecord> out;
  std::unordered_set<std::string> seen;
  ForEachLine(text, [&](std::size_t lineno,
                        const std::vector<std::string_view> &f) {
    TrialRecord r;
    std::string_view label;
    if (f.size() == 2) {
      r.id = f[0];
      label = f[1];
    } else if (f.size() == 5) {
      r.id = f[1];
      label = f[4];
    } else {
      throw FormatError(LineError("protocol", lineno,
                                  "expected 'utt_id label', got " +
                                      std::to_string(f.size()) + " fields"),
                        lineno);
    }
    try {
      r.label = ParseTrialLabel(label);
    } catch (const InvalidArgument &e) {
      throw FormatError(LineError("protocol", lineno, e.what()), lineno);
    }
    if (!seen.insert(r.id).second)
      throw FormatError(LineError("protocol", lineno,
                                  "duplicate id '" + r.id + "'"), lineno);
    out.push_back(std::move(r));
  });
  return out;
}

std::vector<TrialRecord> ReadProtocol(const std::string &path) {
  return ParseProtocol(ReadText(path));
}

std::string FormatProtocol(std::span<const TrialRecord> trials) {
  std::string out;
  for (const auto &t : trials) {
    if (t.label == TrialLabel::kUnknown)
      throw InvalidArgument("protocol: trial '" + t.id + "' has no label");
    out += t.id + ' ' + TrialLabelName(t.label) + '\n';
  }
  return out;
}

void WriteProtocol(const std::string &path,
                   std::span<const TrialRecord> trials) {
  WriteText(path, FormatProtocol(trials));
}

std::vector<TrialRecord> ParseScores(std::string_view text) {
  std::vector<TrialRecord> out;
  std::unordered_set<std::string> seen;
  ForEachLine(text, [&](std::size_t lineno,
                        const std::vector<std::string_view> &f) {
    if (f.size() != 2)
      throw FormatError(LineError("scores", lineno, "expected 'utt_id score'"),
                        lineno);
    TrialRecord r;
    r.id = f[0];
    const auto res = std::from_chars(f[1].data(), f[1].data() + f[1].size(),
                                     r.score);
    if (res.ec != std::errc() || res.ptr != f[1].data() + f[1].size() ||
        !std::isfinite(r.score))
      throw FormatError(LineError("scores", lineno,
                                  "bad score '" + std::string(f[1]) + "'"),
                        lineno);
    if (!seen.insert(r.id).second)
      throw FormatError(LineError("scores", lineno,
                                  "duplicate id '" + r.id + "'"), lineno);
    out.push_back(std::move(r));
  });
  return out;
}

std::vector<TrialRecord> ReadScores(const std::string &path) {
  return ParseScores(ReadText(path));
}

std::string FormatScores(std::span<const TrialRecord> trials) {
  std::string out;
  for (const auto &t : trials) {
    if (!std::isfinite(t.score))
      throw NumericError("scores: trial '" + t.id + "' has a non-finite score");
    out += t.id + ' ' + ShortestDouble(t.score) + '\n';
  }
  return out;
}

void WriteScores(const std::string &path, std::span<const TrialRecord> trials) {
  WriteText(path, FormatScores(trials));
}

std::vector<TrialRecord> AttachLabels(std::span<const TrialRecord> scores,
                                      std::span<const TrialRecord> protocol) {
  std::unordered_map<std::string, TrialLabel> labels;
  for (const auto &p : protocol) labels.emplace(p.id, p.label);
  std::vector<TrialRecord> out(scores.begin(), scores.end());
  for (auto &t : out) {
    auto it = labels.find(t.id);
    if (it == labels.end())
      throw InvalidArgument("score id '" + t.id + "' is not in the protocol");
    t.label = it->second;
  }
  return out;
}

// ------------------------------------------------------------------- fusion

std::vector<double> FusionModel::Apply(
    std::span<const std::vector<double>> scores) const {
  if (scores.size() != weights.size())
    throw InvalidArgument("fusion: expected " + std::to_string(weights.size()) +
                          " subsystems, got " + std::to_string(scores.size()));
  const std::size_t n = scores[0].size();
  std::vector<double> out(n, bias);
  for (std::size_t k = 0; k < scores.size(); ++k) {
    if (scores[k].size() != n)
      throw InvalidArgument("fusion: subsystems differ in trial count");
    for (std::size_t i = 0; i < n; ++i) out[i] += weights[k] * scores[k][i];
  }
  return out;
}

namespace {

class FusionObjective {
 public:
  FusionObjective(std::vector<std::vector<double>> z,
                  std::span<const TrialLabel> labels)
      : z_(std::move(z)), labels_(labels.begin(), labels.end()) {}

  EerResult Eer(std::span<const double> w) const {
    std::vector<double> b, s;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      double v = 0.0;
      for (std::size_t k = 0; k < z_.size(); ++k) v += w[k] * z_[k][i];
      (labels_[i] == TrialLabel::kBonafide ? b : s).push_back(v);
    }
    return ComputeEer(b, s);
  }

 private:
  std::vector<std::vector<double>> z_;
  std::vector<TrialLabel> labels_;
};

double DistanceToUniform(std::span<const double> w) {
  double d = 0.0;
  for (double v : w) d += (v - 1.0 / w.size()) * (v - 1.0 / w.size());
  return d;
}

// Number of points of the simplex grid with `steps` subdivisions in k dims.
double GridSize(std::size_t k, std::size_t steps) {
  double c = 1.0;
  for (std::size_t i = 1; i < k; ++i) c = c * (steps + i) / i;
  return c;
}

// Calls fn(w) for every composition of `steps` into k parts, scaled to sum 1.
template <typename Fn>
void ForEachGridPoint(std::size_t k, std::size_t steps, Fn &&fn) {
  std::vector<std::size_t> parts(k, 0);
  std::vector<double> w(k);
  auto rec = [&](auto &&self, std::size_t idx, std::size_t left) -> void {
    if (idx + 1 == k) {
      parts[idx] = left;
      for (std::size_t i = 0; i < k; ++i)
        w[i] = static_cast<double>(parts[i]) / steps;
      fn(std::span<const double>(w));
      return;
    }
    for (std::size_t v = 0; v <= left; ++v) {
      parts[idx] = v;
      self(self, idx + 1, left - v);
    }
  };
  rec(rec, 0, steps);
}

// Weights with coordinate c set to t and the remaining mass shared in the
// proportions of `w`.
std::vector<double> MoveCoordinate(std::span<const double> w, std::size_t c,
                                   double t) {
  std::vector<double> out(w.begin(), w.end());
  double rest = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (i != c) rest += w[i];
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i == c)
      out[i] = t;
    else if (rest > 0.0)
      out[i] = w[i] / rest * (1.0 - t);
    else
      out[i] = (1.0 - t) / (w.size() - 1);
  }
  return out;
}

}  // namespace

FusionResult FitFusion(std::span<const std::vector<double>> dev_scores,
                       std::span<const TrialLabel> labels) {
  const std::size_t k = dev_scores.size();
  if (k == 0) throw InvalidArgument("fusion: no subsystems");
  std::vector<double> mean(k), stdev(k);
  std::vector<std::vector<double>> z(k);
  for (std::size_t j = 0; j < k; ++j) {
    const auto &s = dev_scores[j];
    if (s.size() != labels.size())
      throw InvalidArgument("fusion: subsystem " + std::to_string(j) +
                            " has " + std::to_string(s.size()) +
                            " dev scores for " +
                            std::to_string(labels.size()) + " labels");
    double m = 0.0;
    for (double v : s) m += v;
    m /= s.size();
    double var = 0.0;
    for (double v : s) var += (v - m) * (v - m);
    var /= s.size();
    mean[j] = m;
    stdev[j] = std::sqrt(var) > 0.0 ? std::sqrt(var) : 1.0;
    z[j].resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) z[j][i] = (s[i] - m) / stdev[j];
  }
  FusionObjective obj(std::move(z), labels);

  std::size_t steps = 100;
  while (steps > 1 && GridSize(k, steps) > kMaxGridPoints) steps /= 2;

  std::vector<double> best_w;
  double best_eer = std::numeric_limits<double>::infinity(), best_dist = 0.0;
  auto consider = [&](std::span<const double> w, bool strict) {
    const double e = obj.Eer(w).eer;
    const double d = DistanceToUniform(w);
    const bool better = strict ? e < best_eer
                               : (e < best_eer || (e == best_eer && d < best_dist));
    if (better) {
      best_eer = e;
      best_dist = d;
      best_w.assign(w.begin(), w.end());
    }
  };
  ForEachGridPoint(k, steps, [&](std::span<const double> w) {
    consider(w, false);
  });

  if (k > 1) {
    const double radius = 1.0 / steps;
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (std::size_t c = 0; c < k; ++c) {
      const std::vector<double> base = best_w;
      double lo = std::max(0.0, base[c] - radius);
      double hi = std::min(1.0, base[c] + radius);
      auto f = [&](double t) { return obj.Eer(MoveCoordinate(base, c, t)).eer; };
      double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
      double f1 = f(x1), f2 = f(x2);
      for (int it = 0; it < 40; ++it) {
        if (f1 <= f2) {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - phi * (hi - lo);
          f1 = f(x1);
        } else {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + phi * (hi - lo);
          f2 = f(x2);
        }
      }
      consider(MoveCoordinate(base, c, 0.5 * (lo + hi)), true);
    }
  }

  FusionResult r;
  r.simplex_weights = best_w;
  const EerResult fused = obj.Eer(best_w);
  r.dev_eer = fused.eer;
  r.model.weights.resize(k);
  double offset = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    r.model.weights[j] = best_w[j] / stdev[j];
    offset -= r.model.weights[j] * mean[j];
  }
  r.model.bias = offset - fused.threshold;
  return r;
}

AlignedScores AlignSubsystems(
    std::span<const std::vector<TrialRecord>> subsystems) {
  if (subsystems.empty()) throw InvalidArgument("fusion: no subsystems");
  AlignedScores out;
  for (const auto &t : subsystems[0]) out.ids.push_back(t.id);
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < out.ids.size(); ++i) index.emplace(out.ids[i], i);
  for (std::size_t k = 0; k < subsystems.size(); ++k) {
    const auto &sub = subsystems[k];
    if (sub.size() != out.ids.size())
      throw InvalidArgument("fusion: subsystem " + std::to_string(k) +
                            " covers " + std::to_string(sub.size()) +
                            " trials, expected " +
                            std::to_string(out.ids.size()));
    std::vector<double> col(out.ids.size());
    std::vector<bool> filled(out.ids.size(), false);
    for (const auto &t : sub) {
      auto it = index.find(t.id);
      if (it == index.end() || filled[it->second])
        throw InvalidArgument("fusion: subsystem " + std::to_string(k) +
                              " has unexpected id '" + t.id + "'");
      col[it->second] = t.score;
      filled[it->second] = true;
    }
    out.scores.push_back(std::move(col));
  }
  return out;
}

}  // namespace lgpspoof
