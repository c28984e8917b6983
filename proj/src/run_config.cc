// lgpspoof/run_config.cc

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

#include "lgpspoof/run_config.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lgpspoof/base.h"

namespace lgpspoof {

namespace {

constexpr ConfigKey kKeys[] = {
    {"seed", "int", "0", "root seed; every random stream is derived from it"},
    {"workers", "int", "1", "worker threads (1 is the reference path)"},
    {"gmm.order", "int", "512", "mixture components M"},
    {"gmm.iterations", "int", "30", "EM iterations"},
    {"gmm.variance_floor", "real", "0.001", "variance floor / global variance"},
    {"lgp.form", "fast|full", "fast", "LGP feature form"},
    {"model.paths", "int", "1", "1 or 2 classifier paths"},
    {"model.channels", "int", "512", "convolution channels"},
    {"model.blocks", "int", "6", "res blocks per path"},
    {"model.se", "bool", "false", "squeeze-excitation in every res block"},
    {"model.se_reduction", "int", "16", "SE bottleneck reduction"},
    {"model.input_length", "int", "400", "training segment length N"},
    {"train.scheme", "end-to-end|two-step", "end-to-end", "training scheme"},
    {"train.batch_size", "int", "32", "minibatch size"},
    {"train.epochs", "int", "100", "epochs (per path for two-step)"},
    {"train.fusion_epochs", "int", "0", "two-step fusion epochs; 0 = epochs"},
    {"train.lr", "real", "0.0001", "Adam learning rate"},
    {"lfcc.window_ms", "real", "20", "analysis window"},
    {"lfcc.hop_ms", "real", "10", "frame shift"},
    {"lfcc.fft_size", "int", "512", "FFT length"},
    {"lfcc.filters", "int", "20", "linear triangular filters"},
    {"lfcc.ceps", "int", "20", "cepstral coefficients"},
    {"lfcc.delta_window", "int", "2", "delta regression half-window"},
    {"lfcc.deltas", "bool", "true", "append deltas and delta-deltas"},
    {"frontend.gmm0", "string", "", "GMM of path 0"},
    {"frontend.stats0", "string", "", "LGP statistics of path 0"},
    {"frontend.gmm1", "string", "", "GMM of path 1 (spoof GMM)"},
    {"frontend.stats1", "string", "", "LGP statistics of path 1"},
};

const ConfigKey *FindKey(std::string_view name) {
  for (const auto &k : kKeys)
    if (name == k.name) return &k;
  return nullptr;
}

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool ParseSize(const std::string &v, std::size_t *out) {
  const auto r = std::from_chars(v.data(), v.data() + v.size(), *out);
  return r.ec == std::errc() && r.ptr == v.data() + v.size();
}

bool ParseReal(const std::string &v, double *out) {
  const auto r = std::from_chars(v.data(), v.data() + v.size(), *out);
  return r.ec == std::errc() && r.ptr == v.data() + v.size() &&
         std::isfinite(*out);
}

void CheckValue(const ConfigKey &key, const std::string &value) {
  const std::string type = key.type;
  bool ok = true;
  if (type == "int") {
    std::size_t v;
    ok = ParseSize(value, &v);
  } else if (type == "real") {
    double v;
    ok = ParseReal(value, &v);
  } else if (type == "bool") {
    ok = value == "true" || value == "false";
  } else if (type != "string") {
    ok = false;
    std::string_view choices = type;
    while (!choices.empty()) {
      const auto bar = choices.find('|');
      if (choices.substr(0, bar) == value) ok = true;
      if (bar == std::string_view::npos) break;
      choices.remove_prefix(bar + 1);
    }
  }
  if (!ok)
    throw InvalidArgument("config: '" + value + "' is not a valid " + type +
                          " for " + key.name);
}

}  // namespace

std::span<const ConfigKey> KeyTable() { return kKeys; }

RunConfig::RunConfig() {
  for (const auto &k : kKeys) {
    values_[k.name] = k.default_value;
    explicit_[k.name] = false;
  }
}

RunConfig RunConfig::Parse(std::string_view text) {
  RunConfig cfg;
  std::size_t lineno = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (Trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw FormatError("config line " + std::to_string(lineno) +
                        ": expected key = value", lineno);
    const std::string key = Trim(std::string_view(line).substr(0, eq));
    const std::string value = Trim(std::string_view(line).substr(eq + 1));
    if (!FindKey(key))
      throw FormatError("config line " + std::to_string(lineno) +
                        ": unknown key '" + key + "'", lineno);
    if (cfg.explicit_[key])
      throw FormatError("config line " + std::to_string(lineno) + ": key '" +
                        key + "' given twice", lineno);
    try {
      cfg.Set(key, value);
    } catch (const InvalidArgument &e) {
      throw FormatError("config line " + std::to_string(lineno) + ": " +
                        e.what(), lineno);
    }
  }
  return cfg;
}

RunConfig RunConfig::Read(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return Parse(ss.str());
}

void RunConfig::Set(const std::string &key, const std::string &value) {
  const ConfigKey *k = FindKey(key);
  if (!k) throw InvalidArgument("config: unknown key '" + key + "'");
  CheckValue(*k, value);
  values_[key] = value;
  explicit_[key] = true;
}

const std::string &RunConfig::Get(const std::string &key) const {
  auto it = values_.find(key);
  if (it == values_.end())
    throw InvalidArgument("config: unknown key '" + key + "'");
  return it->second;
}

bool RunConfig::IsDefault(const std::string &key) const {
  Get(key);
  return !explicit_.at(key);
}

std::size_t RunConfig::GetSize(const std::string &key) const {
  std::size_t v = 0;
  ParseSize(Get(key), &v);
  return v;
}

double RunConfig::GetReal(const std::string &key) const {
  double v = 0.0;
  ParseReal(Get(key), &v);
  return v;
}

bool RunConfig::GetBool(const std::string &key) const {
  return Get(key) == "true";
}

std::string RunConfig::Resolved() const {
  std::string out = "# lgpspoof " + std::string(kToolkitVersion) +
                    " resolved configuration\n";
  for (const auto &k : kKeys) out += std::string(k.name) + " = " + Get(k.name) + "\n";
  return out;
}

void RunConfig::WriteResolved(const std::string &path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << Resolved();
  if (!out) throw IoError("write to '" + path + "' failed");
}

FrontendConfig RunConfig::Frontend() const {
  FrontendConfig f;
  f.order = GetSize("gmm.order");
  f.em.iterations = static_cast<int>(GetSize("gmm.iterations"));
  f.em.variance_floor_ratio = GetReal("gmm.variance_floor");
  f.em.seed = DeriveSeed(GetSize("seed"), 1);
  f.em.workers = static_cast<int>(std::max<std::size_t>(1, GetSize("workers")));
  f.form = ParseLgpForm(Get("lgp.form"));
  if (f.order == 0) throw InvalidArgument("config: gmm.order must be >= 1");
  return f;
}

ClassifierConfig RunConfig::Classifier() const {
  ClassifierConfig c;
  c.input_dim = GetSize("gmm.order");
  c.channels = GetSize("model.channels");
  c.blocks = GetSize("model.blocks");
  c.se_enabled = GetBool("model.se");
  c.se_reduction = GetSize("model.se_reduction");
  c.input_length = GetSize("model.input_length");
  c.paths = GetSize("model.paths");
  c.Validate();
  return c;
}

TrainConfig RunConfig::Training() const {
  TrainConfig t;
  t.batch_size = GetSize("train.batch_size");
  t.epochs = GetSize("train.epochs");
  t.fusion_epochs = GetSize("train.fusion_epochs");
  t.lr = GetReal("train.lr");
  t.seed = DeriveSeed(GetSize("seed"), 3);
  t.target_length = GetSize("model.input_length");
  t.workers = static_cast<int>(std::max<std::size_t>(1, GetSize("workers")));
  t.Validate();
  return t;
}

LfccConfig RunConfig::Lfcc() const {
  LfccConfig l;
  l.window_ms = GetReal("lfcc.window_ms");
  l.hop_ms = GetReal("lfcc.hop_ms");
  l.fft_size = GetSize("lfcc.fft_size");
  l.num_filters = GetSize("lfcc.filters");
  l.num_ceps = GetSize("lfcc.ceps");
  l.delta_window = GetSize("lfcc.delta_window");
  l.include_deltas = GetBool("lfcc.deltas");
  return l;
}

std::vector<std::pair<std::string, std::string>> RunConfig::FrontendFiles()
    const {
  return {{Get("frontend.gmm0"), Get("frontend.stats0")},
          {Get("frontend.gmm1"), Get("frontend.stats1")}};
}

}  // namespace lgpspoof
