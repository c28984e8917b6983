// lgpspoof/lgpspoof.cc

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

// Command-line front end.  Exit codes: 0 success, 2 usage, 3 data, 4 numeric.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lgpspoof/base.h"
#include "lgpspoof/diag_gmm.h"
#include "lgpspoof/evaluation.h"
#include "lgpspoof/frontend.h"
#include "lgpspoof/lgp.h"
#include "lgpspoof/model.h"
#include "lgpspoof/parallel.h"
#include "lgpspoof/run_config.h"
#include "lgpspoof/synthcorpus.h"
#include "lgpspoof/tensor_archive.h"
#include "lgpspoof/training.h"

namespace fs = std::filesystem;

namespace lgpspoof {
namespace {

class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string &what) : std::runtime_error(what) {}
};

int g_workers = 1;

std::string OutputDir(const std::string &flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char *env = std::getenv("LGPSPOOF_OUTPUT_DIR"); env && *env)
    return env;
  throw UsageError("--out is required (or set LGPSPOOF_OUTPUT_DIR)");
}

void MakeDir(const std::string &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir + "': " + ec.message());
}

std::string Join(const std::string &dir, const std::string &name) {
  return (fs::path(dir) / name).string();
}

std::string DefaultFeatures(const std::string &features,
                            const std::string &protocol) {
  if (!features.empty()) return features;
  return (fs::path(protocol).parent_path() / "features").string();
}

RunConfig LoadConfig(const std::string &path) {
  RunConfig cfg = path.empty() ? RunConfig() : RunConfig::Read(path);
  if (cfg.IsDefault("workers")) cfg.Set("workers", std::to_string(g_workers));
  return cfg;
}

TrialLabel ClassLabel(int label) {
  return label == kBonafide ? TrialLabel::kBonafide : TrialLabel::kSpoof;
}

std::vector<PathFrontend> LoadFrontends(
    const std::vector<std::string> &gmms,
    const std::vector<std::string> &stats) {
  if (gmms.size() != stats.size())
    throw UsageError("give one --stats per --gmm");
  std::vector<PathFrontend> out;
  for (std::size_t p = 0; p < gmms.size(); ++p)
    out.push_back({DiagGmm::Read(gmms[p]), LgpNormStats::Read(stats[p])});
  return out;
}

// ---------------------------------------------------------------- commands

struct GenCorpusArgs {
  std::string task, out;
  CorpusSpec spec;
};

void GenCorpus(GenCorpusArgs &a) {
  a.spec.task = ParseCorpusTask(a.task);
  const std::string out = OutputDir(a.out);
  const Corpus corpus = GenerateCorpus(a.spec, g_workers);
  WriteCorpus(corpus, out);
  std::ofstream spec(Join(out, "corpus_spec.txt"));
  spec << "task = " << CorpusTaskName(a.spec.task) << "\n"
       << "dim = " << a.spec.dim << "\n"
       << "train_per_class = " << a.spec.train_per_class << "\n"
       << "dev_per_class = " << a.spec.dev_per_class << "\n"
       << "eval_per_class = " << a.spec.eval_per_class << "\n"
       << "min_frames = " << a.spec.min_frames << "\n"
       << "max_frames = " << a.spec.max_frames << "\n"
       << "seed = " << a.spec.seed << "\n"
       << "shift = " << a.spec.shift << "\n"
       << "noise = " << a.spec.noise << "\n";
  std::cout << "wrote " << corpus.train.Size() + corpus.dev.Size() +
                               corpus.eval.Size()
            << " utterances to " << out << "\n";
}

struct ExtractLfccArgs {
  std::vector<std::string> wavs;
  std::string list, out, config;
};

void ExtractLfccCmd(const ExtractLfccArgs &a) {
  std::vector<std::pair<std::string, std::string>> jobs;  // (id, path)
  for (const auto &w : a.wavs) jobs.emplace_back(fs::path(w).stem().string(), w);
  if (!a.list.empty()) {
    std::ifstream in(a.list);
    if (!in) throw IoError("cannot open '" + a.list + "'");
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::istringstream ss(line);
      std::string id, path, extra;
      if (!(ss >> id)) continue;
      if (!(ss >> path) || (ss >> extra))
        throw FormatError("wav list line " + std::to_string(lineno) +
                          ": expected 'utt_id path'", lineno);
      jobs.emplace_back(id, path);
    }
  }
  if (jobs.empty()) throw UsageError("give --wav or --list");
  const std::string out = OutputDir(a.out);
  MakeDir(out);
  const LfccConfig cfg = LoadConfig(a.config).Lfcc();
  ParallelFor(jobs.size(), g_workers, [&](std::size_t i) {
    StoreFeatures(Join(out, jobs[i].first + ".lgpf"),
                  ExtractLfcc(ReadWav(jobs[i].second), cfg));
  });
  std::cout << "extracted " << jobs.size() << " utterances to " << out << "\n";
}

struct TrainGmmArgs {
  std::string protocol, features, cls = "all", out, config;
  std::optional<std::size_t> components;
  std::optional<int> iterations;
  std::optional<std::uint64_t> seed;
};

void TrainGmmCmd(const TrainGmmArgs &a) {
  const RunConfig rc = LoadConfig(a.config);
  FrontendConfig fc = rc.Frontend();
  if (a.components) fc.order = *a.components;
  if (a.iterations) fc.em.iterations = *a.iterations;
  if (a.seed) fc.em.seed = *a.seed;
  const LabeledDataset data =
      LoadDataset(a.protocol, DefaultFeatures(a.features, a.protocol), "train",
                  g_workers);
  std::vector<FeatureMatrix> utts;
  for (const auto &u : data.utterances) {
    if (a.cls == "all" || (a.cls == "bonafide" && u.label == kBonafide) ||
        (a.cls == "spoof" && u.label == kSpoof))
      utts.push_back(u.features);
  }
  if (utts.empty()) throw InvalidArgument("no training utterances of class " + a.cls);
  EmResult em = TrainEm(PoolFrames(utts), fc.order, fc.em);
  for (std::size_t i = 0; i < em.avg_log_likelihood.size(); ++i)
    std::cout << "iter " << i << " avg_log_likelihood "
              << em.avg_log_likelihood[i] << "\n";
  em.gmm.Write(a.out);
}

struct FitStatsArgs {
  std::string gmm, protocol, features, form = "fast", out;
};

void FitStatsCmd(const FitStatsArgs &a) {
  const DiagGmm gmm = DiagGmm::Read(a.gmm);
  const LabeledDataset data =
      LoadDataset(a.protocol, DefaultFeatures(a.features, a.protocol), "train",
                  g_workers);
  std::vector<FeatureMatrix> utts;
  for (const auto &u : data.utterances) utts.push_back(u.features);
  FitNormStats(gmm, utts, ParseLgpForm(a.form), g_workers).Write(a.out);
}

struct ExtractLgpArgs {
  std::string gmm, stats, protocol, features, out;
};

void ExtractLgpCmd(const ExtractLgpArgs &a) {
  const DiagGmm gmm = DiagGmm::Read(a.gmm);
  const LgpNormStats stats = LgpNormStats::Read(a.stats);
  const auto protocol = ReadProtocol(a.protocol);
  const std::string features = DefaultFeatures(a.features, a.protocol);
  const std::string out = OutputDir(a.out);
  MakeDir(out);
  ParallelFor(protocol.size(), g_workers, [&](std::size_t i) {
    const FeatureMatrix raw = LoadFeatures(Join(features, protocol[i].id + ".lgpf"));
    StoreFeatures(Join(out, protocol[i].id + ".lgpf"),
                  LgpToFrames(ExtractLgp(gmm, stats, raw)));
  });
  std::cout << "wrote " << protocol.size() << " LGP feature files to " << out
            << "\n";
}

struct TrainArgs {
  std::string config, protocol, dev_protocol, features, out;
};

nlohmann::json EpochJson(const EpochRecord &r) {
  nlohmann::json j;
  j["stage"] = r.stage;
  j["epoch"] = r.epoch;
  j["loss"] = r.loss;
  j["dev_eer"] = std::isnan(r.dev_eer) ? nlohmann::json(nullptr)
                                       : nlohmann::json(r.dev_eer);
  return j;
}

void TrainCmd(const TrainArgs &a) {
  RunConfig rc = LoadConfig(a.config);
  const std::string out = OutputDir(a.out);
  MakeDir(out);
  const ClassifierConfig cc = rc.Classifier();
  const TrainConfig tc = rc.Training();
  const std::string features = DefaultFeatures(a.features, a.protocol);
  const LabeledDataset train = LoadDataset(a.protocol, features, "train", g_workers);
  std::optional<LabeledDataset> dev;
  if (!a.dev_protocol.empty())
    dev = LoadDataset(a.dev_protocol, DefaultFeatures(a.features, a.dev_protocol),
                      "dev", g_workers);

  std::vector<PathFrontend> frontends;
  const auto files = rc.FrontendFiles();
  if (!files[0].first.empty()) {
    for (std::size_t p = 0; p < cc.paths; ++p) {
      if (files[p].first.empty() || files[p].second.empty())
        throw InvalidArgument("config: frontend.gmm" + std::to_string(p) +
                              " and frontend.stats" + std::to_string(p) +
                              " must both be set");
      frontends.push_back({DiagGmm::Read(files[p].first),
                           LgpNormStats::Read(files[p].second)});
    }
  } else {
    frontends = TrainFrontends(train, cc.paths, rc.Frontend());
    for (std::size_t p = 0; p < cc.paths; ++p) {
      const std::string g = Join(out, "gmm" + std::to_string(p) + ".lgpn");
      const std::string s = Join(out, "stats" + std::to_string(p) + ".lgpn");
      frontends[p].gmm.Write(g);
      frontends[p].stats.Write(s);
      rc.Set("frontend.gmm" + std::to_string(p), g);
      rc.Set("frontend.stats" + std::to_string(p), s);
    }
  }
  rc.WriteResolved(Join(out, "resolved_config.cfg"));

  std::ofstream metrics(Join(out, "metrics.jsonl"));
  if (!metrics) throw IoError("cannot write metrics to " + out);
  auto on_epoch = [&](const EpochRecord &r) {
    const std::string line = EpochJson(r).dump();
    std::cout << line << "\n" << std::flush;
    metrics << line << "\n" << std::flush;
  };
  SpoofModel model =
      SpoofModel::Create(cc, frontends, DeriveSeed(rc.GetSize("seed"), 2));
  const LabeledDataset *dev_ptr = dev ? &*dev : nullptr;
  SpoofModel trained;
  double best = NAN;
  std::size_t best_epoch = 0;
  if (rc.Get("train.scheme") == "two-step") {
    TwoStepResult r = TrainTwoStep(model, train, dev_ptr, tc, on_epoch);
    trained = std::move(r.model);
    best = r.best_dev_eer;
    best_epoch = r.best_epoch;
  } else {
    TrainResult r = TrainEndToEnd(std::move(model), train, dev_ptr, tc, on_epoch);
    trained = std::move(r.model);
    best = r.best_dev_eer;
    best_epoch = r.best_epoch;
  }
  trained.ToArchive().Write(Join(out, "model.lgpn"));
  std::cout << "selected epoch " << best_epoch;
  if (!std::isnan(best)) std::cout << " (dev EER " << best << ")";
  std::cout << "; model written to " << Join(out, "model.lgpn") << "\n";
}

struct ScoreArgs {
  std::string model, config, protocol, features, out;
  std::vector<std::string> gmms, stats;
  bool llr = false;
};

void ScoreCmd(const ScoreArgs &a) {
  const auto protocol = ReadProtocol(a.protocol);
  const std::string features = DefaultFeatures(a.features, a.protocol);
  std::vector<TrialRecord> scores(protocol.size());
  if (a.llr) {
    if (a.gmms.size() != 2)
      throw UsageError("--llr needs --gmm <bonafide GMM> --gmm <spoof GMM>");
    const DiagGmm bona = DiagGmm::Read(a.gmms[0]), spoof = DiagGmm::Read(a.gmms[1]);
    ParallelFor(protocol.size(), g_workers, [&](std::size_t i) {
      scores[i] = {protocol[i].id, TrialLabel::kUnknown,
                   LlrScore(bona, spoof,
                            LoadFeatures(Join(features, protocol[i].id + ".lgpf")))};
    });
  } else {
    if (a.model.empty()) throw UsageError("--model is required unless --llr");
    std::vector<std::string> gmms = a.gmms, stats = a.stats;
    if (gmms.empty() && !a.config.empty()) {
      const RunConfig rc = RunConfig::Read(a.config);
      for (const auto &[g, s] : rc.FrontendFiles())
        if (!g.empty()) {
          gmms.push_back(g);
          stats.push_back(s);
        }
    }
    if (gmms.empty())
      throw UsageError("give --gmm/--stats or --config naming the frontends");
    const TensorArchive ar = TensorArchive::Read(a.model);
    const std::size_t paths = static_cast<std::size_t>(ar.GetScalar("config.paths"));
    if (gmms.size() > paths) {
      gmms.resize(paths);
      stats.resize(paths);
    }
    const SpoofModel model = SpoofModel::FromArchive(ar, LoadFrontends(gmms, stats));
    ParallelFor(protocol.size(), g_workers, [&](std::size_t i) {
      scores[i] = {protocol[i].id, TrialLabel::kUnknown,
                   ScoreUtterance(model, LoadFeatures(Join(
                                             features, protocol[i].id + ".lgpf")))};
    });
  }
  if (a.out.empty())
    std::cout << FormatScores(scores);
  else
    WriteScores(a.out, scores);
}

struct EvaluateArgs {
  std::string scores, protocol, tdcf_config, out;
};

void EvaluateCmd(const EvaluateArgs &a) {
  const auto trials = AttachLabels(ReadScores(a.scores), ReadProtocol(a.protocol));
  const EerResult eer = ComputeEer(trials);
  char buf[256];
  std::string report;
  std::snprintf(buf, sizeof(buf), "EER %.4f (%.2f %%)\nthreshold %.6g\n", eer.eer,
                100.0 * eer.eer, eer.threshold);
  report += buf;
  if (!a.tdcf_config.empty()) {
    std::vector<double> b, s;
    for (const auto &t : trials) (t.label == TrialLabel::kBonafide ? b : s).push_back(t.score);
    const MinTdcfResult m = ComputeMinTdcf(b, s, ReadTdcfConfig(a.tdcf_config));
    std::snprintf(buf, sizeof(buf), "min-tDCF %.4f\n", m.min_tdcf);
    report += buf;
  }
  std::cout << report;
  if (!a.out.empty()) {
    std::ofstream out(a.out);
    if (!out) throw IoError("cannot write '" + a.out + "'");
    out << report;
  }
}

struct FuseArgs {
  std::vector<std::string> dev, eval;
  std::string protocol, eval_protocol, out;
};

void FuseCmd(const FuseArgs &a) {
  if (a.dev.size() != a.eval.size())
    throw UsageError("give the same number of --dev and --eval score files");
  std::vector<std::vector<TrialRecord>> dev_sets, eval_sets;
  for (const auto &f : a.dev) dev_sets.push_back(ReadScores(f));
  for (const auto &f : a.eval) eval_sets.push_back(ReadScores(f));
  const AlignedScores dev = AlignSubsystems(dev_sets);
  const AlignedScores eval = AlignSubsystems(eval_sets);
  std::vector<TrialRecord> id_only;
  for (const auto &id : dev.ids) id_only.push_back({id, TrialLabel::kUnknown, 0.0});
  const auto labeled = AttachLabels(id_only, ReadProtocol(a.protocol));
  std::vector<TrialLabel> labels;
  for (const auto &t : labeled) labels.push_back(t.label);
  const FusionResult fit = FitFusion(dev.scores, labels);
  for (std::size_t k = 0; k < fit.model.weights.size(); ++k)
    std::cout << "weight " << k << " " << fit.model.weights[k] << "\n";
  std::cout << "bias " << fit.model.bias << "\n";
  std::cout << "dev EER " << fit.dev_eer << "\n";
  const std::vector<double> fused = fit.model.Apply(eval.scores);
  std::vector<TrialRecord> out;
  for (std::size_t i = 0; i < fused.size(); ++i)
    out.push_back({eval.ids[i], TrialLabel::kUnknown, fused[i]});
  if (!a.eval_protocol.empty())
    std::cout << "eval EER "
              << ComputeEer(AttachLabels(out, ReadProtocol(a.eval_protocol))).eer
              << "\n";
  if (a.out.empty())
    std::cout << FormatScores(out);
  else
    WriteScores(a.out, out);
}

int Run(int argc, char **argv) {
  CLI::App app{"GMM log Gaussian probability features and GMM-ResNet/SENet "
               "spoofing countermeasures"};
  app.set_version_flag("--version",
                       std::string("lgpspoof ") + kToolkitVersion +
                           " (tensor container LGPN v" +
                           std::to_string(TensorArchive::kVersion) +
                           ", features LGPF v" +
                           std::to_string(kFeatureFormatVersion) + ")");
  app.add_option("--workers", g_workers, "worker threads")
      ->check(CLI::PositiveNumber);
  app.require_subcommand(1);

  GenCorpusArgs gc;
  auto *gen = app.add_subcommand("gen-corpus", "write a synthetic corpus");
  gen->add_option("--task", gc.task, "marginal-shift | order-only")->required();
  gen->add_option("--out", gc.out, "output directory");
  gen->add_option("--seed", gc.spec.seed, "generator seed");
  gen->add_option("--dim", gc.spec.dim, "frame dimension");
  gen->add_option("--train-per-class", gc.spec.train_per_class);
  gen->add_option("--dev-per-class", gc.spec.dev_per_class);
  gen->add_option("--eval-per-class", gc.spec.eval_per_class);
  gen->add_option("--min-frames", gc.spec.min_frames);
  gen->add_option("--max-frames", gc.spec.max_frames);
  gen->add_option("--shift", gc.spec.shift, "marginal-shift mean offset");
  gen->add_option("--noise", gc.spec.noise, "order-only noise level");

  ExtractLfccArgs el;
  auto *lfcc = app.add_subcommand("extract-lfcc", "LFCC features from WAV files");
  lfcc->add_option("--wav", el.wavs, "16-bit PCM mono WAV (repeatable)");
  lfcc->add_option("--list", el.list, "file of 'utt_id path' lines");
  lfcc->add_option("--out", el.out, "output directory");
  lfcc->add_option("--config", el.config, "run configuration (lfcc.* keys)");

  TrainGmmArgs tg;
  auto *tgmm = app.add_subcommand("train-gmm", "EM-train a diagonal GMM");
  tgmm->add_option("--protocol", tg.protocol)->required();
  tgmm->add_option("--features", tg.features, "feature directory");
  tgmm->add_option("--class", tg.cls, "bonafide | spoof | all")
      ->check(CLI::IsMember({"bonafide", "spoof", "all"}));
  tgmm->add_option("--components", tg.components, "mixture components");
  tgmm->add_option("--iterations", tg.iterations);
  tgmm->add_option("--seed", tg.seed);
  tgmm->add_option("--config", tg.config);
  tgmm->add_option("--out", tg.out, "GMM file")->required();

  FitStatsArgs fs_args;
  auto *fit = app.add_subcommand("fit-lgp-stats", "LGP normalization statistics");
  fit->add_option("--gmm", fs_args.gmm)->required();
  fit->add_option("--protocol", fs_args.protocol)->required();
  fit->add_option("--features", fs_args.features);
  fit->add_option("--form", fs_args.form, "fast | full")
      ->check(CLI::IsMember({"fast", "full"}));
  fit->add_option("--out", fs_args.out, "statistics file")->required();

  ExtractLgpArgs lg;
  auto *elgp = app.add_subcommand("extract-lgp", "write normalized LGP features");
  elgp->add_option("--gmm", lg.gmm)->required();
  elgp->add_option("--stats", lg.stats)->required();
  elgp->add_option("--protocol", lg.protocol)->required();
  elgp->add_option("--features", lg.features);
  elgp->add_option("--out", lg.out, "output directory");

  TrainArgs tr;
  auto *train = app.add_subcommand("train", "train a GMM-ResNet/SENet model");
  train->add_option("--config", tr.config, "run configuration")->required();
  train->add_option("--protocol", tr.protocol, "training protocol")->required();
  train->add_option("--dev-protocol", tr.dev_protocol, "development protocol");
  train->add_option("--features", tr.features, "feature directory");
  train->add_option("--out", tr.out, "output directory");

  ScoreArgs sc;
  auto *score = app.add_subcommand("score", "score utterances");
  score->add_option("--model", sc.model, "model checkpoint");
  score->add_option("--config", sc.config, "resolved config naming the frontends");
  score->add_option("--gmm", sc.gmms, "GMM per path (repeatable)");
  score->add_option("--stats", sc.stats, "LGP statistics per path (repeatable)");
  score->add_flag("--llr", sc.llr, "GMM log-likelihood-ratio baseline");
  score->add_option("--protocol", sc.protocol)->required();
  score->add_option("--features", sc.features);
  score->add_option("--out", sc.out, "score file (default: stdout)");

  EvaluateArgs ev;
  auto *eval = app.add_subcommand("evaluate", "EER and min t-DCF");
  eval->add_option("--scores", ev.scores)->required();
  eval->add_option("--protocol", ev.protocol)->required();
  eval->add_option("--tdcf-config", ev.tdcf_config, "t-DCF cost model");
  eval->add_option("--out", ev.out, "metrics file");

  FuseArgs fu;
  auto *fuse = app.add_subcommand("fuse", "linear score fusion fitted on dev");
  fuse->add_option("--dev", fu.dev, "dev score files")->required();
  fuse->add_option("--eval", fu.eval, "eval score files")->required();
  fuse->add_option("--protocol", fu.protocol, "dev protocol")->required();
  fuse->add_option("--eval-protocol", fu.eval_protocol, "eval protocol (report)");
  fuse->add_option("--out", fu.out, "fused eval scores (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) GenCorpus(gc);
    else if (lfcc->parsed()) ExtractLfccCmd(el);
    else if (tgmm->parsed()) TrainGmmCmd(tg);
    else if (fit->parsed()) FitStatsCmd(fs_args);
    else if (elgp->parsed()) ExtractLgpCmd(lg);
    else if (train->parsed()) TrainCmd(tr);
    else if (score->parsed()) ScoreCmd(sc);
    else if (eval->parsed()) EvaluateCmd(ev);
    else if (fuse->parsed()) FuseCmd(fu);
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << "\n"
              << app.get_subcommands().front()->help();
    return 2;
  } catch (const NumericError &e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 4;
  } catch (const InvalidArgument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const IoError &e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 3;
  } catch (const FormatError &e) {
    std::cerr << "format error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace
}  // namespace lgpspoof

int main(int argc, char **argv) { return lgpspoof::Run(argc, argv); }
