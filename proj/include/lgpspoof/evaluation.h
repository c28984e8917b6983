// lgpspoof/evaluation.h

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

#ifndef LGPSPOOF_EVALUATION_H_
#define LGPSPOOF_EVALUATION_H_

#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lgpspoof {

enum class TrialLabel { kBonafide, kSpoof, kUnknown };

TrialLabel ParseTrialLabel(std::string_view s);
const char *TrialLabelName(TrialLabel label);

struct TrialRecord {
  std::string id;
  TrialLabel label = TrialLabel::kUnknown;
  double score = 0.0;
};

/// Countermeasure scores are higher for bona fide speech; a trial is accepted
/// as bona fide when score >= threshold.  Operating points are taken at every
/// distinct score plus +infinity.
struct EerResult {
  double eer = 0.0;
  double threshold = 0.0;
};

/// P_miss rises and P_fa falls along the sorted operating points.  At the
/// first point k with P_miss >= P_fa the two rates are interpolated linearly
/// between points k-1 and k and the crossing gives the EER.
EerResult ComputeEer(std::span<const double> bonafide,
                     std::span<const double> spoof);
EerResult ComputeEer(std::span<const TrialRecord> trials);

/// Tandem (ASV + CM) cost model with fixed ASV error rates.
struct TdcfCostModel {
  double p_target = 0.9405;
  double p_nontarget = 0.0095;
  double p_spoof = 0.05;
  double c_miss_asv = 1.0;
  double c_fa_asv = 10.0;
  double c_miss_cm = 1.0;
  double c_fa_cm = 10.0;
  double p_miss_asv = 0.0;
  double p_fa_asv = 0.0;
  double p_miss_spoof_asv = 0.0;

  /// Throws InvalidArgument for probabilities outside [0, 1], priors that do
  /// not sum to one, non-positive costs, or C1 <= 0 or C2 <= 0.
  void Validate() const;
  double C1() const;
  double C2() const;
};

/// Reads `key = value` lines; keys are the field names above.
TdcfCostModel ReadTdcfConfig(const std::string &path);
TdcfCostModel ParseTdcfConfig(std::string_view text);

struct MinTdcfResult {
  double min_tdcf = 0.0;  // normalized by min(C1, C2)
  double threshold = 0.0;
};

MinTdcfResult ComputeMinTdcf(std::span<const double> bonafide,
                             std::span<const double> spoof,
                             const TdcfCostModel &cost);

// --------------------------------------------------------------- text files

/// `utt_id label` per line.  Five-column lines
/// (`speaker utt_id - attack label`) are also accepted.  Blank lines are
/// skipped, CRLF line ends are accepted, duplicate ids are rejected.
std::vector<TrialRecord> ParseProtocol(std::string_view text);
std::vector<TrialRecord> ReadProtocol(const std::string &path);
std::string FormatProtocol(std::span<const TrialRecord> trials);
void WriteProtocol(const std::string &path,
                   std::span<const TrialRecord> trials);

/// `utt_id score`, scores printed in shortest round-trip form.  The returned
/// records carry TrialLabel::kUnknown.
std::vector<TrialRecord> ParseScores(std::string_view text);
std::vector<TrialRecord> ReadScores(const std::string &path);
std::string FormatScores(std::span<const TrialRecord> trials);
void WriteScores(const std::string &path, std::span<const TrialRecord> trials);

/// Labels every score from the protocol; ids missing from the protocol throw.
std::vector<TrialRecord> AttachLabels(std::span<const TrialRecord> scores,
                                      std::span<const TrialRecord> protocol);

// ------------------------------------------------------------------- fusion

/// fused = sum_k weights[k] * s_k + bias.
struct FusionModel {
  std::vector<double> weights;
  double bias = 0.0;

  std::vector<double> Apply(std::span<const std::vector<double>> scores) const;
};

struct FusionResult {
  FusionModel model;
  /// Simplex weights over dev-z-normalized subsystem scores.
  std::vector<double> simplex_weights;
  double dev_eer = 0.0;
};

/// Fits the fusion on dev scores (one vector per subsystem, same trial
/// order as `labels`).  Each subsystem is z-normalized on dev, weights are
/// searched on the simplex grid of step 0.01 (coarser when the grid would
/// exceed kMaxGridPoints), ties go to the point nearest equal weights, and
/// each coordinate is then refined by golden-section search.  The bias puts
/// the dev EER threshold at zero.
FusionResult FitFusion(std::span<const std::vector<double>> dev_scores,
                       std::span<const TrialLabel> labels);

inline constexpr std::size_t kMaxGridPoints = 200000;

/// Aligns per-subsystem score files by id.  Every subsystem must cover the
/// same id set; the result follows the id order of the first subsystem.
struct AlignedScores {
  std::vector<std::string> ids;
  std::vector<std::vector<double>> scores;  // [subsystem][trial]
};
AlignedScores AlignSubsystems(
    std::span<const std::vector<TrialRecord>> subsystems);

}  // namespace lgpspoof

#endif  // LGPSPOOF_EVALUATION_H_
