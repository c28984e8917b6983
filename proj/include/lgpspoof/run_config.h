// lgpspoof/run_config.h

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

#ifndef LGPSPOOF_RUN_CONFIG_H_
#define LGPSPOOF_RUN_CONFIG_H_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lgpspoof/frontend.h"
#include "lgpspoof/model.h"
#include "lgpspoof/training.h"

namespace lgpspoof {

/*
  Run configuration: one `key = value` pair per line, `#` starts a comment.
  Keys are dotted (gmm.order, model.channels, train.lr, ...); KeyTable() lists
  every key with its type and default.  Unknown keys and ill-typed values are
  rejected with the offending line number.  Resolved() prints every key,
  including defaults, in a form that Parse() reads back to the same config.
*/

struct ConfigKey {
  const char *name;
  const char *type;  // int, real, bool, string or a|b|c choice list
  const char *default_value;
  const char *help;
};

std::span<const ConfigKey> KeyTable();

class RunConfig {
 public:
  RunConfig();  // every key at its default

  static RunConfig Parse(std::string_view text);
  static RunConfig Read(const std::string &path);

  /// Validates the value against the key's type.  Throws InvalidArgument.
  void Set(const std::string &key, const std::string &value);
  const std::string &Get(const std::string &key) const;
  bool IsDefault(const std::string &key) const;

  std::size_t GetSize(const std::string &key) const;
  double GetReal(const std::string &key) const;
  bool GetBool(const std::string &key) const;

  std::string Resolved() const;
  void WriteResolved(const std::string &path) const;

  FrontendConfig Frontend() const;
  ClassifierConfig Classifier() const;
  TrainConfig Training() const;
  LfccConfig Lfcc() const;

  /// Frontend file pairs (GMM, stats) named by frontend.gmm0/stats0 and
  /// frontend.gmm1/stats1; empty strings when not set.
  std::vector<std::pair<std::string, std::string>> FrontendFiles() const;

 private:
  std::map<std::string, std::string> values_;
  std::map<std::string, bool> explicit_;
};

}  // namespace lgpspoof

#endif  // LGPSPOOF_RUN_CONFIG_H_
