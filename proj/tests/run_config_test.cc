// lgpspoof/run_config_test.cc

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

#include <string>

#include <gtest/gtest.h>

#include "lgpspoof/base.h"
#include "lgpspoof/run_config.h"

namespace lgpspoof {
namespace {

TEST(RunConfig, DefaultsMatchComponentDefaults) {
  const RunConfig c;
  EXPECT_EQ(c.Classifier().channels, ClassifierConfig().channels);
  EXPECT_EQ(c.Classifier().blocks, ClassifierConfig().blocks);
  EXPECT_EQ(c.Frontend().order, FrontendConfig().order);
  EXPECT_EQ(c.Training().lr, TrainConfig().lr);
  EXPECT_EQ(c.Training().batch_size, TrainConfig().batch_size);
  EXPECT_EQ(c.Lfcc().num_ceps, LfccConfig().num_ceps);
  for (const ConfigKey &k : KeyTable()) EXPECT_TRUE(c.IsDefault(k.name)) << k.name;
}

TEST(RunConfig, ParsesValues) {
  const RunConfig c = RunConfig::Parse(
      "# desk run\n"
      "gmm.order = 8   # small\n"
      "model.se=true\r\n"
      "\n"
      "train.lr = 1e-3\n"
      "lgp.form = full\n");
  EXPECT_EQ(c.Frontend().order, 8u);
  EXPECT_EQ(c.Classifier().input_dim, 8u);
  EXPECT_TRUE(c.Classifier().se_enabled);
  EXPECT_EQ(c.Training().lr, 1e-3);
  EXPECT_EQ(c.Frontend().form, LgpForm::kFull);
  EXPECT_FALSE(c.IsDefault("gmm.order"));
  EXPECT_TRUE(c.IsDefault("model.blocks"));
}

TEST(RunConfig, ErrorsCarryLineNumbers) {
  auto line_of = [](const std::string &text) -> std::string {
    try {
      RunConfig::Parse(text);
    } catch (const FormatError &e) {
      return e.what();
    }
    return "";
  };
  EXPECT_NE(line_of("seed = 1\ngmm.ordr = 8\n").find("2"), std::string::npos);
  EXPECT_NE(line_of("seed = 1\n\nseed = 2\n").find("3"), std::string::npos);
  EXPECT_NE(line_of("model.se = maybe\n").find("1"), std::string::npos);
  EXPECT_FALSE(line_of("train.epochs = -3\n").empty());
  EXPECT_FALSE(line_of("train.scheme = three-step\n").empty());
  EXPECT_FALSE(line_of("just words\n").empty());
  RunConfig c;
  EXPECT_THROW(c.Set("gmm.order", "1.5"), InvalidArgument);
  EXPECT_THROW(c.Set("nope", "1"), InvalidArgument);
}

TEST(RunConfig, ResolvedRoundTrip) {
  RunConfig c = RunConfig::Parse("model.paths = 2\ntrain.lr = 0.000123\nseed = 99\n");
  const RunConfig back = RunConfig::Parse(c.Resolved());
  for (const ConfigKey &k : KeyTable()) EXPECT_EQ(back.Get(k.name), c.Get(k.name)) << k.name;
  EXPECT_EQ(back.Resolved(), c.Resolved());
}

TEST(RunConfig, DerivedSeedsDiffer) {
  const RunConfig c = RunConfig::Parse("seed = 5\n");
  EXPECT_NE(c.Frontend().em.seed, c.Training().seed);
  EXPECT_EQ(c.Frontend().em.seed, RunConfig::Parse("seed = 5\n").Frontend().em.seed);
}

}  // namespace
}  // namespace lgpspoof
