// Copyright 2026 The Controversy Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "controversy/model_io.h"

#include <vector>

#include <gtest/gtest.h>

#include "controversy/errors.h"
#include "controversy/random.h"
#include "test_util.h"

namespace controversy {
namespace {

Dataset Noisy(std::uint64_t seed, int rows) {
  Rng rng(seed);
  Dataset d;
  d.feature_names = {"a", "b", "c"};
  for (int i = 0; i < rows; ++i) {
    const int y = static_cast<int>(uniform_index(rng, 2));
    d.rows.push_back({y + uniform01(rng), uniform01(rng) * 3,
                      static_cast<double>(uniform_index(rng, 4))});
    d.labels.push_back(y);
  }
  return d;
}

TEST(ModelIo, EveryAlgorithmRoundTripsExactly) {
  const Dataset d = Noisy(1, 120);
  testing::TempDir dir;
  for (Algorithm a : {Algorithm::kLogReg, Algorithm::kKnn,
                      Algorithm::kDecisionTree, Algorithm::kGbdt,
                      Algorithm::kGbdtGossEfb}) {
    LearnerConfig config;
    config.seed = 5;
    const Model m = train(a, d, config);
    const std::string path = dir.file(std::string(algorithm_name(a)) + ".json");
    save_model(m, path);
    const Model back = load_model(path);
    EXPECT_EQ(back.algorithm, m.algorithm);
    EXPECT_EQ(back.feature_names, m.feature_names);
    EXPECT_EQ(back.config_hash, m.config_hash);
    EXPECT_EQ(back.seed, m.seed);
    const auto p1 = predict(m, d);
    const auto p2 = predict(back, d);
    for (std::size_t i = 0; i < p1.size(); ++i) {
      EXPECT_EQ(p1[i].score, p2[i].score) << algorithm_name(a);
    }
    EXPECT_EQ(model_to_json(back).dump(), model_to_json(m).dump());
  }
}

TEST(ModelIo, ConfigHashFollowsConfig) {
  const Dataset d = Noisy(2, 80);
  LearnerConfig a;
  LearnerConfig b;
  b.gbdt.num_trees = 10;
  const Model ma = train(Algorithm::kGbdt, d, a);
  const Model mb = train(Algorithm::kGbdt, d, b);
  EXPECT_NE(ma.config_hash, mb.config_hash);
  EXPECT_EQ(ma.config_hash, fnv1a_hex(ma.config_json));
}

TEST(ModelIo, LearnerConfigRoundTrip) {
  LearnerConfig c;
  c.gbdt.goss_a = 0.3;
  c.knn.k = 7;
  c.seed = 99;
  const LearnerConfig back = learner_config_from_json(to_json(c));
  EXPECT_EQ(to_json(back), to_json(c));
}

TEST(ModelIo, ConfigRejectsUnknownAndInvalid) {
  EXPECT_THROW(gbdt_config_from_json({{"trees", 5}}), ConfigError);
  EXPECT_THROW(gbdt_config_from_json({{"goss_a", 0.9}, {"goss_b", 0.9}}),
               ConfigError);
  EXPECT_THROW(learner_config_from_json({{"svm", {}}}), ConfigError);
  EXPECT_EQ(gbdt_config_from_json({{"num_trees", 5}}).num_trees, 5);
}

TEST(ModelIo, MalformedDocumentsAreDataErrors) {
  const Model m = train(Algorithm::kDecisionTree, Noisy(3, 50));
  nlohmann::json j = model_to_json(m);
  EXPECT_EQ(j["format"], "controversy-model");
  nlohmann::json bad = j;
  bad["format"] = "other";
  EXPECT_THROW(model_from_json(bad), DataError);
  bad = j;
  bad["algorithm"] = "svm";
  EXPECT_THROW(model_from_json(bad), DataError);
  bad = j;
  nlohmann::json &root = bad["params"]["trees"][0].is_array()
                             ? bad["params"]["trees"][0][0]
                             : bad["params"]["trees"][0]["nodes"][0];
  root["left"] = 1000;
  EXPECT_THROW(model_from_json(bad), DataError);
  EXPECT_THROW(load_model("/nonexistent/model.json"), DataError);
}

}  // namespace
}  // namespace controversy
