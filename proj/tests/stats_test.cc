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

#include "controversy/stats.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "controversy/errors.h"
#include "controversy/random.h"
#include "oracles.h"

namespace controversy {
namespace {

std::vector<double> Sample(Rng &rng, int n, double shift) {
  std::vector<double> v(n);
  for (double &x : v) {
    x = std::floor(20 * uniform01(rng)) / 4 + shift;  // ties are common
  }
  return v;
}

TEST(Ks, Examples) {
  const std::vector<double> a = {1, 2, 3};
  const std::vector<double> b = {1, 2, 3, 1000};
  EXPECT_EQ(ks_two_sample(a, b).statistic, 0.25);
  const KsResult same = ks_two_sample(a, a);
  EXPECT_EQ(same.statistic, 0.0);
  EXPECT_EQ(same.p_value, 1.0);
  const std::vector<double> zeros = {0, 0, 0};
  const std::vector<double> ones = {1, 1, 1};
  EXPECT_EQ(ks_two_sample(zeros, ones).statistic, 1.0);
}

TEST(Ks, MatchesBruteForceEcdf) {
  Rng rng(10);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = Sample(rng, 1 + uniform_index(rng, 200), 0);
    const auto b = Sample(rng, 1 + uniform_index(rng, 200), 0.5 * uniform01(rng));
    const KsResult r = ks_two_sample(a, b);
    EXPECT_NEAR(r.statistic, testing::OracleKs(a, b), 1e-12);
    EXPECT_EQ(r.n1, static_cast<int>(a.size()));
    EXPECT_GE(r.p_value, 0.0);
    EXPECT_LE(r.p_value, 1.0);
  }
}

TEST(Ks, SymmetricAndMonotoneInvariant) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = Sample(rng, 40, 0);
    auto b = Sample(rng, 60, 0.3);
    const double d = ks_two_sample(a, b).statistic;
    EXPECT_EQ(ks_two_sample(b, a).statistic, d);
    for (double &x : a) x = std::exp(x) * 3 - 1;
    for (double &x : b) x = std::exp(x) * 3 - 1;
    EXPECT_EQ(ks_two_sample(a, b).statistic, d);
  }
}

TEST(Ks, PValueFromKolmogorovDistribution) {
  EXPECT_NEAR(kolmogorov_q(1.36), 0.0494, 5e-4);
  EXPECT_NEAR(kolmogorov_q(1.0), 0.27, 5e-4);
  EXPECT_NEAR(kolmogorov_q(0.5), 0.9639, 5e-4);
  EXPECT_EQ(kolmogorov_q(0.0), 1.0);
  // Continuity across the series switch.
  EXPECT_NEAR(kolmogorov_q(1.18 - 1e-9), kolmogorov_q(1.18 + 1e-9), 1e-7);
}

TEST(Ks, RejectsEmptyOrNonFinite) {
  const std::vector<double> a = {1};
  const std::vector<double> none;
  const std::vector<double> nan = {NAN};
  EXPECT_THROW(ks_two_sample(a, none), std::invalid_argument);
  EXPECT_THROW(ks_two_sample(a, nan), std::invalid_argument);
}

TEST(KsTable, PairsInSortedOrder) {
  std::vector<FeatureVector> rows(6);
  std::vector<std::string> groups = {"b", "a", "c", "a", "b", "c"};
  for (int i = 0; i < 6; ++i) rows[i].values[11] = i;
  const std::vector<int> feats = {11};
  const std::vector<KsRow> table = ks_table(rows, groups, feats);
  ASSERT_EQ(table.size(), 3u);
  EXPECT_EQ(table[0].group_a, "a");
  EXPECT_EQ(table[0].group_b, "b");
  EXPECT_EQ(table[2].group_a, "b");
  EXPECT_EQ(table[2].group_b, "c");
  EXPECT_EQ(table[0].feature, "p_a");
  std::ostringstream csv;
  write_ks_csv(csv, table);
  EXPECT_NE(csv.str().find("p_a"), std::string::npos);
  EXPECT_EQ(ks_to_json(table).size(), 3u);
}

Dataset Informative(std::uint64_t seed, bool duplicate) {
  Rng rng(seed);
  Dataset d;
  d.feature_names = {"signal", "noise", "constant"};
  if (duplicate) d.feature_names.push_back("signal_copy");
  for (int i = 0; i < 300; ++i) {
    const int y = static_cast<int>(uniform_index(rng, 2));
    const double s = y + 0.9 * (uniform01(rng) - 0.5);
    std::vector<double> row = {s, uniform01(rng), 4.0};
    if (duplicate) row.push_back(s);
    d.rows.push_back(row);
    d.labels.push_back(y);
  }
  return d;
}

TEST(PermutationImportance, LabelCopyRanksFirstAndConstantIsZero) {
  Dataset d = Informative(1, false);
  for (int i = 0; i < d.num_rows(); ++i) d.rows[i][0] = d.labels[i];
  const Model m = train(Algorithm::kDecisionTree, d);
  const ImportanceReport r = permutation_importance(m, d, 10, 3);
  EXPECT_EQ(r.top_feature(), "signal");
  EXPECT_GT(r.scores[0], r.scores[1]);
  EXPECT_GT(r.scores[0], r.scores[2]);
  EXPECT_EQ(r.scores[2], 0.0);
  EXPECT_EQ(r.repeats, 10);
  EXPECT_EQ(r.baseline_accuracy, 1.0);
  std::vector<int> sorted = r.ranking;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, (std::vector<int>{0, 1, 2}));
}

TEST(PermutationImportance, DuplicatedColumnsShareImportance) {
  const Dataset alone = Informative(2, false);
  const Dataset twin = Informative(2, true);
  const Model ma = train(Algorithm::kLogReg, alone);
  const Model mt = train(Algorithm::kLogReg, twin);
  const ImportanceReport ra = permutation_importance(ma, alone, 10, 1);
  const ImportanceReport rt = permutation_importance(mt, twin, 10, 1);
  EXPECT_LE(rt.scores[0], ra.scores[0]);
  EXPECT_LE(rt.scores[3], ra.scores[0]);
}

TEST(PermutationImportance, DeterministicAndValidated) {
  const Dataset d = Informative(3, false);
  const Model m = train(Algorithm::kGbdt, d);
  EXPECT_EQ(permutation_importance(m, d, 5, 9).scores,
            permutation_importance(m, d, 5, 9).scores);
  EXPECT_THROW(permutation_importance(m, d, 0, 9), std::invalid_argument);
}

TEST(GainImportance, SumsToOneAndSingleSplit) {
  const Dataset d = Informative(4, false);
  const ImportanceReport r = gain_importance(train(Algorithm::kGbdt, d));
  double total = 0;
  for (double s : r.scores) total += s;
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_EQ(r.top_feature(), "signal");

  LearnerConfig stump;
  stump.dtree.max_depth = 1;
  const ImportanceReport one =
      gain_importance(train(Algorithm::kDecisionTree, d, stump));
  EXPECT_EQ(one.scores, (std::vector<double>{1.0, 0.0, 0.0}));
  EXPECT_THROW(gain_importance(train(Algorithm::kKnn, d)),
               std::invalid_argument);
}

TEST(GainImportance, NoSplitsGiveZeros) {
  Dataset d;
  d.feature_names = {"a", "b"};
  for (int i = 0; i < 20; ++i) {
    d.rows.push_back({1.0, 2.0});
    d.labels.push_back(i % 2);
  }
  const ImportanceReport r = gain_importance(train(Algorithm::kGbdt, d));
  EXPECT_EQ(r.scores, (std::vector<double>{0.0, 0.0}));
}

TEST(RankScores, TiesKeepLowerIndex) {
  const std::vector<double> s = {0.1, 0.5, 0.1, 0.5};
  EXPECT_EQ(rank_scores(s), (std::vector<int>{1, 3, 0, 2}));
}

}  // namespace
}  // namespace controversy
