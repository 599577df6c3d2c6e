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

// Two-sample Kolmogorov-Smirnov tests and feature-importance rankings.

#ifndef CONTROVERSY_STATS_H_
#define CONTROVERSY_STATS_H_

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "controversy/learners.h"

namespace controversy {

struct KsResult {
  double statistic = 0.0;  // D
  double p_value = 1.0;
  int n1 = 0;
  int n2 = 0;
};

// D = sup |F_a - F_b| over the pooled sample; asymptotic two-sided p-value
// with lambda = sqrt(n1 n2 / (n1 + n2)) * D. Throws std::invalid_argument
// on an empty sample or a non-finite value.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

// Kolmogorov survival function Q(lambda) = P(K > lambda).
double kolmogorov_q(double lambda);

struct KsRow {
  std::string feature;
  std::string group_a;
  std::string group_b;
  KsResult result;
};

// One row per (feature, unordered group pair); groups are taken in sorted
// order. `groups[i]` names the group of `rows[i]`. Groups with no rows are
// never formed.
std::vector<KsRow> ks_table(std::span<const FeatureVector> rows,
                            std::span<const std::string> groups,
                            std::span<const int> features);

void write_ks_csv(std::ostream &out, std::span<const KsRow> rows);
nlohmann::json ks_to_json(std::span<const KsRow> rows);

struct ImportanceReport {
  std::string method;  // "gain" or "permutation"
  std::vector<std::string> feature_names;
  std::vector<double> scores;
  std::vector<int> ranking;  // feature indices, best first, ties by index
  std::uint64_t seed = 0;
  int repeats = 0;
  double baseline_accuracy = 0.0;  // permutation only

  const std::string &top_feature() const {
    return feature_names[ranking.front()];
  }
};

// Scores sorted descending; equal scores keep the lower index first.
std::vector<int> rank_scores(std::span<const double> scores);

// Mean drop in accuracy on `data` when one column is shuffled, over
// `repeats` shuffles. Shuffle (feature f, repeat r) draws from its own
// stream derived from (seed, f, r). Throws std::invalid_argument when
// repeats < 1 and DataError on a manifest mismatch.
ImportanceReport permutation_importance(const Model &model,
                                        const Dataset &data, int repeats,
                                        std::uint64_t seed);

// Summed split gain per feature normalized to sum to 1; all zeros when the
// model never splits. Throws std::invalid_argument for non-tree models.
ImportanceReport gain_importance(const Model &model);

nlohmann::json importance_to_json(const ImportanceReport &report);

}  // namespace controversy

#endif  // CONTROVERSY_STATS_H_
