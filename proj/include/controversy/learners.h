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

// Binary classifiers for the algorithm matrix: logistic regression, k-nearest
// neighbours, a CART decision tree, histogram gradient boosting, and gradient
// boosting with one-side sampling and exclusive feature bundling.
//
// Every learner is a deterministic function of (data, config, seed).

#ifndef CONTROVERSY_LEARNERS_H_
#define CONTROVERSY_LEARNERS_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "controversy/psych.h"

namespace controversy {

enum class Algorithm { kLogReg, kKnn, kDecisionTree, kGbdt, kGbdtGossEfb };

std::string_view algorithm_name(Algorithm algorithm);
// "logreg", "knn", "dtree", "gbdt", "gbdt_goss_efb".
Algorithm parse_algorithm(std::string_view name);
bool is_tree_model(Algorithm algorithm);

struct Dataset {
  std::vector<std::string> feature_names;
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;        // 0 or 1
  std::vector<std::string> ids;   // optional, one per row when present

  int num_rows() const { return static_cast<int>(rows.size()); }
  int num_features() const { return static_cast<int>(feature_names.size()); }

  // Throws DataError on ragged rows, non-binary labels or non-finite values.
  void validate() const;
  // Rows selected by index, in the given order.
  Dataset subset(std::span<const int> indices) const;
};

// Active slots of `mask` become the columns. Every vector needs a label.
Dataset make_dataset(std::span<const FeatureVector> vectors,
                     const FeatureMask &mask);

struct LogRegConfig {
  double l2 = 1e-3;  // on standardized weights, not the intercept
  int max_iterations = 100;
  double tolerance = 1e-10;
};

struct KnnConfig {
  int k = 5;
};

struct DecisionTreeConfig {
  int max_depth = 6;
  int min_samples_leaf = 2;
};

struct GbdtConfig {
  int num_trees = 100;
  double learning_rate = 0.1;
  int max_leaves = 15;
  int max_depth = 6;  // <= 0 disables the depth limit
  int histogram_bins = 64;
  double goss_a = 0.2;
  double goss_b = 0.1;
  std::int64_t efb_conflict_K = 0;
  int min_samples_leaf = 5;
  double l2 = 1.0;  // leaf-value regularizer
  double min_child_hessian = 1e-3;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument when a bound is violated.
  void validate() const;
};

struct LearnerConfig {
  LogRegConfig logreg;
  KnnConfig knn;
  DecisionTreeConfig dtree;
  GbdtConfig gbdt;
  std::uint64_t seed = 0;  // overrides gbdt.seed at train time
};

// A binary split tree. Internal nodes send x[feature] <= threshold left.
struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;  // leaf output
  double gain = 0.0;   // split gain for internal nodes
  int count = 0;       // training rows reaching the node

  bool is_leaf() const { return feature < 0; }
};

struct Tree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  double predict(std::span<const double> row) const;
  int num_leaves() const;
};

struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;  // 1 for constant columns

  static Standardizer Fit(const Dataset &data);
  std::vector<double> apply(std::span<const double> row) const;
};

struct LogRegParams {
  Standardizer standardizer;
  std::vector<double> weights;
  double intercept = 0.0;
  int iterations = 0;
};

struct KnnParams {
  Standardizer standardizer;
  int k = 5;
  std::vector<std::vector<double>> points;  // standardized training rows
  std::vector<int> labels;
};

// A decision tree (leaf value = positive-class purity) or a boosted
// ensemble (leaf values add to a log-odds score).
struct EnsembleParams {
  double base_score = 0.0;  // initial log-odds, boosting only
  std::vector<Tree> trees;
  std::vector<std::vector<int>> bundles;  // EFB column groups, if used
  std::vector<double> train_loss;  // mean log-loss after each round
};

struct Model {
  Algorithm algorithm = Algorithm::kLogReg;
  std::vector<std::string> feature_names;  // the manifest
  std::variant<LogRegParams, KnnParams, EnsembleParams> params;
  std::uint64_t seed = 0;
  std::string config_json;  // canonical dump of the LearnerConfig used
  std::string config_hash;  // FNV-1a of config_json, hex
};

struct Prediction {
  int label = 0;       // score >= 0.5
  double score = 0.0;  // P(controversial)
};

// Throws DataError when the data is empty or degenerate for the algorithm
// (a single class for logreg and boosting, k > rows for kNN) and
// std::invalid_argument for out-of-range configuration.
Model train(Algorithm algorithm, const Dataset &data,
            const LearnerConfig &config = {});

// Throws DataError naming the missing and extra features when
// `feature_names` does not equal the model manifest.
void check_manifest(const Model &model,
                    std::span<const std::string> feature_names);

std::vector<Prediction> predict(const Model &model, const Dataset &data);
// Rows must follow the manifest column order.
std::vector<Prediction> predict_rows(
    const Model &model, std::span<const std::vector<double>> rows);

double accuracy(std::span<const Prediction> predictions,
                std::span<const int> labels);

// Mean binary log-loss of scores against labels.
double log_loss(std::span<const double> scores, std::span<const int> labels);

// Exposed for tests: the histogram split search used by the boosters.
struct SplitCandidate {
  int feature = -1;
  int bin = -1;  // rows with bin <= this go left
  double gain = 0.0;
};

// Best split of the rows `rows` (with per-row gradient/hessian already
// weighted) over binned columns. Ties resolve to the lowest feature, then
// the lowest bin.
SplitCandidate best_histogram_split(
    std::span<const std::vector<std::uint16_t>> binned,
    std::span<const int> num_bins, std::span<const int> rows,
    std::span<const double> grad, std::span<const double> hess,
    const GbdtConfig &config);

std::string fnv1a_hex(std::string_view bytes);

}  // namespace controversy

#endif  // CONTROVERSY_LEARNERS_H_
