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

// Experiment harness: seeded stratified splits, the algorithm x feature-mode
// accuracy matrix, the one-page and early-detection protocols, importance
// rankings and KS tables, and the report files.

#ifndef CONTROVERSY_EXPERIMENT_H_
#define CONTROVERSY_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "controversy/learners.h"
#include "controversy/stats.h"
#include "controversy/synthetic.h"
#include "controversy/thread.h"

namespace controversy {

struct ExperimentConfig {
  // Dataset files. When empty, `synthetic` supplies the corpus.
  std::string posts_path;
  std::string comments_path;
  std::optional<SyntheticParams> synthetic;
  std::string lexicon_path;  // empty = built-in demo lexicon

  double train_fraction = 0.7;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};

  std::vector<Algorithm> algorithms = {Algorithm::kLogReg, Algorithm::kKnn,
                                       Algorithm::kDecisionTree,
                                       Algorithm::kGbdt,
                                       Algorithm::kGbdtGossEfb};
  std::vector<FeatureMode> modes = {FeatureMode::kStructure,
                                    FeatureMode::kInteraction,
                                    FeatureMode::kText,
                                    FeatureMode::kPsychology};

  std::vector<double> one_page_ratios = {1.0, 0.2};
  Algorithm one_page_algorithm = Algorithm::kGbdtGossEfb;

  std::vector<Timestamp> horizons = {3 * 3600, 6 * 3600, 9 * 3600, 24 * 3600};
  Algorithm early_algorithm = Algorithm::kGbdtGossEfb;
  std::vector<FeatureMode> early_modes = modes;

  Algorithm importance_algorithm = Algorithm::kGbdtGossEfb;
  FeatureMode importance_mode = FeatureMode::kPsychology;
  int importance_repeats = 10;

  std::vector<int> ks_features;  // empty = all 13

  FeatureOptions features;
  LearnerConfig learners;
  std::string output_dir = "out";

  // Throws ConfigError on out-of-range values.
  void validate() const;
};

nlohmann::json to_json(const ExperimentConfig &config);
// Relative paths resolve against `base_dir` when it is non-empty. Unknown
// sections or keys raise ConfigError.
ExperimentConfig experiment_config_from_json(const nlohmann::json &j,
                                             const std::string &base_dir = "");
// Reads a TOML config file. Throws ConfigError naming the path.
ExperimentConfig load_experiment_config(const std::string &path);

// FNV-1a of the canonical config JSON, and its first 12 hex digits.
std::string config_hash(const ExperimentConfig &config);
std::string run_id(const ExperimentConfig &config);

struct Split {
  std::vector<int> train;  // ascending
  std::vector<int> test;   // ascending
};

// Per class, shuffles the row indices with a stream derived from (seed,
// class) and sends round(fraction * class size) of them to training.
// Throws DataError when either side misses a class.
Split stratified_split(std::span<const int> labels, double train_fraction,
                       std::uint64_t seed);

// Accuracies of one configuration across the split seeds.
struct SeedScores {
  std::vector<double> per_seed;
  double mean = 0.0;
};

struct MatrixCell {
  Algorithm algorithm;
  FeatureMode mode;
  int num_features = 0;
  SeedScores accuracy;
};

struct OnePageCell {
  double ratio = 1.0;
  SeedScores accuracy;
};

struct EarlyCell {
  Timestamp horizon = 0;
  FeatureMode mode;
  double mean_comments = 0.0;  // visible comments per thread
  SeedScores accuracy;
};

struct Report {
  std::string config_hash;
  std::string run_id;
  nlohmann::json config;
  std::vector<std::uint64_t> seeds;
  int num_posts = 0;
  int num_controversial = 0;
  int num_unlabeled = 0;

  std::vector<MatrixCell> matrix;
  Algorithm one_page_algorithm = Algorithm::kGbdtGossEfb;
  std::vector<OnePageCell> one_page;
  Algorithm early_algorithm = Algorithm::kGbdtGossEfb;
  std::vector<EarlyCell> early;
  std::vector<ImportanceReport> permutation;  // one per seed
  std::vector<ImportanceReport> gain;         // one per seed, tree models
  std::vector<KsRow> ks_label;
  std::vector<KsRow> ks_topic;
  // Full-tree 13-slot vectors and topics, for plots.
  std::vector<FeatureVector> vectors;
  std::vector<std::string> topics;

  const MatrixCell *cell(Algorithm algorithm, FeatureMode mode) const;
};

// Runs every protocol on the given threads. Unlabelled threads are left
// out.
Report run_experiment(const ExperimentConfig &config,
                      std::span<const Thread> threads, const Lexicon &lexicon);
// Loads the dataset (or generates the synthetic corpus) and the lexicon.
Report run_experiment(const ExperimentConfig &config);

// Deterministic JSON; no wall-clock values.
nlohmann::json report_to_json(const Report &report);

// Writes report.json, matrix.csv, onepage.csv, early.csv, importance.csv,
// ks.csv and plots/*.svg into `dir`, creating it.
void write_report_files(const Report &report, const std::string &dir);

}  // namespace controversy

#endif  // CONTROVERSY_EXPERIMENT_H_
