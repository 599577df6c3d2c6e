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

#include "controversy/experiment.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "controversy/errors.h"
#include "controversy/model_io.h"
#include "controversy/protocols.h"
#include "controversy/random.h"
#include "controversy/toml_lite.h"

namespace controversy {

using nlohmann::json;

namespace {

void reject_unknown(const json &j, std::initializer_list<const char *> known,
                    const std::string &where) {
  if (!j.is_object()) throw ConfigError("[" + where + "] must be a table");
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto &[key, value] : j.items()) {
    if (!allowed.count(key)) {
      throw ConfigError("unknown key '" + key + "' in [" + where + "]");
    }
  }
}

template <typename T>
T get_as(const json &j, const std::string &key, const std::string &where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception &) {
    throw ConfigError("bad value for '" + key + "' in [" + where + "]");
  }
}

std::string resolve(const std::string &path, const std::string &base) {
  if (path.empty() || base.empty()) return path;
  const std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(base) / p).lexically_normal().string();
}

std::vector<std::string> mode_names(const std::vector<FeatureMode> &modes) {
  std::vector<std::string> out;
  for (FeatureMode m : modes) out.emplace_back(mode_name(m));
  return out;
}

std::vector<FeatureMode> parse_modes(const json &j, const std::string &where) {
  std::vector<FeatureMode> out;
  for (const auto &name : get_as<std::vector<std::string>>(
           json{{"modes", j}}, "modes", where)) {
    try {
      out.push_back(parse_mode(name));
    } catch (const std::invalid_argument &e) {
      throw ConfigError(std::string(e.what()) + " in [" + where + "]");
    }
  }
  return out;
}

Algorithm parse_algorithm_cfg(const json &j, const std::string &where) {
  const auto name = get_as<std::string>(json{{"algorithm", j}}, "algorithm",
                                        where);
  try {
    return parse_algorithm(name);
  } catch (const std::invalid_argument &e) {
    throw ConfigError(std::string(e.what()) + " in [" + where + "]");
  }
}

SeedScores summarize(std::vector<double> per_seed) {
  SeedScores s;
  double total = 0.0;
  for (double v : per_seed) total += v;
  s.mean = per_seed.empty() ? 0.0 : total / per_seed.size();
  s.per_seed = std::move(per_seed);
  return s;
}

LearnerConfig seeded(const LearnerConfig &base, std::uint64_t seed) {
  LearnerConfig c = base;
  c.seed = seed;
  return c;
}

double held_out_accuracy(Algorithm algorithm, const Dataset &data,
                         const Split &split, const LearnerConfig &config) {
  const Dataset train_set = data.subset(split.train);
  const Dataset test_set = data.subset(split.test);
  const Model model = train(algorithm, train_set, config);
  return accuracy(predict(model, test_set), test_set.labels);
}

}  // namespace

void ExperimentConfig::validate() const {
  if (posts_path.empty() != comments_path.empty()) {
    throw ConfigError("data.posts and data.comments must be given together");
  }
  if (posts_path.empty() && !synthetic) {
    throw ConfigError("config needs [data] paths or a [synthetic] section");
  }
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError("split.train_fraction must lie in (0, 1)");
  }
  if (seeds.empty()) throw ConfigError("split.seeds must not be empty");
  for (double r : one_page_ratios) {
    if (!(r > 0.0 && r <= 1.0)) {
      throw ConfigError("one_page.ratios must lie in (0, 1]");
    }
  }
  for (std::size_t i = 0; i < horizons.size(); ++i) {
    if (horizons[i] <= 0) throw ConfigError("early.horizons must be > 0");
    if (i > 0 && horizons[i] <= horizons[i - 1]) {
      throw ConfigError("early.horizons must be strictly increasing");
    }
  }
  if (importance_repeats < 1) {
    throw ConfigError("importance.repeats must be >= 1");
  }
  for (int f : ks_features) {
    if (f < 0 || f >= kNumFeatures) throw ConfigError("bad ks feature");
  }
  try {
    learners.gbdt.validate();
  } catch (const std::invalid_argument &e) {
    throw ConfigError(std::string("learners.gbdt: ") + e.what());
  }
  if (learners.knn.k < 1) throw ConfigError("learners.knn.k must be >= 1");
}

json to_json(const ExperimentConfig &c) {
  json j;
  json data = {{"posts", c.posts_path},
               {"comments", c.comments_path},
               {"lexicon", c.lexicon_path}};
  j["data"] = data;
  if (c.synthetic) j["synthetic"] = to_json(*c.synthetic);
  j["split"] = {{"train_fraction", c.train_fraction}, {"seeds", c.seeds}};
  std::vector<std::string> algorithms;
  for (Algorithm a : c.algorithms) algorithms.emplace_back(algorithm_name(a));
  j["matrix"] = {{"algorithms", algorithms}, {"modes", mode_names(c.modes)}};
  j["one_page"] = {{"ratios", c.one_page_ratios},
                   {"algorithm", algorithm_name(c.one_page_algorithm)}};
  j["early"] = {{"horizons", c.horizons},
                {"algorithm", algorithm_name(c.early_algorithm)},
                {"modes", mode_names(c.early_modes)}};
  j["importance"] = {{"algorithm", algorithm_name(c.importance_algorithm)},
                     {"mode", mode_name(c.importance_mode)},
                     {"repeats", c.importance_repeats}};
  std::vector<std::string> ks;
  for (int f : c.ks_features) ks.emplace_back(feature_names()[f]);
  j["ks"] = {{"features", ks}};
  j["features"] = {
      {"include_root_links", c.features.interaction.include_root_links},
      {"absolute_intensity", c.features.text.absolute_intensity}};
  j["learners"] = to_json(c.learners);
  j["output"] = {{"dir", c.output_dir}};
  return j;
}

ExperimentConfig experiment_config_from_json(const json &j,
                                             const std::string &base_dir) {
  reject_unknown(j,
                 {"data", "synthetic", "split", "matrix", "one_page", "early",
                  "importance", "ks", "features", "learners", "output"},
                 "root");
  ExperimentConfig c;
  bool early_modes_set = false;
  if (j.contains("data")) {
    const json &s = j.at("data");
    reject_unknown(s, {"posts", "comments", "lexicon"}, "data");
    if (s.contains("posts")) c.posts_path = get_as<std::string>(s, "posts", "data");
    if (s.contains("comments")) {
      c.comments_path = get_as<std::string>(s, "comments", "data");
    }
    if (s.contains("lexicon")) {
      c.lexicon_path = get_as<std::string>(s, "lexicon", "data");
    }
  }
  if (j.contains("synthetic")) {
    c.synthetic = synthetic_params_from_json(j.at("synthetic"));
  }
  if (j.contains("split")) {
    const json &s = j.at("split");
    reject_unknown(s, {"train_fraction", "seeds"}, "split");
    if (s.contains("train_fraction")) {
      c.train_fraction = get_as<double>(s, "train_fraction", "split");
    }
    if (s.contains("seeds")) {
      const auto seeds = get_as<std::vector<std::int64_t>>(s, "seeds", "split");
      c.seeds.clear();
      for (auto v : seeds) {
        if (v < 0) throw ConfigError("split.seeds must be >= 0");
        c.seeds.push_back(static_cast<std::uint64_t>(v));
      }
    }
  }
  if (j.contains("matrix")) {
    const json &s = j.at("matrix");
    reject_unknown(s, {"algorithms", "modes"}, "matrix");
    if (s.contains("algorithms")) {
      c.algorithms.clear();
      for (const json &a : s.at("algorithms")) {
        c.algorithms.push_back(parse_algorithm_cfg(a, "matrix"));
      }
    }
    if (s.contains("modes")) c.modes = parse_modes(s.at("modes"), "matrix");
  }
  if (j.contains("one_page")) {
    const json &s = j.at("one_page");
    reject_unknown(s, {"ratios", "algorithm"}, "one_page");
    if (s.contains("ratios")) {
      c.one_page_ratios = get_as<std::vector<double>>(s, "ratios", "one_page");
    }
    if (s.contains("algorithm")) {
      c.one_page_algorithm = parse_algorithm_cfg(s.at("algorithm"), "one_page");
    }
  }
  if (j.contains("early")) {
    const json &s = j.at("early");
    reject_unknown(s, {"horizons", "algorithm", "modes"}, "early");
    if (s.contains("horizons")) {
      c.horizons = get_as<std::vector<Timestamp>>(s, "horizons", "early");
    }
    if (s.contains("algorithm")) {
      c.early_algorithm = parse_algorithm_cfg(s.at("algorithm"), "early");
    }
    if (s.contains("modes")) {
      c.early_modes = parse_modes(s.at("modes"), "early");
      early_modes_set = true;
    }
  }
  if (!early_modes_set) c.early_modes = c.modes;
  if (j.contains("importance")) {
    const json &s = j.at("importance");
    reject_unknown(s, {"algorithm", "mode", "repeats"}, "importance");
    if (s.contains("algorithm")) {
      c.importance_algorithm =
          parse_algorithm_cfg(s.at("algorithm"), "importance");
    }
    if (s.contains("mode")) {
      try {
        c.importance_mode =
            parse_mode(get_as<std::string>(s, "mode", "importance"));
      } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string(e.what()) + " in [importance]");
      }
    }
    if (s.contains("repeats")) {
      c.importance_repeats = get_as<int>(s, "repeats", "importance");
    }
  }
  if (j.contains("ks")) {
    const json &s = j.at("ks");
    reject_unknown(s, {"features"}, "ks");
    if (s.contains("features")) {
      for (const auto &name :
           get_as<std::vector<std::string>>(s, "features", "ks")) {
        const int f = feature_index(name);
        if (f < 0) throw ConfigError("unknown feature '" + name + "' in [ks]");
        c.ks_features.push_back(f);
      }
    }
  }
  if (j.contains("features")) {
    const json &s = j.at("features");
    reject_unknown(s, {"include_root_links", "absolute_intensity"},
                   "features");
    if (s.contains("include_root_links")) {
      c.features.interaction.include_root_links =
          get_as<bool>(s, "include_root_links", "features");
    }
    if (s.contains("absolute_intensity")) {
      c.features.text.absolute_intensity =
          get_as<bool>(s, "absolute_intensity", "features");
    }
  }
  if (j.contains("learners")) {
    c.learners = learner_config_from_json(j.at("learners"));
  }
  if (j.contains("output")) {
    const json &s = j.at("output");
    reject_unknown(s, {"dir"}, "output");
    if (s.contains("dir")) c.output_dir = get_as<std::string>(s, "dir", "output");
  }
  c.posts_path = resolve(c.posts_path, base_dir);
  c.comments_path = resolve(c.comments_path, base_dir);
  c.lexicon_path = resolve(c.lexicon_path, base_dir);
  c.output_dir = resolve(c.output_dir, base_dir);
  c.validate();
  return c;
}

ExperimentConfig load_experiment_config(const std::string &path) {
  if (!std::filesystem::exists(path)) {
    throw ConfigError("config file not found: " + path);
  }
  const json j = load_toml(path);
  const auto base = std::filesystem::path(path).parent_path().string();
  return experiment_config_from_json(j, base);
}

std::string config_hash(const ExperimentConfig &config) {
  json j = to_json(config);
  j.erase("output");
  return fnv1a_hex(j.dump());
}

std::string run_id(const ExperimentConfig &config) {
  return config_hash(config).substr(0, 12);
}

Split stratified_split(std::span<const int> labels, double train_fraction,
                       std::uint64_t seed) {
  Split split;
  for (int cls = 0; cls <= 1; ++cls) {
    std::vector<int> members;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == cls) members.push_back(static_cast<int>(i));
    }
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(cls)}));
    shuffle(rng, members);
    const std::size_t n_train = static_cast<std::size_t>(
        std::llround(train_fraction * static_cast<double>(members.size())));
    for (std::size_t i = 0; i < members.size(); ++i) {
      (i < n_train ? split.train : split.test).push_back(members[i]);
    }
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  auto classes = [&](const std::vector<int> &idx) {
    std::set<int> seen;
    for (int i : idx) seen.insert(labels[i]);
    return seen.size();
  };
  if (classes(split.train) < 2 || classes(split.test) < 2) {
    throw DataError(fmt::format(
        "split with seed {} and train fraction {} leaves a class out of the "
        "training or test set; add labelled posts of both "
        "classes or change split.train_fraction / split.seeds",
        seed, train_fraction));
  }
  return split;
}

const MatrixCell *Report::cell(Algorithm algorithm, FeatureMode mode) const {
  for (const MatrixCell &c : matrix) {
    if (c.algorithm == algorithm && c.mode == mode) return &c;
  }
  return nullptr;
}

Report run_experiment(const ExperimentConfig &config,
                      std::span<const Thread> threads, const Lexicon &lexicon) {
  config.validate();
  Report report;
  report.config = to_json(config);
  report.config_hash = config_hash(config);
  report.run_id = run_id(config);
  report.seeds = config.seeds;
  report.one_page_algorithm = config.one_page_algorithm;
  report.early_algorithm = config.early_algorithm;

  std::vector<CommentTree> trees;
  std::vector<int> labels;
  for (const Thread &t : threads) {
    if (!t.post.label) {
      ++report.num_unlabeled;
      continue;
    }
    trees.push_back(build_tree(t.post, t.comments));
    labels.push_back(*t.post.label ? 1 : 0);
    report.topics.push_back(t.post.topic);
  }
  report.num_posts = static_cast<int>(trees.size());
  for (int l : labels) report.num_controversial += l;
  if (report.num_unlabeled > 0) {
    spdlog::warn("{} unlabelled posts left out", report.num_unlabeled);
  }
  if (trees.empty()) throw DataError("no labelled posts to experiment on");

  const FeatureMask all = mode_mask(FeatureMode::kPsychology);
  for (const CommentTree &tree : trees) {
    report.vectors.push_back(
        feature_vector(tree, lexicon, all, config.features));
  }

  std::vector<Split> splits;
  for (std::uint64_t seed : config.seeds) {
    splits.push_back(stratified_split(labels, config.train_fraction, seed));
  }
  auto evaluate = [&](Algorithm algorithm, const Dataset &data) {
    std::vector<double> per_seed;
    for (std::size_t s = 0; s < splits.size(); ++s) {
      per_seed.push_back(held_out_accuracy(
          algorithm, data, splits[s], seeded(config.learners, config.seeds[s])));
    }
    return summarize(std::move(per_seed));
  };

  for (FeatureMode mode : config.modes) {
    const Dataset data = make_dataset(report.vectors, mode_mask(mode));
    for (Algorithm algorithm : config.algorithms) {
      spdlog::debug("matrix cell {} / {}", algorithm_name(algorithm),
                    mode_name(mode));
      report.matrix.push_back({algorithm, mode, data.num_features(),
                               evaluate(algorithm, data)});
    }
  }

  for (double ratio : config.one_page_ratios) {
    std::vector<FeatureVector> reduced;
    for (const CommentTree &tree : trees) {
      reduced.push_back(one_page_filter(tree, ratio, lexicon, config.features));
    }
    const Dataset data = make_dataset(reduced, one_page_mask());
    report.one_page.push_back(
        {ratio, evaluate(config.one_page_algorithm, data)});
  }

  for (Timestamp horizon : config.horizons) {
    std::vector<FeatureVector> sliced;
    double visible = 0.0;
    for (const CommentTree &tree : trees) {
      const CommentTree prefix = time_slice(tree, horizon);
      visible += prefix.size();
      sliced.push_back(feature_vector(prefix, lexicon, all, config.features));
    }
    for (FeatureMode mode : config.early_modes) {
      const Dataset data = make_dataset(sliced, mode_mask(mode));
      report.early.push_back({horizon, mode, visible / trees.size(),
                              evaluate(config.early_algorithm, data)});
    }
  }

  {
    const Dataset data =
        make_dataset(report.vectors, mode_mask(config.importance_mode));
    for (std::size_t s = 0; s < splits.size(); ++s) {
      const Dataset train_set = data.subset(splits[s].train);
      const Dataset test_set = data.subset(splits[s].test);
      const Model model =
          train(config.importance_algorithm, train_set,
                seeded(config.learners, config.seeds[s]));
      report.permutation.push_back(permutation_importance(
          model, test_set, config.importance_repeats, config.seeds[s]));
      if (is_tree_model(config.importance_algorithm)) {
        report.gain.push_back(gain_importance(model));
      }
    }
  }

  std::vector<int> ks_features = config.ks_features;
  if (ks_features.empty()) {
    for (int f = 0; f < kNumFeatures; ++f) ks_features.push_back(f);
  }
  std::vector<std::string> label_groups;
  for (int l : labels) {
    label_groups.push_back(l ? "controversial" : "non-controversial");
  }
  report.ks_label = ks_table(report.vectors, label_groups, ks_features);
  report.ks_topic = ks_table(report.vectors, report.topics, ks_features);
  return report;
}

Report run_experiment(const ExperimentConfig &config) {
  config.validate();
  const Lexicon lexicon = config.lexicon_path.empty()
                              ? Lexicon::BuiltinDemo()
                              : Lexicon::Load(config.lexicon_path);
  std::vector<Thread> threads;
  if (!config.posts_path.empty()) {
    ParsedDataset parsed =
        parse_dataset(config.posts_path, config.comments_path);
    for (const auto &skip : parsed.report.skipped) {
      spdlog::warn("{}:{}: skipped: {}", skip.path, skip.line, skip.reason);
    }
    threads = std::move(parsed.threads);
  } else {
    threads = generate_synthetic(*config.synthetic);
  }
  return run_experiment(config, threads, lexicon);
}

}  // namespace controversy
