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

#include <fstream>
#include <set>

#include "controversy/errors.h"

namespace controversy {

using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

void reject_unknown(const json &j, std::initializer_list<const char *> known,
                    const std::string &where) {
  if (!j.is_object()) throw ConfigError(where + " must be a table");
  std::set<std::string> allowed(known.begin(), known.end());
  for (const auto &[key, value] : j.items()) {
    if (!allowed.count(key)) {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
void read_key(const json &j, const char *key, T &out, const std::string &where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception &) {
    throw ConfigError(std::string("bad value for '") + key + "' in " + where);
  }
}

json standardizer_json(const Standardizer &s) {
  return {{"mean", s.mean}, {"scale", s.scale}};
}

Standardizer standardizer_from(const json &j) {
  Standardizer s;
  s.mean = j.at("mean").get<std::vector<double>>();
  s.scale = j.at("scale").get<std::vector<double>>();
  return s;
}

json tree_json(const Tree &tree) {
  json nodes = json::array();
  for (const TreeNode &n : tree.nodes) {
    if (n.is_leaf()) {
      nodes.push_back({{"value", n.value}, {"count", n.count}});
    } else {
      nodes.push_back({{"feature", n.feature},
                       {"threshold", n.threshold},
                       {"left", n.left},
                       {"right", n.right},
                       {"gain", n.gain},
                       {"count", n.count}});
    }
  }
  return nodes;
}

Tree tree_from(const json &j, int num_features) {
  Tree tree;
  for (const json &n : j) {
    TreeNode node;
    node.count = n.value("count", 0);
    if (n.contains("feature")) {
      node.feature = n.at("feature").get<int>();
      node.threshold = n.at("threshold").get<double>();
      node.left = n.at("left").get<int>();
      node.right = n.at("right").get<int>();
      node.gain = n.value("gain", 0.0);
    } else {
      node.value = n.at("value").get<double>();
    }
    tree.nodes.push_back(node);
  }
  const int size = static_cast<int>(tree.nodes.size());
  if (size == 0) throw DataError("model contains an empty tree");
  for (int i = 0; i < size; ++i) {
    const TreeNode &n = tree.nodes[i];
    if (n.is_leaf()) continue;
    if (n.feature >= num_features || n.left <= i || n.right <= i ||
        n.left >= size || n.right >= size) {
      throw DataError("model tree has an invalid node " + std::to_string(i));
    }
  }
  return tree;
}

}  // namespace

json to_json(const GbdtConfig &c) {
  return {{"num_trees", c.num_trees},
          {"learning_rate", c.learning_rate},
          {"max_leaves", c.max_leaves},
          {"max_depth", c.max_depth},
          {"histogram_bins", c.histogram_bins},
          {"goss_a", c.goss_a},
          {"goss_b", c.goss_b},
          {"efb_conflict_K", c.efb_conflict_K},
          {"min_samples_leaf", c.min_samples_leaf},
          {"l2", c.l2},
          {"min_child_hessian", c.min_child_hessian},
          {"seed", c.seed}};
}

json to_json(const LearnerConfig &c) {
  return {{"logreg",
           {{"l2", c.logreg.l2},
            {"max_iterations", c.logreg.max_iterations},
            {"tolerance", c.logreg.tolerance}}},
          {"knn", {{"k", c.knn.k}}},
          {"dtree",
           {{"max_depth", c.dtree.max_depth},
            {"min_samples_leaf", c.dtree.min_samples_leaf}}},
          {"gbdt", to_json(c.gbdt)},
          {"seed", c.seed}};
}

GbdtConfig gbdt_config_from_json(const json &j) {
  const std::string where = "gbdt";
  reject_unknown(j,
                 {"num_trees", "learning_rate", "max_leaves", "max_depth",
                  "histogram_bins", "goss_a", "goss_b", "efb_conflict_K",
                  "min_samples_leaf", "l2", "min_child_hessian", "seed"},
                 where);
  GbdtConfig c;
  read_key(j, "num_trees", c.num_trees, where);
  read_key(j, "learning_rate", c.learning_rate, where);
  read_key(j, "max_leaves", c.max_leaves, where);
  read_key(j, "max_depth", c.max_depth, where);
  read_key(j, "histogram_bins", c.histogram_bins, where);
  read_key(j, "goss_a", c.goss_a, where);
  read_key(j, "goss_b", c.goss_b, where);
  read_key(j, "efb_conflict_K", c.efb_conflict_K, where);
  read_key(j, "min_samples_leaf", c.min_samples_leaf, where);
  read_key(j, "l2", c.l2, where);
  read_key(j, "min_child_hessian", c.min_child_hessian, where);
  read_key(j, "seed", c.seed, where);
  try {
    c.validate();
  } catch (const std::invalid_argument &e) {
    throw ConfigError(std::string("gbdt: ") + e.what());
  }
  return c;
}

LearnerConfig learner_config_from_json(const json &j) {
  reject_unknown(j, {"logreg", "knn", "dtree", "gbdt", "seed"}, "learners");
  LearnerConfig c;
  if (j.contains("logreg")) {
    const json &s = j.at("logreg");
    reject_unknown(s, {"l2", "max_iterations", "tolerance"}, "logreg");
    read_key(s, "l2", c.logreg.l2, "logreg");
    read_key(s, "max_iterations", c.logreg.max_iterations, "logreg");
    read_key(s, "tolerance", c.logreg.tolerance, "logreg");
  }
  if (j.contains("knn")) {
    const json &s = j.at("knn");
    reject_unknown(s, {"k"}, "knn");
    read_key(s, "k", c.knn.k, "knn");
    if (c.knn.k < 1) throw ConfigError("knn: k must be >= 1");
  }
  if (j.contains("dtree")) {
    const json &s = j.at("dtree");
    reject_unknown(s, {"max_depth", "min_samples_leaf"}, "dtree");
    read_key(s, "max_depth", c.dtree.max_depth, "dtree");
    read_key(s, "min_samples_leaf", c.dtree.min_samples_leaf, "dtree");
  }
  if (j.contains("gbdt")) c.gbdt = gbdt_config_from_json(j.at("gbdt"));
  read_key(j, "seed", c.seed, "learners");
  return c;
}

json model_to_json(const Model &model) {
  json j;
  j["format"] = "controversy-model";
  j["version"] = kFormatVersion;
  j["algorithm"] = std::string(algorithm_name(model.algorithm));
  j["features"] = model.feature_names;
  j["seed"] = model.seed;
  j["config"] = json::parse(model.config_json.empty() ? "{}" : model.config_json);
  j["config_hash"] = model.config_hash;
  json params;
  if (const auto *lr = std::get_if<LogRegParams>(&model.params)) {
    params = {{"standardizer", standardizer_json(lr->standardizer)},
              {"weights", lr->weights},
              {"intercept", lr->intercept},
              {"iterations", lr->iterations}};
  } else if (const auto *knn = std::get_if<KnnParams>(&model.params)) {
    params = {{"standardizer", standardizer_json(knn->standardizer)},
              {"k", knn->k},
              {"points", knn->points},
              {"labels", knn->labels}};
  } else {
    const auto &ens = std::get<EnsembleParams>(model.params);
    json trees = json::array();
    for (const Tree &t : ens.trees) trees.push_back(tree_json(t));
    params = {{"base_score", ens.base_score},
              {"trees", trees},
              {"bundles", ens.bundles},
              {"train_loss", ens.train_loss}};
  }
  j["params"] = params;
  return j;
}

Model model_from_json(const json &j) {
  try {
    if (j.value("format", "") != "controversy-model") {
      throw DataError("not a model document");
    }
    if (j.at("version").get<int>() != kFormatVersion) {
      throw DataError("unsupported model version");
    }
    Model m;
    m.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
    m.feature_names = j.at("features").get<std::vector<std::string>>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.config_json = j.at("config").dump();
    m.config_hash = j.at("config_hash").get<std::string>();
    const json &p = j.at("params");
    const std::size_t d = m.feature_names.size();
    switch (m.algorithm) {
      case Algorithm::kLogReg: {
        LogRegParams lr;
        lr.standardizer = standardizer_from(p.at("standardizer"));
        lr.weights = p.at("weights").get<std::vector<double>>();
        lr.intercept = p.at("intercept").get<double>();
        lr.iterations = p.value("iterations", 0);
        if (lr.weights.size() != d || lr.standardizer.mean.size() != d) {
          throw DataError("logreg parameters do not match the manifest");
        }
        m.params = std::move(lr);
        break;
      }
      case Algorithm::kKnn: {
        KnnParams knn;
        knn.standardizer = standardizer_from(p.at("standardizer"));
        knn.k = p.at("k").get<int>();
        knn.points = p.at("points").get<std::vector<std::vector<double>>>();
        knn.labels = p.at("labels").get<std::vector<int>>();
        if (knn.points.size() != knn.labels.size() || knn.k < 1 ||
            knn.k > static_cast<int>(knn.points.size())) {
          throw DataError("knn parameters are inconsistent");
        }
        m.params = std::move(knn);
        break;
      }
      default: {
        EnsembleParams ens;
        ens.base_score = p.value("base_score", 0.0);
        for (const json &t : p.at("trees")) {
          ens.trees.push_back(tree_from(t, static_cast<int>(d)));
        }
        ens.bundles = p.value("bundles", std::vector<std::vector<int>>{});
        ens.train_loss = p.value("train_loss", std::vector<double>{});
        m.params = std::move(ens);
        break;
      }
    }
    return m;
  } catch (const json::exception &e) {
    throw DataError(std::string("malformed model: ") + e.what());
  } catch (const std::invalid_argument &e) {
    throw DataError(std::string("malformed model: ") + e.what());
  }
}

void save_model(const Model &model, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << model_to_json(model).dump(2) << '\n';
  if (!out) throw DataError("failed writing " + path);
}

Model load_model(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception &e) {
    throw DataError(path + ": " + e.what());
  }
  return model_from_json(j);
}

}  // namespace controversy
