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

#include <filesystem>
#include <fstream>
#include <map>

#include <fmt/format.h>

#include "controversy/errors.h"
#include "controversy/experiment.h"
#include "controversy/svg_plot.h"

namespace controversy {

using nlohmann::json;

namespace {

json scores_json(const SeedScores &s) {
  return {{"per_seed", s.per_seed}, {"mean", s.mean}};
}

std::string seed_columns(const std::vector<std::uint64_t> &seeds) {
  std::string out;
  for (auto s : seeds) out += fmt::format(",acc_seed_{}", s);
  return out;
}

std::string seed_values(const SeedScores &s) {
  std::string out;
  for (double v : s.per_seed) out += fmt::format(",{}", v);
  return out;
}

void write_file(const std::filesystem::path &path, const std::string &body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << body;
  if (!out) throw DataError("failed writing " + path.string());
}

}  // namespace

json report_to_json(const Report &r) {
  json j;
  j["config"] = r.config;
  j["config_hash"] = r.config_hash;
  j["run_id"] = r.run_id;
  j["seeds"] = r.seeds;
  j["dataset"] = {{"posts", r.num_posts},
                  {"controversial", r.num_controversial},
                  {"non_controversial", r.num_posts - r.num_controversial},
                  {"unlabeled", r.num_unlabeled}};
  json matrix = json::array();
  for (const MatrixCell &c : r.matrix) {
    matrix.push_back({{"algorithm", algorithm_name(c.algorithm)},
                      {"mode", mode_name(c.mode)},
                      {"num_features", c.num_features},
                      {"accuracy", scores_json(c.accuracy)}});
  }
  j["matrix"] = matrix;
  json one_page = json::array();
  for (const OnePageCell &c : r.one_page) {
    one_page.push_back({{"ratio", c.ratio}, {"accuracy", scores_json(c.accuracy)}});
  }
  j["one_page"] = {{"algorithm", algorithm_name(r.one_page_algorithm)},
                   {"cells", one_page}};
  json early = json::array();
  for (const EarlyCell &c : r.early) {
    early.push_back({{"horizon_s", c.horizon},
                     {"mode", mode_name(c.mode)},
                     {"mean_comments", c.mean_comments},
                     {"accuracy", scores_json(c.accuracy)}});
  }
  j["early"] = {{"algorithm", algorithm_name(r.early_algorithm)},
                {"cells", early}};
  json perm = json::array(), gain = json::array();
  for (const auto &rep : r.permutation) perm.push_back(importance_to_json(rep));
  for (const auto &rep : r.gain) gain.push_back(importance_to_json(rep));
  j["importance"] = {{"permutation", perm}, {"gain", gain}};
  j["ks"] = {{"label", ks_to_json(r.ks_label)},
             {"topic", ks_to_json(r.ks_topic)}};
  return j;
}

void write_report_files(const Report &r, const std::string &dir) {
  namespace fs = std::filesystem;
  const fs::path root(dir);
  std::error_code ec;
  fs::create_directories(root / "plots", ec);
  if (ec) throw DataError("cannot create " + dir + ": " + ec.message());

  write_file(root / "report.json", report_to_json(r).dump(2) + "\n");

  std::string matrix = "algorithm,mode,num_features,mean_accuracy" +
                       seed_columns(r.seeds) + "\n";
  for (const MatrixCell &c : r.matrix) {
    matrix += fmt::format("{},{},{},{}{}\n", algorithm_name(c.algorithm),
                          mode_name(c.mode), c.num_features, c.accuracy.mean,
                          seed_values(c.accuracy));
  }
  write_file(root / "matrix.csv", matrix);

  std::string one_page =
      "algorithm,ratio,mean_accuracy" + seed_columns(r.seeds) + "\n";
  for (const OnePageCell &c : r.one_page) {
    one_page += fmt::format("{},{},{}{}\n", algorithm_name(r.one_page_algorithm),
                            c.ratio, c.accuracy.mean, seed_values(c.accuracy));
  }
  write_file(root / "onepage.csv", one_page);

  std::string early = "algorithm,horizon_s,mode,mean_comments,mean_accuracy" +
                      seed_columns(r.seeds) + "\n";
  for (const EarlyCell &c : r.early) {
    early += fmt::format("{},{},{},{},{}{}\n", algorithm_name(r.early_algorithm),
                         c.horizon, mode_name(c.mode), c.mean_comments,
                         c.accuracy.mean, seed_values(c.accuracy));
  }
  write_file(root / "early.csv", early);

  std::string importance = "method,seed,rank,feature,score\n";
  for (const auto *group : {&r.permutation, &r.gain}) {
    for (const ImportanceReport &rep : *group) {
      for (std::size_t k = 0; k < rep.ranking.size(); ++k) {
        const int f = rep.ranking[k];
        importance += fmt::format("{},{},{},{},{}\n", rep.method, rep.seed,
                                  k + 1, rep.feature_names[f], rep.scores[f]);
      }
    }
  }
  write_file(root / "importance.csv", importance);

  std::string ks = "grouping,feature,group_a,group_b,n1,n2,D,p_value\n";
  for (const auto &[grouping, rows] :
       {std::pair{"label", &r.ks_label}, std::pair{"topic", &r.ks_topic}}) {
    for (const KsRow &row : *rows) {
      ks += fmt::format("{},{},{},{},{},{},{},{}\n", grouping, row.feature,
                        row.group_a, row.group_b, row.result.n1, row.result.n2,
                        row.result.statistic, row.result.p_value);
    }
  }
  write_file(root / "ks.csv", ks);

  // Plots.
  {
    std::vector<std::string> groups, series;
    std::vector<FeatureMode> modes;
    std::vector<Algorithm> algorithms;
    for (const MatrixCell &c : r.matrix) {
      if (std::find(modes.begin(), modes.end(), c.mode) == modes.end()) {
        modes.push_back(c.mode);
        groups.emplace_back(mode_name(c.mode));
      }
      if (std::find(algorithms.begin(), algorithms.end(), c.algorithm) ==
          algorithms.end()) {
        algorithms.push_back(c.algorithm);
        series.emplace_back(algorithm_name(c.algorithm));
      }
    }
    std::vector<std::vector<double>> values(
        algorithms.size(), std::vector<double>(modes.size(), 0.0));
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
      for (std::size_t m = 0; m < modes.size(); ++m) {
        if (const MatrixCell *c = r.cell(algorithms[a], modes[m])) {
          values[a][m] = c->accuracy.mean;
        }
      }
    }
    write_file(root / "plots" / "accuracy.svg",
               grouped_bar_chart("Held-out accuracy by feature mode", groups,
                                 series, values, "accuracy"));
  }
  if (!r.permutation.empty()) {
    const auto &names = r.permutation.front().feature_names;
    std::vector<double> mean(names.size(), 0.0);
    for (const auto &rep : r.permutation) {
      for (std::size_t f = 0; f < names.size(); ++f) {
        mean[f] += rep.scores[f] / r.permutation.size();
      }
    }
    write_file(root / "plots" / "importance.svg",
               bar_chart("Permutation importance (mean over seeds)", names,
                         mean, "accuracy drop"));
  }
  if (!r.early.empty()) {
    std::vector<Timestamp> horizons;
    std::vector<FeatureMode> modes;
    for (const EarlyCell &c : r.early) {
      if (std::find(horizons.begin(), horizons.end(), c.horizon) ==
          horizons.end()) {
        horizons.push_back(c.horizon);
      }
      if (std::find(modes.begin(), modes.end(), c.mode) == modes.end()) {
        modes.push_back(c.mode);
      }
    }
    std::vector<std::string> groups, series;
    for (Timestamp h : horizons) groups.push_back(fmt::format("{} h", h / 3600.0));
    for (FeatureMode m : modes) series.emplace_back(mode_name(m));
    std::vector<std::vector<double>> values(
        modes.size(), std::vector<double>(horizons.size(), 0.0));
    for (const EarlyCell &c : r.early) {
      const auto m = std::find(modes.begin(), modes.end(), c.mode) - modes.begin();
      const auto h =
          std::find(horizons.begin(), horizons.end(), c.horizon) - horizons.begin();
      values[m][h] = c.accuracy.mean;
    }
    write_file(root / "plots" / "early.svg",
               grouped_bar_chart("Early detection accuracy", groups, series,
                                 values, "accuracy"));
  }
  for (const char *feature : {"p_a", "p_t"}) {
    const int f = feature_index(feature);
    std::map<std::string, std::vector<double>> by_topic;
    for (std::size_t i = 0; i < r.vectors.size(); ++i) {
      by_topic[r.topics[i]].push_back(r.vectors[i].values[f]);
    }
    std::vector<std::string> labels;
    std::vector<std::vector<double>> samples;
    for (auto &[topic, values] : by_topic) {
      labels.push_back(topic);
      samples.push_back(std::move(values));
    }
    write_file(root / "plots" / fmt::format("topics_{}.svg", feature),
               box_plot(fmt::format("{} by topic", feature), labels, samples,
                        feature));
  }
}

}  // namespace controversy
