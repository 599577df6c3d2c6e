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
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "controversy/random.h"

namespace controversy {

double kolmogorov_q(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  double q;
  if (lambda < 1.18) {
    // Small-lambda form of the CDF, which converges quickly there.
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double y = -pi2 / (8.0 * lambda * lambda);
    double cdf = 0.0;
    for (int k = 1; k <= 40; k += 2) cdf += std::exp(k * k * y);
    cdf *= std::sqrt(2.0 * std::numbers::pi) / lambda;
    q = 1.0 - cdf;
  } else {
    q = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
      const double term = std::exp(-2.0 * k * k * lambda * lambda);
      q += sign * term;
      if (term < 1e-300) break;
      sign = -sign;
    }
    q *= 2.0;
  }
  return std::clamp(q, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("ks_two_sample: both samples must be non-empty");
  }
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  for (double v : x) {
    if (!std::isfinite(v)) throw std::invalid_argument("ks: non-finite value");
  }
  for (double v : y) {
    if (!std::isfinite(v)) throw std::invalid_argument("ks: non-finite value");
  }
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const std::int64_t n1 = static_cast<std::int64_t>(x.size());
  const std::int64_t n2 = static_cast<std::int64_t>(y.size());
  // Walk the pooled support; after consuming every copy of a value the gap
  // is |i/n1 - j/n2|, kept as the integer |i n2 - j n1| until the end.
  std::size_t i = 0, j = 0;
  std::int64_t best = 0;
  while (i < x.size() || j < y.size()) {
    double v;
    if (j == y.size() || (i < x.size() && x[i] <= y[j])) {
      v = x[i];
    } else {
      v = y[j];
    }
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    const std::int64_t gap = static_cast<std::int64_t>(i) * n2 -
                             static_cast<std::int64_t>(j) * n1;
    best = std::max(best, gap < 0 ? -gap : gap);
  }
  KsResult r;
  r.n1 = static_cast<int>(n1);
  r.n2 = static_cast<int>(n2);
  r.statistic = static_cast<double>(best) / static_cast<double>(n1 * n2);
  const double ne = static_cast<double>(n1) * static_cast<double>(n2) /
                    static_cast<double>(n1 + n2);
  r.p_value = best == 0 ? 1.0 : kolmogorov_q(std::sqrt(ne) * r.statistic);
  return r;
}

std::vector<KsRow> ks_table(std::span<const FeatureVector> rows,
                            std::span<const std::string> groups,
                            std::span<const int> features) {
  if (groups.size() != rows.size()) {
    throw std::invalid_argument("ks_table: one group per row required");
  }
  std::map<std::string, std::vector<int>> members;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    members[groups[i]].push_back(static_cast<int>(i));
  }
  std::vector<std::string> names;
  for (const auto &[name, idx] : members) names.push_back(name);

  std::vector<KsRow> out;
  const auto &columns = feature_names();
  for (int f : features) {
    if (f < 0 || f >= kNumFeatures) {
      throw std::invalid_argument("ks_table: feature index out of range");
    }
    for (std::size_t g = 0; g < names.size(); ++g) {
      for (std::size_t h = g + 1; h < names.size(); ++h) {
        std::vector<double> a, b;
        for (int i : members[names[g]]) a.push_back(rows[i].values[f]);
        for (int i : members[names[h]]) b.push_back(rows[i].values[f]);
        out.push_back({std::string(columns[f]), names[g], names[h],
                       ks_two_sample(a, b)});
      }
    }
  }
  return out;
}

void write_ks_csv(std::ostream &out, std::span<const KsRow> rows) {
  out << "feature,group_a,group_b,n1,n2,D,p_value\n";
  for (const KsRow &r : rows) {
    out << fmt::format("{},{},{},{},{},{},{}\n", r.feature, r.group_a,
                       r.group_b, r.result.n1, r.result.n2, r.result.statistic,
                       r.result.p_value);
  }
}

nlohmann::json ks_to_json(std::span<const KsRow> rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const KsRow &r : rows) {
    out.push_back({{"feature", r.feature},
                   {"group_a", r.group_a},
                   {"group_b", r.group_b},
                   {"n1", r.result.n1},
                   {"n2", r.result.n2},
                   {"D", r.result.statistic},
                   {"p_value", r.result.p_value}});
  }
  return out;
}

std::vector<int> rank_scores(std::span<const double> scores) {
  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int l, int r) { return scores[l] > scores[r]; });
  return order;
}

ImportanceReport permutation_importance(const Model &model,
                                        const Dataset &data, int repeats,
                                        std::uint64_t seed) {
  if (repeats < 1) {
    throw std::invalid_argument("permutation_importance: repeats must be >= 1");
  }
  check_manifest(model, data.feature_names);
  ImportanceReport report;
  report.method = "permutation";
  report.feature_names = data.feature_names;
  report.seed = seed;
  report.repeats = repeats;
  report.baseline_accuracy = accuracy(predict_rows(model, data.rows),
                                      data.labels);
  const int d = data.num_features();
  const int n = data.num_rows();
  report.scores.assign(d, 0.0);
  std::vector<std::vector<double>> shuffled = data.rows;
  std::vector<double> column(n);
  for (int f = 0; f < d; ++f) {
    double total_drop = 0.0;
    for (int r = 0; r < repeats; ++r) {
      for (int i = 0; i < n; ++i) column[i] = data.rows[i][f];
      Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(f),
                                 static_cast<std::uint64_t>(r)}));
      shuffle(rng, column);
      for (int i = 0; i < n; ++i) shuffled[i][f] = column[i];
      const double acc =
          accuracy(predict_rows(model, shuffled), data.labels);
      total_drop += report.baseline_accuracy - acc;
    }
    for (int i = 0; i < n; ++i) shuffled[i][f] = data.rows[i][f];
    report.scores[f] = total_drop / repeats;
  }
  report.ranking = rank_scores(report.scores);
  return report;
}

ImportanceReport gain_importance(const Model &model) {
  if (!is_tree_model(model.algorithm)) {
    throw std::invalid_argument(fmt::format(
        "gain importance needs a tree model, got {}",
        algorithm_name(model.algorithm)));
  }
  const auto &ens = std::get<EnsembleParams>(model.params);
  ImportanceReport report;
  report.method = "gain";
  report.feature_names = model.feature_names;
  report.seed = model.seed;
  report.scores.assign(model.feature_names.size(), 0.0);
  double total = 0.0;
  for (const Tree &t : ens.trees) {
    for (const TreeNode &n : t.nodes) {
      if (n.is_leaf()) continue;
      report.scores[n.feature] += n.gain;
      total += n.gain;
    }
  }
  if (total > 0.0) {
    for (double &s : report.scores) s /= total;
  }
  report.ranking = rank_scores(report.scores);
  return report;
}

nlohmann::json importance_to_json(const ImportanceReport &report) {
  nlohmann::json scores = nlohmann::json::object();
  for (std::size_t i = 0; i < report.feature_names.size(); ++i) {
    scores[report.feature_names[i]] = report.scores[i];
  }
  std::vector<std::string> ranking;
  for (int i : report.ranking) ranking.push_back(report.feature_names[i]);
  nlohmann::json j = {{"method", report.method},
                      {"scores", scores},
                      {"ranking", ranking},
                      {"seed", report.seed}};
  if (report.method == "permutation") {
    j["repeats"] = report.repeats;
    j["baseline_accuracy"] = report.baseline_accuracy;
  }
  return j;
}

}  // namespace controversy
