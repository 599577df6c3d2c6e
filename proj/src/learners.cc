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

#include "controversy/learners.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "controversy/binning.h"
#include "controversy/efb.h"
#include "controversy/errors.h"
#include "controversy/goss.h"
#include "controversy/model_io.h"
#include "controversy/random.h"

namespace controversy {

namespace {

constexpr double kMinSplitGain = 1e-12;

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

std::string_view algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kLogReg: return "logreg";
    case Algorithm::kKnn: return "knn";
    case Algorithm::kDecisionTree: return "dtree";
    case Algorithm::kGbdt: return "gbdt";
    case Algorithm::kGbdtGossEfb: return "gbdt_goss_efb";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::kLogReg, Algorithm::kKnn,
                      Algorithm::kDecisionTree, Algorithm::kGbdt,
                      Algorithm::kGbdtGossEfb}) {
    if (algorithm_name(a) == name) return a;
  }
  throw std::invalid_argument(fmt::format(
      "unknown algorithm '{}' (logreg, knn, dtree, gbdt, gbdt_goss_efb)",
      name));
}

bool is_tree_model(Algorithm algorithm) {
  return algorithm == Algorithm::kDecisionTree ||
         algorithm == Algorithm::kGbdt || algorithm == Algorithm::kGbdtGossEfb;
}

void Dataset::validate() const {
  if (labels.size() != rows.size()) {
    throw DataError("dataset has " + std::to_string(rows.size()) +
                    " rows but " + std::to_string(labels.size()) + " labels");
  }
  if (!ids.empty() && ids.size() != rows.size()) {
    throw DataError("dataset ids do not match rows");
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != feature_names.size()) {
      throw DataError(fmt::format("row {} has {} values, expected {}", r,
                                  rows[r].size(), feature_names.size()));
    }
    for (double v : rows[r]) {
      if (!std::isfinite(v)) {
        throw DataError(fmt::format("row {} has a non-finite value", r));
      }
    }
    if (labels[r] != 0 && labels[r] != 1) {
      throw DataError(fmt::format("row {} has non-binary label", r));
    }
  }
}

Dataset Dataset::subset(std::span<const int> indices) const {
  Dataset out;
  out.feature_names = feature_names;
  out.rows.reserve(indices.size());
  out.labels.reserve(indices.size());
  for (int i : indices) {
    out.rows.push_back(rows[i]);
    out.labels.push_back(labels[i]);
    if (!ids.empty()) out.ids.push_back(ids[i]);
  }
  return out;
}

Dataset make_dataset(std::span<const FeatureVector> vectors,
                     const FeatureMask &mask) {
  Dataset data;
  const auto &names = feature_names();
  for (int i = 0; i < kNumFeatures; ++i) {
    if (mask.test(i)) data.feature_names.emplace_back(names[i]);
  }
  for (const FeatureVector &fv : vectors) {
    if (!fv.label) throw DataError("post " + fv.post_id + " has no label");
    std::vector<double> row;
    row.reserve(mask.count());
    for (int i = 0; i < kNumFeatures; ++i) {
      if (mask.test(i)) row.push_back(fv.values[i]);
    }
    data.rows.push_back(std::move(row));
    data.labels.push_back(*fv.label ? 1 : 0);
    data.ids.push_back(fv.post_id);
  }
  return data;
}

void GbdtConfig::validate() const {
  if (num_trees < 0) throw std::invalid_argument("num_trees must be >= 0");
  if (!(learning_rate > 0.0)) {
    throw std::invalid_argument("learning_rate must be > 0");
  }
  if (max_leaves < 2) throw std::invalid_argument("max_leaves must be >= 2");
  if (histogram_bins < 2 || histogram_bins > 4096) {
    throw std::invalid_argument("histogram_bins must be in [2, 4096]");
  }
  if (!(goss_a >= 0.0 && goss_a <= 1.0) || !(goss_b >= 0.0 && goss_b <= 1.0)) {
    throw std::invalid_argument("goss_a and goss_b must lie in [0, 1]");
  }
  if (goss_a + goss_b > 1.0 + 1e-12) {
    throw std::invalid_argument("goss_a + goss_b must be <= 1");
  }
  if (efb_conflict_K < 0) {
    throw std::invalid_argument("efb_conflict_K must be >= 0");
  }
  if (min_samples_leaf < 1) {
    throw std::invalid_argument("min_samples_leaf must be >= 1");
  }
  if (!(l2 >= 0.0)) throw std::invalid_argument("l2 must be >= 0");
}

double Tree::predict(std::span<const double> row) const {
  int node = 0;
  while (!nodes[node].is_leaf()) {
    const TreeNode &n = nodes[node];
    node = row[n.feature] <= n.threshold ? n.left : n.right;
  }
  return nodes[node].value;
}

int Tree::num_leaves() const {
  return static_cast<int>(std::count_if(
      nodes.begin(), nodes.end(), [](const TreeNode &n) { return n.is_leaf(); }));
}

Standardizer Standardizer::Fit(const Dataset &data) {
  Standardizer s;
  const int d = data.num_features();
  const int n = data.num_rows();
  s.mean.assign(d, 0.0);
  s.scale.assign(d, 1.0);
  if (n == 0) return s;
  for (int j = 0; j < d; ++j) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += data.rows[i][j];
    const double mean = sum / n;
    double var = 0.0;
    for (int i = 0; i < n; ++i) {
      const double dx = data.rows[i][j] - mean;
      var += dx * dx;
    }
    const double sd = std::sqrt(var / n);
    s.mean[j] = mean;
    s.scale[j] = sd > 1e-12 ? sd : 1.0;
  }
  return s;
}

std::vector<double> Standardizer::apply(std::span<const double> row) const {
  std::vector<double> out(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) {
    out[j] = (row[j] - mean[j]) / scale[j];
  }
  return out;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

double log_loss(std::span<const double> scores, std::span<const int> labels) {
  if (scores.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const double p = std::clamp(scores[i], 1e-15, 1.0 - 1e-15);
    total -= labels[i] == 1 ? std::log(p) : std::log(1.0 - p);
  }
  return total / static_cast<double>(scores.size());
}

double accuracy(std::span<const Prediction> predictions,
                std::span<const int> labels) {
  if (predictions.size() != labels.size()) {
    throw std::invalid_argument("accuracy: size mismatch");
  }
  if (predictions.empty()) return 0.0;
  int correct = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (predictions[i].label == labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(labels.size());
}

namespace {

// ----- logistic regression -------------------------------------------------

double logreg_objective(const Eigen::MatrixXd &x, const Eigen::VectorXd &y,
                        const Eigen::VectorXd &w, double l2) {
  const Eigen::VectorXd z = x * w;
  double loss = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    // log(1 + e^z) - y z, computed stably
    const double zi = z[i];
    loss += (zi > 0 ? zi + std::log1p(std::exp(-zi)) : std::log1p(std::exp(zi))) -
            y[i] * zi;
  }
  const Eigen::Index d = w.size() - 1;
  return loss + 0.5 * l2 * w.head(d).squaredNorm();
}

LogRegParams train_logreg(const Dataset &data, const LogRegConfig &config) {
  LogRegParams params;
  params.standardizer = Standardizer::Fit(data);
  const int n = data.num_rows();
  const int d = data.num_features();
  Eigen::MatrixXd x(n, d + 1);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    const auto z = params.standardizer.apply(data.rows[i]);
    for (int j = 0; j < d; ++j) x(i, j) = z[j];
    x(i, d) = 1.0;
    y[i] = data.labels[i];
  }
  Eigen::VectorXd w = Eigen::VectorXd::Zero(d + 1);
  Eigen::VectorXd penalty = Eigen::VectorXd::Constant(d + 1, config.l2);
  penalty[d] = 0.0;

  double objective = logreg_objective(x, y, w, config.l2);
  int iteration = 0;
  for (; iteration < config.max_iterations; ++iteration) {
    Eigen::VectorXd p(n);
    Eigen::VectorXd h(n);
    const Eigen::VectorXd z = x * w;
    for (int i = 0; i < n; ++i) {
      p[i] = sigmoid(z[i]);
      h[i] = std::max(p[i] * (1.0 - p[i]), 1e-12);
    }
    const Eigen::VectorXd grad =
        x.transpose() * (p - y) + penalty.cwiseProduct(w);
    Eigen::MatrixXd hessian = x.transpose() * h.asDiagonal() * x;
    hessian.diagonal() += penalty + Eigen::VectorXd::Constant(d + 1, 1e-10);
    const Eigen::VectorXd step = hessian.ldlt().solve(grad);

    // Backtracking keeps every iteration a descent step.
    double t = 1.0;
    Eigen::VectorXd candidate = w - step;
    double next = logreg_objective(x, y, candidate, config.l2);
    while (next > objective && t > 1e-8) {
      t *= 0.5;
      candidate = w - t * step;
      next = logreg_objective(x, y, candidate, config.l2);
    }
    const double moved = (t * step).cwiseAbs().maxCoeff();
    w = candidate;
    objective = next;
    if (moved < config.tolerance) {
      ++iteration;
      break;
    }
  }
  params.weights.assign(w.data(), w.data() + d);
  params.intercept = w[d];
  params.iterations = iteration;
  return params;
}

// ----- k nearest neighbours -------------------------------------------------

KnnParams train_knn(const Dataset &data, const KnnConfig &config) {
  if (config.k < 1) throw std::invalid_argument("knn k must be >= 1");
  if (config.k > data.num_rows()) {
    throw DataError(fmt::format("knn k = {} exceeds the {} training rows",
                                config.k, data.num_rows()));
  }
  KnnParams params;
  params.standardizer = Standardizer::Fit(data);
  params.k = config.k;
  for (const auto &row : data.rows) {
    params.points.push_back(params.standardizer.apply(row));
  }
  params.labels = data.labels;
  return params;
}

double knn_score(const KnnParams &params, std::span<const double> raw) {
  const auto q = params.standardizer.apply(raw);
  std::vector<std::pair<double, int>> dist(params.points.size());
  for (std::size_t i = 0; i < params.points.size(); ++i) {
    double d2 = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) {
      const double dx = params.points[i][j] - q[j];
      d2 += dx * dx;
    }
    dist[i] = {d2, static_cast<int>(i)};
  }
  std::partial_sort(dist.begin(), dist.begin() + params.k, dist.end());
  int positives = 0;
  for (int i = 0; i < params.k; ++i) positives += params.labels[dist[i].second];
  return static_cast<double>(positives) / params.k;
}

// ----- CART decision tree ---------------------------------------------------

struct CartBuilder {
  const Dataset &data;
  const DecisionTreeConfig &config;
  Tree tree;

  static double gini(double pos, double total) {
    if (total <= 0) return 0.0;
    const double p = pos / total;
    return 1.0 - p * p - (1.0 - p) * (1.0 - p);
  }

  int build(std::vector<int> rows, int depth) {
    const int node = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    int pos = 0;
    for (int r : rows) pos += data.labels[r];
    const int total = static_cast<int>(rows.size());
    tree.nodes[node].count = total;
    tree.nodes[node].value = total > 0 ? static_cast<double>(pos) / total : 0.0;
    if (pos == 0 || pos == total || depth >= config.max_depth ||
        total < 2 * config.min_samples_leaf) {
      return node;
    }

    const double parent_impurity = total * gini(pos, total);
    double best_gain = kMinSplitGain;
    int best_feature = -1;
    double best_threshold = 0.0;
    std::vector<int> order = rows;
    for (int f = 0; f < data.num_features(); ++f) {
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double va = data.rows[a][f], vb = data.rows[b][f];
        return va < vb || (va == vb && a < b);
      });
      int left_pos = 0;
      for (int i = 0; i + 1 < total; ++i) {
        left_pos += data.labels[order[i]];
        const double v = data.rows[order[i]][f];
        const double next = data.rows[order[i + 1]][f];
        if (v == next) continue;
        const int left_n = i + 1;
        const int right_n = total - left_n;
        if (left_n < config.min_samples_leaf ||
            right_n < config.min_samples_leaf) {
          continue;
        }
        const double gain = parent_impurity - left_n * gini(left_pos, left_n) -
                            right_n * gini(pos - left_pos, right_n);
        if (gain > best_gain) {
          best_gain = gain;
          best_feature = f;
          const double mid = v + (next - v) / 2.0;
          best_threshold = mid < next ? mid : v;
        }
      }
    }
    if (best_feature < 0) return node;

    std::vector<int> left, right;
    for (int r : rows) {
      (data.rows[r][best_feature] <= best_threshold ? left : right).push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();
    const int l = build(std::move(left), depth + 1);
    const int rr = build(std::move(right), depth + 1);
    TreeNode &n = tree.nodes[node];
    n.feature = best_feature;
    n.threshold = best_threshold;
    n.gain = best_gain / data.num_rows();
    n.left = l;
    n.right = rr;
    return node;
  }
};

EnsembleParams train_dtree(const Dataset &data,
                           const DecisionTreeConfig &config) {
  if (config.max_depth < 0) throw std::invalid_argument("max_depth must be >= 0");
  if (config.min_samples_leaf < 1) {
    throw std::invalid_argument("min_samples_leaf must be >= 1");
  }
  CartBuilder builder{data, config, {}};
  std::vector<int> rows(data.num_rows());
  std::iota(rows.begin(), rows.end(), 0);
  builder.build(std::move(rows), 0);
  EnsembleParams params;
  params.trees.push_back(std::move(builder.tree));
  return params;
}

// ----- histogram gradient boosting ------------------------------------------

struct HistBin {
  double g = 0.0;
  double h = 0.0;
  int count = 0;
};

// Binned training matrix plus the column groups histograms are built over.
// Without bundling every feature is its own group; the histogram code is
// identical either way, which keeps lossless bundling bit-exact.
struct BinnedMatrix {
  std::vector<BinMapper> mappers;
  std::vector<std::vector<Bin>> columns;  // [feature][row]
  std::vector<int> num_bins;
  std::vector<int> default_bins;
  std::vector<FeatureBundle> bundles;
  std::vector<std::vector<Bin>> bundle_columns;  // [bundle][row]
  std::vector<std::pair<int, int>> member_of;    // feature -> (bundle, slot)

  void set_singleton_bundles() {
    bundles.clear();
    for (std::size_t f = 0; f < columns.size(); ++f) {
      FeatureBundle b;
      b.features = {static_cast<int>(f)};
      b.offsets = {1};
      b.num_bins = num_bins[f];
      bundles.push_back(std::move(b));
    }
    finish_bundles();
  }

  void finish_bundles() {
    bundle_columns.clear();
    member_of.assign(columns.size(), {-1, -1});
    for (std::size_t b = 0; b < bundles.size(); ++b) {
      bundle_columns.push_back(merge_bundle(bundles[b], columns, default_bins));
      for (std::size_t m = 0; m < bundles[b].features.size(); ++m) {
        member_of[bundles[b].features[m]] = {static_cast<int>(b),
                                             static_cast<int>(m)};
      }
    }
  }
};

// Per-feature histogram for rows, reconstructed from bundle histograms.
// Non-default bins are accumulated directly; the default bin receives the
// remainder of the node totals.
void feature_histograms(const BinnedMatrix &m, std::span<const int> rows,
                        std::span<const double> grad,
                        std::span<const double> hess,
                        std::vector<std::vector<HistBin>> &out) {
  HistBin total;
  for (int r : rows) {
    total.g += grad[r];
    total.h += hess[r];
    ++total.count;
  }
  std::vector<std::vector<HistBin>> bundle_hist(m.bundles.size());
  for (std::size_t b = 0; b < m.bundles.size(); ++b) {
    bundle_hist[b].assign(m.bundles[b].num_bins, HistBin{});
    const auto &col = m.bundle_columns[b];
    for (int r : rows) {
      const Bin bin = col[r];
      if (bin == 0) continue;
      HistBin &slot = bundle_hist[b][bin];
      slot.g += grad[r];
      slot.h += hess[r];
      ++slot.count;
    }
  }
  out.resize(m.columns.size());
  for (std::size_t f = 0; f < m.columns.size(); ++f) {
    const auto [b, slot] = m.member_of[f];
    const int width = m.num_bins[f];
    const int def = m.default_bins[f];
    auto &hist = out[f];
    hist.assign(width, HistBin{});
    HistBin rest;
    for (int raw = 0; raw < width; ++raw) {
      if (raw == def) continue;
      const int merged = bundle_bin(m.bundles[b], slot, raw, def);
      hist[raw] = bundle_hist[b][merged];
      rest.g += hist[raw].g;
      rest.h += hist[raw].h;
      rest.count += hist[raw].count;
    }
    hist[def] = {total.g - rest.g, total.h - rest.h, total.count - rest.count};
  }
}

SplitCandidate search_split(const std::vector<std::vector<HistBin>> &hists,
                            const GbdtConfig &config, const HistBin &total,
                            std::span<const char> usable_features) {
  SplitCandidate best;
  best.gain = kMinSplitGain;
  const double parent = total.g * total.g / (total.h + config.l2);
  for (std::size_t f = 0; f < hists.size(); ++f) {
    if (!usable_features.empty() && !usable_features[f]) continue;
    const auto &hist = hists[f];
    HistBin left;
    for (std::size_t b = 0; b + 1 < hist.size(); ++b) {
      left.g += hist[b].g;
      left.h += hist[b].h;
      left.count += hist[b].count;
      const int right_count = total.count - left.count;
      if (left.count < config.min_samples_leaf) continue;
      if (right_count < config.min_samples_leaf) break;
      const double right_g = total.g - left.g;
      const double right_h = total.h - left.h;
      if (left.h < config.min_child_hessian ||
          right_h < config.min_child_hessian) {
        continue;
      }
      const double gain = left.g * left.g / (left.h + config.l2) +
                          right_g * right_g / (right_h + config.l2) - parent;
      if (gain > best.gain) {
        best.gain = gain;
        best.feature = static_cast<int>(f);
        best.bin = static_cast<int>(b);
      }
    }
  }
  return best;
}

struct LeafWork {
  int node = 0;
  int depth = 0;
  std::vector<int> rows;  // ascending
  HistBin total;
  SplitCandidate split;
};

HistBin node_totals(std::span<const int> rows, std::span<const double> grad,
                    std::span<const double> hess) {
  HistBin t;
  for (int r : rows) {
    t.g += grad[r];
    t.h += hess[r];
    ++t.count;
  }
  return t;
}

// Leaf-wise growth: repeatedly split the leaf with the largest gain until
// max_leaves is reached or no leaf has a positive-gain split.
Tree grow_tree(const BinnedMatrix &m, std::vector<int> rows,
               std::span<const double> grad, std::span<const double> hess,
               const GbdtConfig &config) {
  Tree tree;
  std::vector<std::vector<HistBin>> hists;
  auto evaluate = [&](LeafWork &leaf) {
    leaf.total = node_totals(leaf.rows, grad, hess);
    leaf.split = SplitCandidate{};
    if (config.max_depth > 0 && leaf.depth >= config.max_depth) return;
    if (leaf.total.count < 2 * config.min_samples_leaf) return;
    feature_histograms(m, leaf.rows, grad, hess, hists);
    leaf.split = search_split(hists, config, leaf.total, {});
  };

  std::vector<LeafWork> open;
  tree.nodes.emplace_back();
  open.push_back({0, 0, std::move(rows), {}, {}});
  evaluate(open.back());
  int leaves = 1;
  while (leaves < config.max_leaves) {
    int pick = -1;
    for (std::size_t i = 0; i < open.size(); ++i) {
      if (open[i].split.feature < 0) continue;
      if (pick < 0 || open[i].split.gain > open[pick].split.gain) {
        pick = static_cast<int>(i);
      }
    }
    if (pick < 0) break;
    LeafWork leaf = std::move(open[pick]);
    open.erase(open.begin() + pick);

    const int f = leaf.split.feature;
    const auto &col = m.columns[f];
    LeafWork left{static_cast<int>(tree.nodes.size()), leaf.depth + 1, {}, {}, {}};
    LeafWork right{left.node + 1, leaf.depth + 1, {}, {}, {}};
    for (int r : leaf.rows) {
      (col[r] <= leaf.split.bin ? left.rows : right.rows).push_back(r);
    }
    tree.nodes.emplace_back();
    tree.nodes.emplace_back();
    TreeNode &n = tree.nodes[leaf.node];
    n.feature = f;
    n.threshold = m.mappers[f].threshold(leaf.split.bin);
    n.gain = leaf.split.gain;
    n.left = left.node;
    n.right = right.node;
    n.count = leaf.total.count;
    evaluate(left);
    evaluate(right);
    open.push_back(std::move(left));
    open.push_back(std::move(right));
    ++leaves;
  }

  for (const LeafWork &leaf : open) {
    TreeNode &n = tree.nodes[leaf.node];
    n.count = leaf.total.count;
    n.value = -config.learning_rate * leaf.total.g / (leaf.total.h + config.l2);
  }
  return tree;
}

BinnedMatrix bin_dataset(const Dataset &data, int max_bins) {
  BinnedMatrix m;
  const int d = data.num_features();
  const int n = data.num_rows();
  std::vector<double> column(n);
  for (int f = 0; f < d; ++f) {
    for (int i = 0; i < n; ++i) column[i] = data.rows[i][f];
    BinMapper mapper = fit_bins(column, max_bins);
    std::vector<Bin> binned(n);
    for (int i = 0; i < n; ++i) binned[i] = mapper.bin(column[i]);
    m.num_bins.push_back(mapper.num_bins());
    m.default_bins.push_back(mapper.default_bin);
    m.mappers.push_back(std::move(mapper));
    m.columns.push_back(std::move(binned));
  }
  return m;
}

EnsembleParams train_gbdt(const Dataset &data, GbdtConfig config,
                          bool goss_efb) {
  config.validate();
  const int n = data.num_rows();
  BinnedMatrix m = bin_dataset(data, config.histogram_bins);
  EnsembleParams params;
  if (goss_efb) {
    m.bundles = efb_bundle(m.columns, config.efb_conflict_K, m.default_bins,
                           m.num_bins);
    m.finish_bundles();
    for (const auto &b : m.bundles) params.bundles.push_back(b.features);
  } else {
    m.set_singleton_bundles();
  }

  int positives = std::accumulate(data.labels.begin(), data.labels.end(), 0);
  const double prior = static_cast<double>(positives) / n;
  params.base_score = std::log(prior / (1.0 - prior));

  std::vector<double> raw(n, params.base_score);
  std::vector<double> grad(n), hess(n), wgrad(n), whess(n), prob(n);
  std::vector<int> all_rows(n);
  std::iota(all_rows.begin(), all_rows.end(), 0);

  for (int round = 0; round < config.num_trees; ++round) {
    for (int i = 0; i < n; ++i) {
      const double p = sigmoid(raw[i]);
      grad[i] = p - data.labels[i];
      hess[i] = p * (1.0 - p);
    }
    std::vector<int> rows;
    if (goss_efb) {
      const GossSample sample = goss_sample(
          grad, config.goss_a, config.goss_b,
          derive_seed(config.seed, {static_cast<std::uint64_t>(round)}));
      std::fill(wgrad.begin(), wgrad.end(), 0.0);
      std::fill(whess.begin(), whess.end(), 0.0);
      for (std::size_t k = 0; k < sample.indices.size(); ++k) {
        const int r = sample.indices[k];
        wgrad[r] = grad[r] * sample.weights[k];
        whess[r] = hess[r] * sample.weights[k];
      }
      rows = sample.indices;
    } else {
      wgrad = grad;
      whess = hess;
      rows = all_rows;
    }
    Tree tree = grow_tree(m, std::move(rows), wgrad, whess, config);
    for (int i = 0; i < n; ++i) {
      raw[i] += tree.predict(data.rows[i]);
      prob[i] = sigmoid(raw[i]);
    }
    params.train_loss.push_back(log_loss(prob, data.labels));
    params.trees.push_back(std::move(tree));
  }
  return params;
}

void require_two_classes(const Dataset &data, Algorithm algorithm) {
  const int positives =
      std::accumulate(data.labels.begin(), data.labels.end(), 0);
  if (positives == 0 || positives == data.num_rows()) {
    throw DataError(fmt::format(
        "{} needs both classes in the training data, got only label {}",
        algorithm_name(algorithm), positives == 0 ? 0 : 1));
  }
}

}  // namespace

SplitCandidate best_histogram_split(
    std::span<const std::vector<std::uint16_t>> binned,
    std::span<const int> num_bins, std::span<const int> rows,
    std::span<const double> grad, std::span<const double> hess,
    const GbdtConfig &config) {
  BinnedMatrix m;
  m.columns.assign(binned.begin(), binned.end());
  m.num_bins.assign(num_bins.begin(), num_bins.end());
  m.default_bins.assign(m.columns.size(), 0);
  m.set_singleton_bundles();
  std::vector<std::vector<HistBin>> hists;
  feature_histograms(m, rows, grad, hess, hists);
  return search_split(hists, config, node_totals(rows, grad, hess), {});
}

Model train(Algorithm algorithm, const Dataset &data,
            const LearnerConfig &config) {
  data.validate();
  if (data.num_rows() == 0) throw DataError("cannot train on an empty dataset");
  if (data.num_features() == 0) throw DataError("dataset has no features");

  Model model;
  model.algorithm = algorithm;
  model.feature_names = data.feature_names;
  model.seed = config.seed;
  LearnerConfig effective = config;
  effective.gbdt.seed = config.seed;
  model.config_json = to_json(effective).dump();
  model.config_hash = fnv1a_hex(model.config_json);

  switch (algorithm) {
    case Algorithm::kLogReg:
      require_two_classes(data, algorithm);
      model.params = train_logreg(data, config.logreg);
      break;
    case Algorithm::kKnn:
      model.params = train_knn(data, config.knn);
      break;
    case Algorithm::kDecisionTree:
      model.params = train_dtree(data, config.dtree);
      break;
    case Algorithm::kGbdt:
    case Algorithm::kGbdtGossEfb:
      require_two_classes(data, algorithm);
      model.params = train_gbdt(data, effective.gbdt,
                                algorithm == Algorithm::kGbdtGossEfb);
      break;
  }
  return model;
}

void check_manifest(const Model &model,
                    std::span<const std::string> feature_names) {
  if (std::equal(model.feature_names.begin(), model.feature_names.end(),
                 feature_names.begin(), feature_names.end())) {
    return;
  }
  std::set<std::string> have(feature_names.begin(), feature_names.end());
  std::set<std::string> want(model.feature_names.begin(),
                             model.feature_names.end());
  std::string missing, extra;
  for (const auto &f : want) {
    if (!have.count(f)) missing += (missing.empty() ? "" : ",") + f;
  }
  for (const auto &f : have) {
    if (!want.count(f)) extra += (extra.empty() ? "" : ",") + f;
  }
  if (missing.empty() && extra.empty()) {
    throw DataError("feature columns are not in the model's order");
  }
  throw DataError(fmt::format(
      "feature manifest mismatch: missing [{}], extra [{}]", missing, extra));
}

std::vector<Prediction> predict_rows(const Model &model,
                                     std::span<const std::vector<double>> rows) {
  std::vector<Prediction> out;
  out.reserve(rows.size());
  for (const auto &row : rows) {
    if (row.size() != model.feature_names.size()) {
      throw DataError(fmt::format("row has {} values, model expects {}",
                                  row.size(), model.feature_names.size()));
    }
    double score = 0.0;
    if (const auto *lr = std::get_if<LogRegParams>(&model.params)) {
      const auto z = lr->standardizer.apply(row);
      double s = lr->intercept;
      for (std::size_t j = 0; j < z.size(); ++j) s += lr->weights[j] * z[j];
      score = sigmoid(s);
    } else if (const auto *knn = std::get_if<KnnParams>(&model.params)) {
      score = knn_score(*knn, row);
    } else {
      const auto &ens = std::get<EnsembleParams>(model.params);
      if (model.algorithm == Algorithm::kDecisionTree) {
        score = ens.trees.empty() ? 0.0 : ens.trees.front().predict(row);
      } else {
        double s = ens.base_score;
        for (const Tree &t : ens.trees) s += t.predict(row);
        score = sigmoid(s);
      }
    }
    out.push_back({score >= 0.5 ? 1 : 0, score});
  }
  return out;
}

std::vector<Prediction> predict(const Model &model, const Dataset &data) {
  check_manifest(model, data.feature_names);
  return predict_rows(model, data.rows);
}

}  // namespace controversy
