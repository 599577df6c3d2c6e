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

// Acceptance suite: one PASS/FAIL line per criterion, exit code 1 when any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include <fmt/format.h>

#include "controversy/experiment.h"
#include "controversy/learners.h"
#include "controversy/psych.h"
#include "controversy/random.h"
#include "controversy/stats.h"
#include "controversy/synthetic.h"
#include "oracles.h"
#include "test_util.h"

namespace controversy {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

constexpr int kSuiteTrees = 1000;

CommentTree SuiteTree(int i) {
  return testing::RandomTree(derive_seed(2026, {static_cast<std::uint64_t>(i)}));
}

Outcome FeatureOracles() {
  const auto start = Clock::now();
  const Lexicon lex = Lexicon::BuiltinDemo();
  double worst = 0.0;
  int worst_slot = -1;
  for (int i = 0; i < kSuiteTrees; ++i) {
    const CommentTree tree = SuiteTree(i);
    const auto oracle = testing::OracleFeatures(tree, testing::DemoLexiconEntries());
    const FeatureVector v = feature_vector(tree, lex, FeatureMode::kPsychology);
    for (int s = 0; s < kNumFeatures; ++s) {
      const double err = std::abs(v.values[s] - oracle[s]);
      if (!(err <= worst)) {
        worst = err;
        worst_slot = s;
      }
    }
  }
  const double secs = Seconds(start);
  return {worst <= 1e-12 && secs < 30.0,
          fmt::format("{} trees, max abs error {:.3g}{}, {:.2f} s", kSuiteTrees,
                      worst,
                      worst_slot < 0 ? ""
                                     : fmt::format(" (slot {})",
                                                   feature_names()[worst_slot]),
                      secs)};
}

Outcome FixtureT1() {
  const Lexicon lex = Lexicon::BuiltinDemo();
  const std::vector<std::pair<Feature, double>> expected = {
      {Feature::kSize, 4},     {Feature::kDepth, 3},
      {Feature::kBreadth, 2},  {Feature::kAvgDegree, 0.5},
      {Feature::kVirality, 26.0 / 12.0},
      {Feature::kTMin, 10},    {Feature::kTAvg, 17.5},
      {Feature::kDensity, 0.08}, {Feature::kAvgUps, 3.75},
      {Feature::kAscendingGradient, 0.5},
      {Feature::kTierAscendingGradient, 0.0}};
  const FeatureVector first =
      feature_vector(testing::T1Tree(), lex, FeatureMode::kPsychology);
  bool ok = true;
  std::string bad;
  for (const auto &[f, value] : expected) {
    if (first[f] != value) {
      ok = false;
      bad += fmt::format(" {}={}", feature_names()[static_cast<int>(f)],
                         first[f]);
    }
  }
  for (int run = 0; run < 5; ++run) {
    const FeatureVector again =
        feature_vector(testing::T1Tree(), lex, FeatureMode::kPsychology);
    if (std::memcmp(again.values.data(), first.values.data(),
                    sizeof(double) * kNumFeatures) != 0) {
      ok = false;
      bad += " (runs differ)";
    }
  }
  return {ok, ok ? "11 values exact, bitwise stable over 6 runs"
                 : "mismatch:" + bad};
}

Dataset RandomDataset(std::uint64_t seed) {
  Rng rng(seed);
  Dataset d;
  for (int j = 0; j < 6; ++j) d.feature_names.push_back(fmt::format("x{}", j));
  for (int i = 0; i < 300; ++i) {
    std::vector<double> row(6);
    for (double &x : row) x = std::round(uniform01(rng) * 40) / 4;
    const double z = row[0] - row[1] + 0.5 * row[2] + 4 * (uniform01(rng) - 0.5);
    d.rows.push_back(row);
    d.labels.push_back(z > 2.5);
  }
  return d;
}

std::vector<double> Scores(const Model &m, const Dataset &d) {
  std::vector<double> s;
  for (const Prediction &p : predict(m, d)) s.push_back(p.score);
  return s;
}

Outcome GossDegeneracy() {
  int identical = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Dataset d = RandomDataset(seed);
    LearnerConfig config;
    config.seed = seed;
    config.gbdt.goss_a = 0.25;
    config.gbdt.goss_b = 0.75;
    identical += Scores(train(Algorithm::kGbdtGossEfb, d, config), d) ==
                 Scores(train(Algorithm::kGbdt, d, config), d);
  }
  return {identical == 10,
          fmt::format("{}/10 datasets with identical predictions", identical)};
}

Outcome EfbLosslessness() {
  Rng rng(44);
  Dataset d;
  for (int j = 0; j < 10; ++j) d.feature_names.push_back(fmt::format("cat{}", j));
  for (int i = 0; i < 400; ++i) {
    const int cat = static_cast<int>(uniform_index(rng, 10));
    std::vector<double> row(10, 0.0);
    row[cat] = 1.0;
    d.rows.push_back(row);
    d.labels.push_back((cat % 3 == 0) != (uniform01(rng) < 0.1));
  }
  LearnerConfig config;
  config.gbdt.efb_conflict_K = 0;
  config.gbdt.goss_a = 0.5;
  config.gbdt.goss_b = 0.5;
  const Model bundled = train(Algorithm::kGbdtGossEfb, d, config);
  const Model plain = train(Algorithm::kGbdt, d, config);
  const std::size_t columns =
      std::get<EnsembleParams>(bundled.params).bundles.size();
  const bool same = Scores(bundled, d) == Scores(plain, d);
  return {same && columns <= 2,
          fmt::format("predictions {}, {} histogram columns from 10 features",
                      same ? "identical" : "differ", columns)};
}

Outcome KsOracle() {
  Rng rng(5);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(1 + uniform_index(rng, 200));
    std::vector<double> b(1 + uniform_index(rng, 200));
    const double shift = uniform01(rng);
    for (double &x : a) x = std::floor(uniform01(rng) * 30) / 10;
    for (double &x : b) x = std::floor(uniform01(rng) * 30) / 10 + shift;
    worst = std::max(worst, std::abs(ks_two_sample(a, b).statistic -
                                     testing::OracleKs(a, b)));
  }
  const std::vector<double> x = {1, 2, 3};
  const std::vector<double> y = {1, 2, 3, 1000};
  const double d = ks_two_sample(x, y).statistic;
  return {worst <= 1e-12 && d == 0.25,
          fmt::format("200 pairs, max abs error {:.3g}; D([1,2,3],[1,2,3,1000]) "
                      "= {}",
                      worst, d)};
}

Outcome AgInvariance() {
  int changed = 0;
  for (int i = 0; i < kSuiteTrees; ++i) {
    const CommentTree tree = SuiteTree(i);
    std::vector<Comment> comments = tree.effective_comments();
    for (Comment &c : comments) c.likes = c.likes * c.likes * c.likes + 7;
    const CommentTree moved = build_tree(tree.post(), comments);
    changed += ascending_gradient(moved) != ascending_gradient(tree);
  }
  return {changed == 0,
          fmt::format("{} of {} trees changed p_a", changed, kSuiteTrees)};
}

// Criteria that share the synthetic experiment.
struct SyntheticRun {
  Report report;
  double seconds = 0.0;
  std::string json;
};

ExperimentConfig SyntheticConfig() {
  ExperimentConfig c;
  SyntheticParams p;
  p.posts_per_class = 200;
  p.like_ascension_controversial = 0.6;
  p.like_ascension_noncontroversial = 0.3;
  c.synthetic = p;
  c.seeds = {1, 2, 3, 4, 5};
  return c;
}

double EarlyAccuracy(const Report &r, Timestamp h, FeatureMode mode) {
  for (const EarlyCell &c : r.early) {
    if (c.horizon == h && c.mode == mode) return c.accuracy.mean;
  }
  return NAN;
}

Outcome EndToEnd(const SyntheticRun &run) {
  const Report &r = run.report;
  const Algorithm algo = Algorithm::kGbdtGossEfb;
  const MatrixCell *psych = r.cell(algo, FeatureMode::kPsychology);
  const MatrixCell *structure = r.cell(algo, FeatureMode::kStructure);
  if (psych == nullptr || structure == nullptr) return {false, "missing cells"};
  int gradient_first = 0;
  for (const ImportanceReport &imp : r.permutation) {
    const std::string &top = imp.top_feature();
    gradient_first += top == "p_a" || top == "p_t";
  }
  const double pa = psych->accuracy.mean;
  const double sa = structure->accuracy.mean;
  const bool ok = pa >= 0.90 && pa - sa >= 0.05 && gradient_first >= 4 &&
                  run.seconds < 120.0;
  return {ok, fmt::format("{} psychology {:.4f}, structure {:.4f}; p_a/p_t "
                          "ranked first in {}/{} seeds; {:.1f} s",
                          algorithm_name(algo), pa, sa, gradient_first,
                          r.permutation.size(), run.seconds)};
}

Outcome OnePage(const SyntheticRun &run) {
  double full = NAN;
  double fifth = NAN;
  for (const OnePageCell &c : run.report.one_page) {
    if (c.ratio == 1.0) full = c.accuracy.mean;
    if (c.ratio == 0.2) fifth = c.accuracy.mean;
  }
  const bool ok = !std::isnan(full) && !std::isnan(fifth) && full - fifth <= 0.10;
  return {ok, fmt::format("ratio 1.0 {:.4f}, ratio 0.2 {:.4f}, drop {:.1f} "
                          "points",
                          full, fifth, 100 * (full - fifth))};
}

Outcome EarlyTrend(const SyntheticRun &run) {
  const Report &r = run.report;
  const std::vector<FeatureMode> modes = {
      FeatureMode::kStructure, FeatureMode::kInteraction, FeatureMode::kText,
      FeatureMode::kPsychology};
  const Timestamp first = 3 * 3600;
  const Timestamp last = 24 * 3600;
  bool ok = true;
  std::string detail;
  for (FeatureMode m : modes) {
    const double a = EarlyAccuracy(r, first, m);
    const double b = EarlyAccuracy(r, last, m);
    ok = ok && b >= a;
    detail += fmt::format("{} {:.3f}->{:.3f}; ", mode_name(m), a, b);
  }
  int dominated = 0;
  int horizons = 0;
  for (Timestamp h : {3 * 3600, 6 * 3600, 9 * 3600, 24 * 3600}) {
    ++horizons;
    const double p = EarlyAccuracy(r, h, FeatureMode::kPsychology);
    bool best = !std::isnan(p);
    for (FeatureMode m : modes) best = best && p >= EarlyAccuracy(r, h, m);
    dominated += best;
  }
  ok = ok && dominated == horizons;
  detail += fmt::format("psychology best at {}/{} horizons", dominated,
                        horizons);
  return {ok, detail};
}

Outcome Determinism(const SyntheticRun &run, const ExperimentConfig &config) {
  const Report again = run_experiment(config);
  testing::TempDir dir;
  write_report_files(run.report, dir.file("a"));
  write_report_files(again, dir.file("b"));
  const std::string a = testing::ReadFile(dir.file("a/report.json"));
  const std::string b = testing::ReadFile(dir.file("b/report.json"));
  return {!a.empty() && a == b,
          fmt::format("report.json {} bytes, reruns {}", a.size(),
                      a == b ? "byte-identical" : "differ")};
}

int Main() {
  int failures = 0;
  auto report = [&](int id, const std::string &name, const Outcome &o) {
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", id,
                name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  };
  auto guarded = [](const std::function<Outcome()> &fn) {
    try {
      return fn();
    } catch (const std::exception &e) {
      return Outcome{false, std::string("exception: ") + e.what()};
    }
  };

  report(1, "feature oracles", guarded(FeatureOracles));
  report(2, "fixture T1", guarded(FixtureT1));
  report(3, "GOSS degeneracy", guarded(GossDegeneracy));
  report(4, "EFB losslessness", guarded(EfbLosslessness));
  report(5, "KS oracle", guarded(KsOracle));

  const ExperimentConfig config = SyntheticConfig();
  SyntheticRun run;
  std::string run_error;
  try {
    const auto start = Clock::now();
    run.report = run_experiment(config);
    run.seconds = Seconds(start);
  } catch (const std::exception &e) {
    run_error = std::string("exception: ") + e.what();
  }
  auto from_run = [&](const std::function<Outcome()> &fn) {
    return run_error.empty() ? guarded(fn) : Outcome{false, run_error};
  };
  report(6, "synthetic end-to-end", from_run([&] { return EndToEnd(run); }));
  report(7, "one-page degradation", from_run([&] { return OnePage(run); }));
  report(8, "early-detection trend", from_run([&] { return EarlyTrend(run); }));
  report(9, "AG invariance", guarded(AgInvariance));
  report(10, "determinism",
         from_run([&] { return Determinism(run, config); }));

  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace controversy

int main() { return controversy::Main(); }
