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

#include "cli_app.h"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "controversy/errors.h"
#include "controversy/experiment.h"
#include "controversy/model_io.h"
#include "controversy/protocols.h"
#include "controversy/stats.h"
#include "controversy/structural.h"
#include "controversy/svg_plot.h"
#include "controversy/synthetic.h"
#include "controversy/toml_lite.h"

namespace controversy {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Options {
  bool verbose = false;

  // Shared inputs.
  std::string posts;
  std::string comments;
  std::string lexicon;
  std::string features_csv;
  std::string model;
  std::string config;
  std::string out_dir;
  std::string output;
  std::uint64_t seed = 0;

  // ingest
  bool strict = false;
  std::string repair = "drop";

  // features
  std::string mode = "psychology";
  std::optional<double> one_page_ratio;
  std::optional<std::int64_t> horizon;
  bool no_root_links = false;
  bool absolute_intensity = false;

  // train
  std::string algorithm;

  // evaluate
  std::string predictions;

  // importance
  std::string method = "permutation";
  int repeats = 10;

  // ks
  std::vector<std::string> ks_features;
  std::string group_by = "label";

  // synth
  std::optional<int> posts_per_class;
  std::optional<double> pi_c;
  std::optional<double> pi_n;
  std::optional<std::uint64_t> synth_seed;
  bool chain = false;

  // plot
  std::string report;
};

std::vector<std::string> algorithm_names() {
  return {"logreg", "knn", "dtree", "gbdt", "gbdt_goss_efb"};
}

std::vector<std::string> mode_names() {
  return {"structure", "interaction", "text", "psychology"};
}

void add_dataset_flags(CLI::App *cmd, Options &o) {
  cmd->add_option("--posts", o.posts, "Posts JSON Lines file")->required();
  cmd->add_option("--comments", o.comments, "Comments JSON Lines file")
      ->required();
}

std::unique_ptr<CLI::App> build_app(Options &o) {
  auto app = std::make_unique<CLI::App>(
      "Controversy detection from comment-thread structure, interaction, "
      "text and like-gradient features.",
      "controversy");
  app->require_subcommand(1);
  app->add_flag("--verbose", o.verbose, "Debug logging on standard error");

  CLI::App *ingest = app->add_subcommand(
      "ingest", "Validate a dataset and print per-thread tree statistics");
  add_dataset_flags(ingest, o);
  ingest->add_flag("--strict", o.strict, "Treat malformed lines as fatal");
  ingest->add_option("--repair", o.repair,
                     "Broken parent chains: drop or reattach")
      ->check(CLI::IsMember({"drop", "reattach"}));

  CLI::App *features = app->add_subcommand(
      "features", "Compute the feature CSV for every thread");
  add_dataset_flags(features, o);
  features->add_option("--mode", o.mode, "Feature mode")
      ->check(CLI::IsMember(mode_names()));
  features->add_option("--lexicon", o.lexicon,
                       "Sentiment lexicon TSV (token, score)");
  features->add_option("--one-page-ratio", o.one_page_ratio,
                       "Keep only the top-liked share of comments and their "
                       "replies; emits the 9 one-page features")
      ->check(CLI::Range(1e-12, 1.0));
  features->add_option("--horizon", o.horizon,
                       "Only comments within this many seconds of the post")
      ->check(CLI::PositiveNumber);
  features->add_flag("--no-root-links", o.no_root_links,
                     "Leave post-to-comment links out of interaction stats");
  features->add_flag("--absolute-intensity", o.absolute_intensity,
                     "Comment emotion from absolute scores");
  features->add_option("--output", o.output, "Write CSV here, not stdout");

  CLI::App *train_cmd =
      app->add_subcommand("train", "Train a classifier on a feature CSV");
  train_cmd->add_option("--features", o.features_csv, "Feature CSV")
      ->required();
  train_cmd->add_option("--algorithm", o.algorithm, "Learner")
      ->required()
      ->check(CLI::IsMember(algorithm_names()));
  train_cmd->add_option("--model", o.model, "Output model JSON")->required();
  train_cmd->add_option("--config", o.config,
                        "TOML file with a [learners] table");
  train_cmd->add_option("--seed", o.seed, "Training seed");

  CLI::App *evaluate =
      app->add_subcommand("evaluate", "Score a model on a labelled CSV");
  evaluate->add_option("--model", o.model, "Model JSON")->required();
  evaluate->add_option("--features", o.features_csv, "Feature CSV")
      ->required();
  evaluate->add_option("--predictions", o.predictions,
                       "Also write per-row predictions to this CSV");

  CLI::App *importance = app->add_subcommand(
      "importance", "Rank features by permutation or split-gain importance");
  importance->add_option("--model", o.model, "Model JSON")->required();
  importance->add_option("--features", o.features_csv,
                         "Labelled feature CSV (permutation only)");
  importance->add_option("--method", o.method, "permutation or gain")
      ->check(CLI::IsMember({"permutation", "gain"}));
  importance->add_option("--repeats", o.repeats, "Shuffles per feature")
      ->check(CLI::PositiveNumber);
  importance->add_option("--seed", o.seed, "Shuffle seed");

  CLI::App *ks = app->add_subcommand(
      "ks", "Two-sample KS tests of features between groups");
  add_dataset_flags(ks, o);
  ks->add_option("--lexicon", o.lexicon, "Sentiment lexicon TSV");
  ks->add_option("--feature", o.ks_features,
                 "Feature column (repeatable; default all)");
  ks->add_option("--group-by", o.group_by, "label, topic or both")
      ->check(CLI::IsMember({"label", "topic", "both"}));

  CLI::App *synth =
      app->add_subcommand("synth", "Generate a labelled synthetic corpus");
  synth->add_option("--out-dir", o.out_dir,
                    "Directory for posts.jsonl and comments.jsonl")
      ->required();
  synth->add_option("--config", o.config,
                    "TOML file with a [synthetic] table");
  synth->add_option("--posts-per-class", o.posts_per_class,
                    "Threads per class")
      ->check(CLI::PositiveNumber);
  synth->add_option("--pi-c", o.pi_c,
                    "Like-ascension probability, controversial")
      ->check(CLI::Range(0.0, 1.0));
  synth->add_option("--pi-n", o.pi_n,
                    "Like-ascension probability, non-controversial")
      ->check(CLI::Range(0.0, 1.0));
  synth->add_option("--seed", o.synth_seed, "Generator seed");
  synth->add_flag("--chain", o.chain, "Every comment answers the previous");

  CLI::App *experiment = app->add_subcommand(
      "experiment", "Run the full experiment matrix from a TOML config");
  experiment->add_option("--config", o.config, "Experiment TOML")->required();
  experiment->add_option("--out-dir", o.out_dir,
                         "Base output directory (default: output.dir)");

  CLI::App *plot =
      app->add_subcommand("plot", "Render SVG charts from a report.json");
  plot->add_option("--report", o.report, "report.json")->required();
  plot->add_option("--out-dir", o.out_dir,
                   "Where to write SVGs (default: plots/ beside the report)");
  return app;
}

// ----- helpers --------------------------------------------------------------

std::vector<FeatureVector> load_feature_csv(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read feature file " + path);
  return read_feature_csv(in, path);
}

Dataset dataset_from_csv(const std::string &path) {
  const auto rows = load_feature_csv(path);
  if (rows.empty()) throw DataError(path + ": no rows");
  const FeatureMask mask = rows.front().mask;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].mask != mask) {
      throw DataError(fmt::format(
          "{}: row {} has a different set of filled columns", path, i + 2));
    }
  }
  return make_dataset(rows, mask);
}

Lexicon load_lexicon(const std::string &path) {
  return path.empty() ? Lexicon::BuiltinDemo() : Lexicon::Load(path);
}

void log_parse_report(const ParseReport &report) {
  for (const auto &skip : report.skipped) {
    spdlog::warn("{}:{}: skipped: {}", skip.path, skip.line, skip.reason);
  }
  if (report.orphan_comments > 0) {
    spdlog::warn("{} comments reference unknown posts", report.orphan_comments);
  }
  for (const auto &w : report.warnings) spdlog::warn("{}", w);
}

// ----- subcommands -----------------------------------------------------------

int cmd_ingest(const Options &o, std::ostream &out) {
  ParseOptions popts;
  popts.strict = o.strict;
  const ParsedDataset data = parse_dataset(o.posts, o.comments, popts);
  log_parse_report(data.report);
  const RepairPolicy policy =
      o.repair == "reattach" ? RepairPolicy::kReattachRoot : RepairPolicy::kDrop;
  out << "post_id,label,topic,comments,tree_size,depth,breadth,dropped,"
         "reattached\n";
  std::size_t total = 0;
  for (const Thread &t : data.threads) {
    BuildReport br;
    const CommentTree tree = build_tree(t.post, t.comments, policy, &br);
    const StructuralFeatures s = structural_features(tree);
    out << fmt::format(
        "{},{},{},{},{},{},{},{},{}\n", csv_field(t.post.post_id),
        t.post.label ? (*t.post.label ? "1" : "0") : "",
        csv_field(t.post.topic), t.comments.size(), tree.size(), s.depth,
        s.breadth, br.dropped.size(), br.reattached.size());
    total += t.comments.size();
  }
  spdlog::info("{} threads, {} comments", data.threads.size(), total);
  return kExitOk;
}

int cmd_features(const Options &o, std::ostream &out) {
  const ParsedDataset data = parse_dataset(o.posts, o.comments);
  log_parse_report(data.report);
  const Lexicon lexicon = load_lexicon(o.lexicon);
  FeatureOptions fopts;
  fopts.interaction.include_root_links = !o.no_root_links;
  fopts.text.absolute_intensity = o.absolute_intensity;
  const FeatureMode mode = parse_mode(o.mode);
  std::vector<FeatureVector> rows;
  for (const Thread &t : data.threads) {
    CommentTree tree = build_tree(t.post, t.comments);
    if (o.horizon) tree = time_slice(tree, *o.horizon);
    rows.push_back(o.one_page_ratio
                       ? one_page_filter(tree, *o.one_page_ratio, lexicon, fopts)
                       : feature_vector(tree, lexicon, mode, fopts));
  }
  if (o.output.empty()) {
    write_feature_csv(out, rows);
  } else {
    std::ofstream file(o.output);
    if (!file) throw DataError("cannot write " + o.output);
    write_feature_csv(file, rows);
  }
  spdlog::info("{} feature rows", rows.size());
  return kExitOk;
}

LearnerConfig learner_config_from_file(const std::string &path) {
  if (path.empty()) return {};
  if (!fs::exists(path)) throw ConfigError("config file not found: " + path);
  const json doc = load_toml(path);
  return doc.contains("learners") ? learner_config_from_json(doc["learners"])
                                  : LearnerConfig{};
}

int cmd_train(const Options &o, std::ostream &out) {
  const Dataset data = dataset_from_csv(o.features_csv);
  LearnerConfig config = learner_config_from_file(o.config);
  config.seed = o.seed;
  const Model model = train(parse_algorithm(o.algorithm), data, config);
  save_model(model, o.model);
  const auto preds = predict(model, data);
  out << json{{"algorithm", o.algorithm},
              {"model", o.model},
              {"rows", data.num_rows()},
              {"features", data.feature_names},
              {"train_accuracy", accuracy(preds, data.labels)},
              {"config_hash", model.config_hash}}
             .dump()
      << '\n';
  return kExitOk;
}

int cmd_evaluate(const Options &o, std::ostream &out) {
  const Model model = load_model(o.model);
  const Dataset data = dataset_from_csv(o.features_csv);
  const auto preds = predict(model, data);
  std::vector<double> scores;
  for (const auto &p : preds) scores.push_back(p.score);
  out << json{{"algorithm", algorithm_name(model.algorithm)},
              {"rows", data.num_rows()},
              {"accuracy", accuracy(preds, data.labels)},
              {"log_loss", log_loss(scores, data.labels)}}
             .dump()
      << '\n';
  if (!o.predictions.empty()) {
    std::ofstream file(o.predictions);
    if (!file) throw DataError("cannot write " + o.predictions);
    file << "post_id,label,predicted,score\n";
    for (std::size_t i = 0; i < preds.size(); ++i) {
      file << fmt::format("{},{},{},{}\n", csv_field(data.ids[i]),
                          data.labels[i], preds[i].label, preds[i].score);
    }
  }
  return kExitOk;
}

int cmd_importance(const Options &o, std::ostream &out) {
  const Model model = load_model(o.model);
  ImportanceReport report;
  if (o.method == "gain") {
    report = gain_importance(model);
  } else {
    if (o.features_csv.empty()) {
      throw std::invalid_argument("--features is required for permutation");
    }
    report = permutation_importance(model, dataset_from_csv(o.features_csv),
                                    o.repeats, o.seed);
  }
  out << "rank,feature,score\n";
  for (std::size_t k = 0; k < report.ranking.size(); ++k) {
    const int f = report.ranking[k];
    out << fmt::format("{},{},{}\n", k + 1, report.feature_names[f],
                       report.scores[f]);
  }
  return kExitOk;
}

int cmd_ks(const Options &o, std::ostream &out) {
  const ParsedDataset data = parse_dataset(o.posts, o.comments);
  log_parse_report(data.report);
  const Lexicon lexicon = load_lexicon(o.lexicon);
  std::vector<int> features;
  for (const auto &name : o.ks_features) {
    const int f = feature_index(name);
    if (f < 0) throw std::invalid_argument("unknown feature '" + name + "'");
    features.push_back(f);
  }
  if (features.empty()) {
    for (int f = 0; f < kNumFeatures; ++f) features.push_back(f);
  }
  std::vector<FeatureVector> vectors;
  std::vector<std::string> labels, topics;
  for (const Thread &t : data.threads) {
    if (!t.post.label) continue;
    vectors.push_back(feature_vector(build_tree(t.post, t.comments), lexicon,
                                     FeatureMode::kPsychology));
    labels.push_back(*t.post.label ? "controversial" : "non-controversial");
    topics.push_back(t.post.topic);
  }
  if (vectors.empty()) throw DataError("no labelled posts");
  out << "grouping,feature,group_a,group_b,n1,n2,D,p_value\n";
  auto emit = [&](const char *grouping, const std::vector<std::string> &groups) {
    for (const KsRow &row : ks_table(vectors, groups, features)) {
      out << fmt::format("{},{},{},{},{},{},{},{}\n", grouping, row.feature,
                         csv_field(row.group_a), csv_field(row.group_b),
                         row.result.n1, row.result.n2, row.result.statistic,
                         row.result.p_value);
    }
  };
  if (o.group_by != "topic") emit("label", labels);
  if (o.group_by != "label") emit("topic", topics);
  return kExitOk;
}

int cmd_synth(const Options &o, std::ostream &out) {
  SyntheticParams params;
  if (!o.config.empty()) {
    if (!fs::exists(o.config)) {
      throw ConfigError("config file not found: " + o.config);
    }
    const json doc = load_toml(o.config);
    if (doc.contains("synthetic")) {
      params = synthetic_params_from_json(doc["synthetic"]);
    }
  }
  if (o.posts_per_class) params.posts_per_class = *o.posts_per_class;
  if (o.pi_c) params.like_ascension_controversial = *o.pi_c;
  if (o.pi_n) params.like_ascension_noncontroversial = *o.pi_n;
  if (o.synth_seed) params.seed = *o.synth_seed;
  if (o.chain) params.chain = true;
  const auto threads = generate_synthetic(params);
  std::error_code ec;
  fs::create_directories(o.out_dir, ec);
  if (ec) throw DataError("cannot create " + o.out_dir + ": " + ec.message());
  const std::string posts = (fs::path(o.out_dir) / "posts.jsonl").string();
  const std::string comments =
      (fs::path(o.out_dir) / "comments.jsonl").string();
  write_dataset(threads, posts, comments);
  out << json{{"posts", posts},
              {"comments", comments},
              {"threads", threads.size()},
              {"params", to_json(params)}}
             .dump()
      << '\n';
  return kExitOk;
}

int cmd_experiment(const Options &o, std::ostream &out) {
  const ExperimentConfig config = load_experiment_config(o.config);
  const auto start = std::chrono::steady_clock::now();
  const Report report = run_experiment(config);
  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  const std::string base = o.out_dir.empty() ? config.output_dir : o.out_dir;
  const std::string dir = (fs::path(base) / report.run_id).string();
  write_report_files(report, dir);
  {
    std::ofstream timing(fs::path(dir) / "timing.json");
    timing << json{{"runtime_s", seconds}, {"run_id", report.run_id}}.dump(2)
           << '\n';
  }
  spdlog::info("experiment finished in {:.2f} s", seconds);
  out << dir << '\n';
  return kExitOk;
}

int cmd_plot(const Options &o, std::ostream &out) {
  std::ifstream in(o.report);
  if (!in) throw DataError("cannot read report " + o.report);
  json r;
  try {
    in >> r;
  } catch (const json::exception &e) {
    throw DataError(o.report + ": " + e.what());
  }
  const fs::path dir = o.out_dir.empty()
                           ? fs::path(o.report).parent_path() / "plots"
                           : fs::path(o.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create " + dir.string());
  auto write = [&](const std::string &name, const std::string &svg) {
    std::ofstream file(dir / name);
    if (!file) throw DataError("cannot write " + (dir / name).string());
    file << svg;
    out << (dir / name).string() << '\n';
  };
  try {
    std::vector<std::string> groups, series;
    std::map<std::pair<std::string, std::string>, double> acc;
    for (const json &c : r.at("matrix")) {
      const auto mode = c.at("mode").get<std::string>();
      const auto alg = c.at("algorithm").get<std::string>();
      if (std::find(groups.begin(), groups.end(), mode) == groups.end()) {
        groups.push_back(mode);
      }
      if (std::find(series.begin(), series.end(), alg) == series.end()) {
        series.push_back(alg);
      }
      acc[{alg, mode}] = c.at("accuracy").at("mean").get<double>();
    }
    std::vector<std::vector<double>> values(series.size(),
                                            std::vector<double>(groups.size()));
    for (std::size_t s = 0; s < series.size(); ++s) {
      for (std::size_t g = 0; g < groups.size(); ++g) {
        values[s][g] = acc[{series[s], groups[g]}];
      }
    }
    write("accuracy.svg",
          grouped_bar_chart("Held-out accuracy by feature mode", groups,
                            series, values, "accuracy"));

    const json &perm = r.at("importance").at("permutation");
    if (!perm.empty()) {
      std::map<std::string, double> mean;
      std::vector<std::string> names;
      for (const auto &[name, v] : perm.front().at("scores").items()) {
        names.push_back(name);
      }
      for (const json &rep : perm) {
        for (const auto &name : names) {
          mean[name] += rep.at("scores").at(name).get<double>() / perm.size();
        }
      }
      std::vector<double> scores;
      for (const auto &name : names) scores.push_back(mean[name]);
      write("importance.svg",
            bar_chart("Permutation importance (mean over seeds)", names,
                      scores, "accuracy drop"));
    }

    std::vector<std::string> horizons, modes;
    std::map<std::pair<std::string, std::string>, double> early;
    for (const json &c : r.at("early").at("cells")) {
      const auto h =
          fmt::format("{} h", c.at("horizon_s").get<double>() / 3600.0);
      const auto mode = c.at("mode").get<std::string>();
      if (std::find(horizons.begin(), horizons.end(), h) == horizons.end()) {
        horizons.push_back(h);
      }
      if (std::find(modes.begin(), modes.end(), mode) == modes.end()) {
        modes.push_back(mode);
      }
      early[{mode, h}] = c.at("accuracy").at("mean").get<double>();
    }
    if (!horizons.empty()) {
      std::vector<std::vector<double>> ev(modes.size(),
                                          std::vector<double>(horizons.size()));
      for (std::size_t m = 0; m < modes.size(); ++m) {
        for (std::size_t h = 0; h < horizons.size(); ++h) {
          ev[m][h] = early[{modes[m], horizons[h]}];
        }
      }
      write("early.svg", grouped_bar_chart("Early detection accuracy",
                                           horizons, modes, ev, "accuracy"));
    }
  } catch (const json::exception &e) {
    throw DataError(o.report + ": not a report: " + e.what());
  }
  return kExitOk;
}

class LoggerScope {
 public:
  LoggerScope(std::ostream &err, bool verbose)
      : previous_(spdlog::default_logger()) {
    auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err, true);
    auto logger = std::make_shared<spdlog::logger>("controversy", sink);
    logger->set_pattern("[%l] %v");
    logger->set_level(verbose ? spdlog::level::debug : spdlog::level::info);
    spdlog::set_default_logger(logger);
  }
  ~LoggerScope() { spdlog::set_default_logger(previous_); }

 private:
  std::shared_ptr<spdlog::logger> previous_;
};

}  // namespace

std::vector<std::pair<std::string, std::vector<std::string>>> CliFlagTable() {
  Options o;
  auto app = build_app(o);
  std::vector<std::pair<std::string, std::vector<std::string>>> table;
  std::vector<std::string> global;
  for (const CLI::Option *opt : app->get_options()) {
    for (const auto &name : opt->get_lnames()) global.push_back("--" + name);
  }
  table.emplace_back("", global);
  for (const CLI::App *sub : app->get_subcommands({})) {
    std::vector<std::string> flags;
    for (const CLI::Option *opt : sub->get_options()) {
      for (const auto &name : opt->get_lnames()) flags.push_back("--" + name);
    }
    table.emplace_back(sub->get_name(), flags);
  }
  return table;
}

int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err) {
  Options o;
  auto app = build_app(o);
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app->parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app->exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  LoggerScope logging(err, o.verbose);
  const CLI::App *sub = app->get_subcommands().front();
  const std::string name = sub->get_name();
  try {
    if (name == "ingest") return cmd_ingest(o, out);
    if (name == "features") return cmd_features(o, out);
    if (name == "train") return cmd_train(o, out);
    if (name == "evaluate") return cmd_evaluate(o, out);
    if (name == "importance") return cmd_importance(o, out);
    if (name == "ks") return cmd_ks(o, out);
    if (name == "synth") return cmd_synth(o, out);
    if (name == "experiment") return cmd_experiment(o, out);
    if (name == "plot") return cmd_plot(o, out);
  } catch (const DataError &e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument &e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fs::filesystem_error &e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  err << "unknown subcommand " << name << '\n';
  return kExitUsage;
}

}  // namespace controversy
