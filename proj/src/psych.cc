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

#include "controversy/psych.h"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "controversy/errors.h"
#include "controversy/structural.h"

namespace controversy {

PsychFeatures psych_features(const CommentTree &tree,
                             std::span<const ReplyLink> links,
                             std::span<const int> reply_counts) {
  PsychFeatures f;
  f.link_count = static_cast<int>(links.size());
  if (links.empty()) return f;
  int likes_up = 0;
  int replies_up = 0;
  for (const ReplyLink &link : links) {
    if (tree.comment(link.parent).likes < tree.comment(link.child).likes) {
      ++likes_up;
    }
    if (reply_counts[link.parent] < reply_counts[link.child]) ++replies_up;
  }
  f.ascending_gradient = static_cast<double>(likes_up) / f.link_count;
  f.tier_ascending_gradient = static_cast<double>(replies_up) / f.link_count;
  return f;
}

PsychFeatures psych_features(const CommentTree &tree) {
  std::vector<ReplyLink> links;
  std::vector<int> reply_counts(tree.num_nodes());
  for (int node = 0; node < tree.num_nodes(); ++node) {
    reply_counts[node] = static_cast<int>(tree.children(node).size());
  }
  for (int node = 1; node <= tree.size(); ++node) {
    const int parent = tree.parent(node);
    if (parent != CommentTree::kRoot) links.push_back({parent, node});
  }
  return psych_features(tree, links, reply_counts);
}

double ascending_gradient(const CommentTree &tree) {
  return psych_features(tree).ascending_gradient;
}

double tier_ascending_gradient(const CommentTree &tree) {
  return psych_features(tree).tier_ascending_gradient;
}

const std::array<std::string_view, kNumFeatures> &feature_names() {
  static constexpr std::array<std::string_view, kNumFeatures> kNames = {
      "n", "d", "b", "k", "v", "t_min", "t_avg",
      "c", "q", "s_c", "s_p", "p_a", "p_t"};
  return kNames;
}

int feature_index(std::string_view name) {
  const auto &names = feature_names();
  for (int i = 0; i < kNumFeatures; ++i) {
    if (names[i] == name) return i;
  }
  return -1;
}

FeatureMask mode_mask(FeatureMode mode) {
  int count = 0;
  switch (mode) {
    case FeatureMode::kStructure: count = 5; break;
    case FeatureMode::kInteraction: count = 9; break;
    case FeatureMode::kText: count = 11; break;
    case FeatureMode::kPsychology: count = 13; break;
  }
  FeatureMask mask;
  for (int i = 0; i < count; ++i) mask.set(i);
  return mask;
}

FeatureMask one_page_mask() {
  FeatureMask mask = mode_mask(FeatureMode::kPsychology);
  mask.reset(static_cast<int>(Feature::kDepth));
  mask.reset(static_cast<int>(Feature::kBreadth));
  mask.reset(static_cast<int>(Feature::kAvgDegree));
  mask.reset(static_cast<int>(Feature::kVirality));
  return mask;
}

std::string_view mode_name(FeatureMode mode) {
  switch (mode) {
    case FeatureMode::kStructure: return "structure";
    case FeatureMode::kInteraction: return "interaction";
    case FeatureMode::kText: return "text";
    case FeatureMode::kPsychology: return "psychology";
  }
  return "unknown";
}

FeatureMode parse_mode(std::string_view name) {
  for (FeatureMode m : {FeatureMode::kStructure, FeatureMode::kInteraction,
                        FeatureMode::kText, FeatureMode::kPsychology}) {
    if (mode_name(m) == name) return m;
  }
  throw std::invalid_argument(fmt::format(
      "unknown feature mode '{}' (structure, interaction, text, psychology)",
      name));
}

std::vector<double> FeatureVector::active_values() const {
  std::vector<double> out;
  out.reserve(mask.count());
  for (int i = 0; i < kNumFeatures; ++i) {
    if (mask.test(i)) out.push_back(values[i]);
  }
  return out;
}

FeatureVector feature_vector(const CommentTree &tree, const Lexicon &lexicon,
                             const FeatureMask &mask,
                             const FeatureOptions &options) {
  const StructuralFeatures s = structural_features(tree);
  const InteractionFeatures in = interaction_features(tree, options.interaction);
  const TextFeatures t = text_features(tree, lexicon, options.text);
  const PsychFeatures p = psych_features(tree);

  FeatureVector fv;
  fv.post_id = tree.post().post_id;
  fv.label = tree.post().label;
  fv.mask = mask;
  fv.values = {static_cast<double>(s.size),
               static_cast<double>(s.depth),
               static_cast<double>(s.breadth),
               s.avg_degree,
               s.virality,
               in.t_min,
               in.t_avg,
               in.density,
               in.avg_ups,
               t.comment_emotion,
               t.post_emotion,
               p.ascending_gradient,
               p.tier_ascending_gradient};
  for (int i = 0; i < kNumFeatures; ++i) {
    if (!mask.test(i)) fv.values[i] = 0.0;
  }
  return fv;
}

FeatureVector feature_vector(const CommentTree &tree, const Lexicon &lexicon,
                             FeatureMode mode, const FeatureOptions &options) {
  return feature_vector(tree, lexicon, mode_mask(mode), options);
}

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

void write_feature_csv(std::ostream &out, std::span<const FeatureVector> rows) {
  out << "post_id,label";
  for (auto name : feature_names()) out << ',' << name;
  out << '\n';
  for (const FeatureVector &row : rows) {
    out << csv_field(row.post_id) << ',';
    if (row.label) out << (*row.label ? 1 : 0);
    for (int i = 0; i < kNumFeatures; ++i) {
      out << ',';
      if (row.mask.test(i)) out << fmt::format("{}", row.values[i]);
    }
    out << '\n';
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string &line,
                                        const std::string &source,
                                        std::size_t line_no) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cells.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cells.back() += c;
      }
    } else if (c == '"' && cells.back().empty()) {
      quoted = true;
    } else if (c == ',') {
      cells.emplace_back();
    } else if (c != '\r') {
      cells.back() += c;
    }
  }
  if (quoted) throw SchemaError(source, line_no, "unterminated quote");
  return cells;
}

}  // namespace

std::vector<FeatureVector> read_feature_csv(std::istream &in,
                                            const std::string &source) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<int> slot;  // column -> feature slot, -1 for id and label
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto header = split_csv_line(line, source, line_no);
    if (header.size() < 2 || header[0] != "post_id" || header[1] != "label") {
      throw SchemaError(source, line_no,
                        "header must start with post_id,label");
    }
    for (std::size_t c = 2; c < header.size(); ++c) {
      const int f = feature_index(header[c]);
      if (f < 0) {
        throw SchemaError(source, line_no,
                          "unknown feature column '" + header[c] + "'");
      }
      slot.push_back(f);
    }
    break;
  }
  if (slot.empty() && line_no == 0) {
    throw SchemaError(source, 1, "empty feature file");
  }
  std::vector<FeatureVector> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_line(line, source, line_no);
    if (cells.size() != slot.size() + 2) {
      throw SchemaError(source, line_no,
                        fmt::format("expected {} cells, got {}",
                                    slot.size() + 2, cells.size()));
    }
    FeatureVector fv;
    fv.post_id = cells[0];
    if (cells[1] == "1") {
      fv.label = true;
    } else if (cells[1] == "0") {
      fv.label = false;
    } else if (!cells[1].empty()) {
      throw SchemaError(source, line_no, "label must be 0, 1 or empty");
    }
    for (std::size_t c = 0; c < slot.size(); ++c) {
      const std::string &cell = cells[c + 2];
      if (cell.empty()) continue;
      double v = 0.0;
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (res.ec != std::errc() || res.ptr != cell.data() + cell.size() ||
          !std::isfinite(v)) {
        throw SchemaError(source, line_no, "bad number '" + cell + "'");
      }
      fv.values[slot[c]] = v;
      fv.mask.set(slot[c]);
    }
    rows.push_back(std::move(fv));
  }
  return rows;
}

}  // namespace controversy
