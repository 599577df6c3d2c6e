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

// Ascending-gradient features and the assembled 13-slot feature vector.
//
// Both gradients are measured over comment -> reply links only. The post has
// no like count, so links leaving the root are excluded from the likes
// gradient and, for symmetry, from the replies gradient as well. A link
// ascends when the reply's value is strictly greater than its parent's.

#ifndef CONTROVERSY_PSYCH_H_
#define CONTROVERSY_PSYCH_H_

#include <array>
#include <bitset>
#include <cstdint>
#include <optional>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "controversy/interaction.h"
#include "controversy/text.h"
#include "controversy/thread.h"

namespace controversy {

struct PsychFeatures {
  double ascending_gradient = 0.0;       // p_a, share of likes-ascending links
  double tier_ascending_gradient = 0.0;  // p_t, share of replies-ascending links
  int link_count = 0;                    // m, comment -> comment links
};

PsychFeatures psych_features(const CommentTree &tree);
double ascending_gradient(const CommentTree &tree);
double tier_ascending_gradient(const CommentTree &tree);

// Gradients over an explicit link list. `reply_counts[node]` supplies R for
// every node referenced by `links`.
PsychFeatures psych_features(const CommentTree &tree,
                             std::span<const ReplyLink> links,
                             std::span<const int> reply_counts);

// Feature slots in export order.
enum class Feature : int {
  kSize,
  kDepth,
  kBreadth,
  kAvgDegree,
  kVirality,
  kTMin,
  kTAvg,
  kDensity,
  kAvgUps,
  kCommentEmotion,
  kPostEmotion,
  kAscendingGradient,
  kTierAscendingGradient,
};

inline constexpr int kNumFeatures = 13;
using FeatureMask = std::bitset<kNumFeatures>;

// Column names: n, d, b, k, v, t_min, t_avg, c, q, s_c, s_p, p_a, p_t.
const std::array<std::string_view, kNumFeatures> &feature_names();
// Index of a column name, or -1.
int feature_index(std::string_view name);

// Cumulative feature groups.
enum class FeatureMode { kStructure, kInteraction, kText, kPsychology };

FeatureMask mode_mask(FeatureMode mode);  // 5, 9, 11 and 13 slots
// The one-page set: size plus interaction, text and psychology (9 slots).
FeatureMask one_page_mask();

std::string_view mode_name(FeatureMode mode);
// Accepts the lowercase names ("structure", ...). Throws
// std::invalid_argument for anything else.
FeatureMode parse_mode(std::string_view name);

struct FeatureOptions {
  InteractionOptions interaction;
  TextOptions text;
};

struct FeatureVector {
  std::string post_id;
  std::optional<bool> label;
  std::array<double, kNumFeatures> values{};  // inactive slots hold 0
  FeatureMask mask;

  double operator[](Feature f) const { return values[static_cast<int>(f)]; }
  int active_count() const { return static_cast<int>(mask.count()); }
  // Values of the active slots in slot order.
  std::vector<double> active_values() const;
};

// All 13 features, then masked to the mode.
FeatureVector feature_vector(const CommentTree &tree, const Lexicon &lexicon,
                             FeatureMode mode,
                             const FeatureOptions &options = {});
FeatureVector feature_vector(const CommentTree &tree, const Lexicon &lexicon,
                             const FeatureMask &mask,
                             const FeatureOptions &options = {});

// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_field(std::string_view field);

// CSV with header `post_id,label,n,...,p_t`. Inactive slots and unknown
// labels are written as empty cells.
void write_feature_csv(std::ostream &out, std::span<const FeatureVector> rows);

// Reads what write_feature_csv writes. Non-empty cells define each row's
// mask. Throws SchemaError naming `source` and the line on bad input.
std::vector<FeatureVector> read_feature_csv(std::istream &in,
                                            const std::string &source);

}  // namespace controversy

#endif  // CONTROVERSY_PSYCH_H_
