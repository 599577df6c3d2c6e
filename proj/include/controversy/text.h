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

// Lexicon-based sentiment scoring. A text scores the mean valence of the
// tokens it shares with the lexicon, 0 when nothing matches.

#ifndef CONTROVERSY_TEXT_H_
#define CONTROVERSY_TEXT_H_

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "controversy/thread.h"

namespace controversy {

class Lexicon {
 public:
  Lexicon() = default;
  // Scores must lie in [-1, 1] and tokens be non-empty; throws
  // std::invalid_argument otherwise.
  Lexicon(std::string name, std::unordered_map<std::string, double> entries,
          bool case_folding);

  // TSV `token<TAB>score`, UTF-8, '#' starts a comment line. Throws
  // DataError with the offending line number.
  static Lexicon Load(const std::string &path, bool case_folding = true);

  // A small English lexicon for tests and demos.
  static Lexicon BuiltinDemo();

  const std::string &name() const { return name_; }
  bool case_folding() const { return case_folding_; }
  std::size_t size() const { return entries_.size(); }

  // nullptr when the token is unknown. `token` must already be folded when
  // the lexicon folds case.
  const double *find(std::string_view token) const;

  // Same entries with every score multiplied by -1.
  Lexicon negated() const;

 private:
  std::string name_;
  std::unordered_map<std::string, double> entries_;
  bool case_folding_ = true;
};

// Splits on Unicode whitespace and punctuation. Case folding covers ASCII
// and Latin-1 letters.
std::vector<std::string> tokenize(std::string_view text, bool case_folding);

double score_text(std::string_view text, const Lexicon &lexicon);

struct TextOptions {
  // Average |c_i| instead of signed scores for the comment feature.
  bool absolute_intensity = false;
};

struct TextFeatures {
  double comment_emotion = 0.0;  // s_c
  double post_emotion = 0.0;     // s_p
};

TextFeatures text_features(const CommentTree &tree, const Lexicon &lexicon,
                           const TextOptions &options = {});

// Over a subset of comment nodes.
TextFeatures text_features(const CommentTree &tree, std::span<const int> nodes,
                           const Lexicon &lexicon,
                           const TextOptions &options = {});

}  // namespace controversy

#endif  // CONTROVERSY_TEXT_H_
