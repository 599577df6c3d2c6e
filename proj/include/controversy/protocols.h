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

// Reduced views of a thread: the one-page hot-comment view and the
// early-detection time prefix.

#ifndef CONTROVERSY_PROTOCOLS_H_
#define CONTROVERSY_PROTOCOLS_H_

#include <vector>

#include "controversy/psych.h"

namespace controversy {

struct OnePageView {
  std::vector<int> hot;       // top-liked comment nodes, ascending
  std::vector<int> retained;  // hot comments plus their direct replies
  std::vector<ReplyLink> links;  // hot -> reply, comment to comment
};

// The ceil(ratio * n) most-liked comments (ties go to the lower comment id)
// and their direct replies. Throws std::invalid_argument unless
// 0 < ratio <= 1.
OnePageView one_page_view(const CommentTree &tree, double ratio);

// Nine-slot vector (size, interaction, text and psychology features) over
// the one-page view. Reply counts are taken inside the retained subgraph.
// Interaction links add post -> comment links of retained top-level
// comments when include_root_links is set.
FeatureVector one_page_filter(const CommentTree &tree, double ratio,
                              const Lexicon &lexicon,
                              const FeatureOptions &options = {});

// Comments with comment_time <= post_time + horizon whose parent is also
// kept. Throws std::invalid_argument unless horizon > 0.
CommentTree time_slice(const CommentTree &tree, Timestamp horizon);

}  // namespace controversy

#endif  // CONTROVERSY_PROTOCOLS_H_
