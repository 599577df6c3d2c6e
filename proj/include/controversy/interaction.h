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

#ifndef CONTROVERSY_INTERACTION_H_
#define CONTROVERSY_INTERACTION_H_

#include <cstdint>
#include <span>

#include "controversy/thread.h"

namespace controversy {

struct InteractionOptions {
  // Count post -> top-level comment links as reply links.
  bool include_root_links = true;
};

struct InteractionFeatures {
  double t_min = 0.0;    // shortest reply interval, seconds
  double t_avg = 0.0;    // mean reply interval, seconds
  double density = 0.0;  // comments per second over delta (1 s floor)
  double avg_ups = 0.0;  // mean likes per comment
  double delta = 0.0;    // latest comment time - post time, clamped at 0
  // Data quality: reply links whose child predates its parent. Their
  // interval is clamped to 0.
  int clamped_intervals = 0;
};

// A parent -> child reply link between node indices of some tree.
struct ReplyLink {
  int parent = 0;
  int child = 0;
};

InteractionFeatures interaction_features(const CommentTree &tree,
                                         const InteractionOptions &options = {});

// Same statistics over an explicit comment subset and link list. Used by
// the one-page protocol where only part of the tree is visible.
InteractionFeatures interaction_features(const CommentTree &tree,
                                         std::span<const int> nodes,
                                         std::span<const ReplyLink> links);

}  // namespace controversy

#endif  // CONTROVERSY_INTERACTION_H_
