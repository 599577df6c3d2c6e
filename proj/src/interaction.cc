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

#include "controversy/interaction.h"

#include <algorithm>
#include <limits>
#include <vector>

namespace controversy {

InteractionFeatures interaction_features(const CommentTree &tree,
                                         std::span<const int> nodes,
                                         std::span<const ReplyLink> links) {
  InteractionFeatures f;
  const auto n = static_cast<std::int64_t>(nodes.size());
  if (n == 0) return f;

  if (!links.empty()) {
    std::int64_t interval_sum = 0;
    std::int64_t interval_min = std::numeric_limits<std::int64_t>::max();
    for (const ReplyLink &link : links) {
      std::int64_t dt = tree.time(link.child) - tree.time(link.parent);
      if (dt < 0) {
        dt = 0;
        ++f.clamped_intervals;
      }
      interval_sum += dt;
      interval_min = std::min(interval_min, dt);
    }
    f.t_min = static_cast<double>(interval_min);
    f.t_avg = static_cast<double>(interval_sum) /
              static_cast<double>(links.size());
  }

  Timestamp latest = std::numeric_limits<Timestamp>::min();
  std::int64_t likes = 0;
  for (int node : nodes) {
    latest = std::max(latest, tree.time(node));
    likes += tree.comment(node).likes;
  }
  const std::int64_t delta =
      std::max<std::int64_t>(0, latest - tree.post().post_time);
  f.delta = static_cast<double>(delta);
  f.density = static_cast<double>(n) /
              static_cast<double>(std::max<std::int64_t>(delta, 1));
  f.avg_ups = static_cast<double>(likes) / static_cast<double>(n);
  return f;
}

InteractionFeatures interaction_features(const CommentTree &tree,
                                         const InteractionOptions &options) {
  std::vector<int> nodes;
  std::vector<ReplyLink> links;
  nodes.reserve(tree.size());
  links.reserve(tree.size());
  for (int node = 1; node <= tree.size(); ++node) {
    nodes.push_back(node);
    const int parent = tree.parent(node);
    if (parent != CommentTree::kRoot || options.include_root_links) {
      links.push_back({parent, node});
    }
  }
  return interaction_features(tree, nodes, links);
}

}  // namespace controversy
