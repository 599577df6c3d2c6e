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

#include "controversy/structural.h"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace controversy {

StructuralFeatures structural_features(const CommentTree &tree) {
  StructuralFeatures f;
  const int n = tree.size();
  f.size = n;
  if (n == 0) return f;

  std::vector<int> per_depth(1, 0);
  std::int64_t comment_children = 0;
  for (int node = 1; node <= n; ++node) {
    const int d = tree.depth(node);
    if (d >= static_cast<int>(per_depth.size())) per_depth.resize(d + 1, 0);
    ++per_depth[d];
    comment_children += static_cast<std::int64_t>(tree.children(node).size());
  }
  f.depth = static_cast<int>(per_depth.size()) - 1;
  f.breadth = *std::max_element(per_depth.begin() + 1, per_depth.end());
  f.avg_degree = static_cast<double>(comment_children) / n;

  if (n > 1) {
    // Every tree edge separates the comments into the child's subtree (s)
    // and the rest (n - s); it lies on the path of each such pair, once per
    // direction.
    std::vector<std::int64_t> subtree(tree.num_nodes(), 0);
    const auto &order = tree.bfs_order();
    std::int64_t distance_sum = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int node = *it;
      if (node == CommentTree::kRoot) continue;
      subtree[node] += 1;
      subtree[tree.parent(node)] += subtree[node];
      distance_sum += 2 * subtree[node] * (n - subtree[node]);
    }
    f.virality = static_cast<double>(distance_sum) /
                 (static_cast<double>(n) * static_cast<double>(n - 1));
  }
  return f;
}

}  // namespace controversy
