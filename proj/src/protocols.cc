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

#include "controversy/protocols.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace controversy {

OnePageView one_page_view(const CommentTree &tree, double ratio) {
  if (!(ratio > 0.0 && ratio <= 1.0)) {
    throw std::invalid_argument("one-page ratio must lie in (0, 1]");
  }
  OnePageView view;
  const int n = tree.size();
  if (n == 0) return view;
  const int keep = std::min(
      n, static_cast<int>(std::ceil(ratio * n - 1e-9)));

  // Nodes are already in comment-id order, so a stable sort by likes
  // settles ties on the lower id.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return tree.comment(a).likes > tree.comment(b).likes;
  });
  view.hot.assign(order.begin(), order.begin() + keep);
  std::sort(view.hot.begin(), view.hot.end());

  std::vector<char> in(tree.num_nodes(), 0);
  for (int h : view.hot) {
    in[h] = 1;
    for (int child : tree.children(h)) {
      in[child] = 1;
      view.links.push_back({h, child});
    }
  }
  for (int node = 1; node <= n; ++node) {
    if (in[node]) view.retained.push_back(node);
  }
  return view;
}

FeatureVector one_page_filter(const CommentTree &tree, double ratio,
                              const Lexicon &lexicon,
                              const FeatureOptions &options) {
  const OnePageView view = one_page_view(tree, ratio);
  FeatureVector fv;
  fv.post_id = tree.post().post_id;
  fv.label = tree.post().label;
  fv.mask = one_page_mask();
  if (view.retained.empty()) return fv;

  std::vector<char> in(tree.num_nodes(), 0);
  for (int node : view.retained) in[node] = 1;
  std::vector<int> reply_counts(tree.num_nodes(), 0);
  for (int node : view.retained) {
    for (int child : tree.children(node)) {
      if (in[child]) ++reply_counts[node];
    }
  }

  std::vector<ReplyLink> interaction_links = view.links;
  if (options.interaction.include_root_links) {
    for (int node : view.retained) {
      if (tree.parent(node) == CommentTree::kRoot) {
        interaction_links.push_back({CommentTree::kRoot, node});
      }
    }
  }
  const InteractionFeatures in_f =
      interaction_features(tree, view.retained, interaction_links);
  const TextFeatures t = text_features(tree, view.retained, lexicon,
                                       options.text);
  const PsychFeatures p = psych_features(tree, view.links, reply_counts);

  fv.values[static_cast<int>(Feature::kSize)] =
      static_cast<double>(view.retained.size());
  fv.values[static_cast<int>(Feature::kTMin)] = in_f.t_min;
  fv.values[static_cast<int>(Feature::kTAvg)] = in_f.t_avg;
  fv.values[static_cast<int>(Feature::kDensity)] = in_f.density;
  fv.values[static_cast<int>(Feature::kAvgUps)] = in_f.avg_ups;
  fv.values[static_cast<int>(Feature::kCommentEmotion)] = t.comment_emotion;
  fv.values[static_cast<int>(Feature::kPostEmotion)] = t.post_emotion;
  fv.values[static_cast<int>(Feature::kAscendingGradient)] =
      p.ascending_gradient;
  fv.values[static_cast<int>(Feature::kTierAscendingGradient)] =
      p.tier_ascending_gradient;
  return fv;
}

CommentTree time_slice(const CommentTree &tree, Timestamp horizon) {
  if (horizon <= 0) throw std::invalid_argument("horizon must be > 0");
  const Timestamp cutoff = tree.post().post_time + horizon;
  std::vector<int> new_index(tree.num_nodes(), -1);
  new_index[CommentTree::kRoot] = CommentTree::kRoot;
  // Node order follows comment ids, not time, so parents can come later;
  // a breadth-first pass sees every parent first.
  for (int node : tree.bfs_order()) {
    if (node == CommentTree::kRoot) continue;
    if (new_index[tree.parent(node)] >= 0 && tree.time(node) <= cutoff) {
      new_index[node] = 0;
    }
  }
  std::vector<Comment> comments;
  std::vector<int> parents;
  int next = 1;
  for (int node = 1; node <= tree.size(); ++node) {
    if (new_index[node] < 0) continue;
    new_index[node] = next++;
  }
  for (int node = 1; node <= tree.size(); ++node) {
    if (new_index[node] < 0) continue;
    comments.push_back(tree.comment(node));
    parents.push_back(new_index[tree.parent(node)]);
  }
  return CommentTree::FromParentIndex(tree.post(), std::move(comments),
                                      std::move(parents));
}

}  // namespace controversy
