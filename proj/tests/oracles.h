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

// Brute-force reference computations and random inputs shared by the unit
// tests and the acceptance suite. Nothing here calls the feature code.

#ifndef CONTROVERSY_TESTS_ORACLES_H_
#define CONTROVERSY_TESTS_ORACLES_H_

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <fmt/format.h>

#include "controversy/psych.h"
#include "controversy/random.h"
#include "controversy/thread.h"

namespace controversy::testing {

// Post v0 at t=0; v1 (v0, t=10, 5 likes), v2 (v0, t=20, 1), v3 (v1, t=30, 7),
// v4 (v3, t=50, 2).
inline CommentTree T1Tree() {
  Post post{"gun", "t1", 0, "Guns are good, or bad?", true};
  auto comment = [](std::string id, Timestamp t, std::int64_t likes,
                    std::string text, std::string parent) {
    return Comment{"t1", std::move(id), t, likes, std::move(text),
                   std::move(parent)};
  };
  std::vector<Comment> comments = {
      comment("t1-c1", 10, 5, "I love it", "t1"),
      comment("t1-c2", 20, 1, "bad bad great", "t1"),
      comment("t1-c3", 30, 7, "Wrong! I hate this", "t1-c1"),
      comment("t1-c4", 50, 2, "ok", "t1-c3"),
  };
  return build_tree(post, comments);
}

struct RandomTreeOptions {
  int max_size = 50;
  std::int64_t max_likes = 10;
  bool allow_skew = true;  // children may predate their parents
};

// A random thread of 0..max_size comments. Node labels are shuffled so
// parents do not always sort before their replies.
inline CommentTree RandomTree(std::uint64_t seed,
                              const RandomTreeOptions &opt = {}) {
  static constexpr std::array<std::string_view, 14> kWords = {
      "good", "Bad",  "great", "hate", "ok",    "the",    "LOVE",
      "wrong", "sad", "fun",   "why?", "nice!", "agree,", "nonsense"};
  Rng rng(seed);
  const int n = static_cast<int>(uniform_index(rng, opt.max_size + 1));
  Post post;
  post.topic = "t";
  post.post_id = fmt::format("p{}", seed);
  post.post_time = static_cast<Timestamp>(uniform_index(rng, 100000));
  post.text = std::string(kWords[uniform_index(rng, kWords.size())]);
  post.label = uniform_index(rng, 2) == 1;

  // Abstract shape: node i > 0 hangs under some node < i.
  std::vector<int> shape_parent(n + 1, -1);
  for (int i = 1; i <= n; ++i) {
    shape_parent[i] = static_cast<int>(uniform_index(rng, i));
  }
  std::vector<int> label(n + 1, 0);
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i + 1;
  shuffle(rng, perm);
  for (int i = 1; i <= n; ++i) label[i] = perm[i - 1];

  std::vector<Timestamp> offset(n + 1, 0);
  std::vector<Comment> comments(n);
  std::vector<int> parents(n);
  for (int i = 1; i <= n; ++i) {
    const Timestamp step = static_cast<Timestamp>(uniform_index(rng, 500));
    offset[i] = offset[shape_parent[i]] + step;
    if (opt.allow_skew && uniform_index(rng, 10) == 0) {
      offset[i] = std::max<Timestamp>(
          0, offset[shape_parent[i]] -
                 static_cast<Timestamp>(uniform_index(rng, 50)));
    }
    Comment &c = comments[label[i] - 1];
    c.post_id = post.post_id;
    c.comment_id = fmt::format("c{:03d}", label[i]);
    c.comment_time = post.post_time + offset[i];
    c.likes = static_cast<std::int64_t>(
        uniform_index(rng, static_cast<std::uint64_t>(opt.max_likes + 1)));
    const int words = static_cast<int>(uniform_index(rng, 4));
    for (int w = 0; w < words; ++w) {
      if (w > 0) c.text += ' ';
      c.text += kWords[uniform_index(rng, kWords.size())];
    }
    parents[label[i] - 1] = shape_parent[i] == 0 ? 0 : label[shape_parent[i]];
  }
  return CommentTree::FromParentIndex(post, std::move(comments),
                                      std::move(parents));
}

// Comment-to-comment and root links listed straight from the parent map.
struct Edge {
  int parent;
  int child;
};

inline std::vector<Edge> EnumerateEdges(const CommentTree &tree,
                                        bool include_root) {
  std::vector<Edge> edges;
  for (int v = 1; v <= tree.size(); ++v) {
    const int p = tree.parent(v);
    if (p == 0 && !include_root) continue;
    edges.push_back({p, v});
  }
  return edges;
}

// Depth by walking up to the root.
inline int OracleDepthOf(const CommentTree &tree, int node) {
  int d = 0;
  while (node != 0) {
    node = tree.parent(node);
    ++d;
  }
  return d;
}

// Mean distance over ordered comment pairs, Floyd-Warshall on the
// undirected tree including the root.
inline double OracleVirality(const CommentTree &tree) {
  const int n = tree.size();
  if (n <= 1) return 0.0;
  const int m = n + 1;
  constexpr int kInf = std::numeric_limits<int>::max() / 4;
  std::vector<std::vector<int>> dist(m, std::vector<int>(m, kInf));
  for (int i = 0; i < m; ++i) dist[i][i] = 0;
  for (const Edge &e : EnumerateEdges(tree, true)) {
    dist[e.parent][e.child] = 1;
    dist[e.child][e.parent] = 1;
  }
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
      }
    }
  }
  double sum = 0.0;
  for (int i = 1; i < m; ++i) {
    for (int j = 1; j < m; ++j) {
      if (i != j) sum += dist[i][j];
    }
  }
  return sum / (static_cast<double>(n) * (n - 1));
}

// Lowercased ASCII alphanumeric runs; enough for the ASCII test corpora.
inline double OracleScore(std::string_view text,
                          const std::unordered_map<std::string, double> &lex) {
  double sum = 0.0;
  int hits = 0;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    auto it = lex.find(token);
    if (it != lex.end()) {
      sum += it->second;
      ++hits;
    }
    token.clear();
  };
  for (char ch : text) {
    if (std::isalnum(static_cast<unsigned char>(ch))) {
      token += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    } else {
      flush();
    }
  }
  flush();
  return hits == 0 ? 0.0 : sum / hits;
}

inline const std::unordered_map<std::string, double> &DemoLexiconEntries() {
  static const std::unordered_map<std::string, double> entries = {
      {"good", 0.5},       {"great", 0.8},    {"love", 0.8},
      {"excellent", 0.9},  {"nice", 0.4},     {"happy", 0.6},
      {"agree", 0.3},      {"thanks", 0.4},   {"beautiful", 0.7},
      {"fun", 0.5},        {"bad", -0.5},     {"terrible", -0.8},
      {"hate", -0.8},      {"awful", -0.8},   {"wrong", -0.4},
      {"stupid", -0.7},    {"disagree", -0.3}, {"liar", -0.7},
      {"angry", -0.6},     {"sad", -0.5},     {"nonsense", -0.6},
      {"ridiculous", -0.6},
  };
  return entries;
}

// All 13 features from first principles, in slot order.
inline std::array<double, kNumFeatures> OracleFeatures(
    const CommentTree &tree,
    const std::unordered_map<std::string, double> &lex) {
  std::array<double, kNumFeatures> f{};
  const int n = tree.size();
  f[11] = 0.0;
  f[10] = OracleScore(tree.post().text, lex);
  if (n == 0) return f;

  // Structure.
  std::vector<int> per_depth(n + 2, 0);
  int depth = 0;
  for (int v = 1; v <= n; ++v) {
    const int d = OracleDepthOf(tree, v);
    depth = std::max(depth, d);
    ++per_depth[d];
  }
  const std::vector<Edge> all = EnumerateEdges(tree, true);
  const std::vector<Edge> inner = EnumerateEdges(tree, false);
  f[0] = n;
  f[1] = depth;
  f[2] = *std::max_element(per_depth.begin() + 1, per_depth.end());
  f[3] = static_cast<double>(inner.size()) / n;
  f[4] = OracleVirality(tree);

  // Interaction over every link, root links included.
  std::int64_t tmin = std::numeric_limits<std::int64_t>::max();
  std::int64_t tsum = 0;
  for (const Edge &e : all) {
    const std::int64_t dt =
        std::max<std::int64_t>(0, tree.time(e.child) - tree.time(e.parent));
    tmin = std::min(tmin, dt);
    tsum += dt;
  }
  f[5] = static_cast<double>(tmin);
  f[6] = static_cast<double>(tsum) / static_cast<double>(all.size());
  Timestamp latest = tree.post().post_time;
  std::int64_t likes = 0;
  for (int v = 1; v <= n; ++v) {
    latest = std::max(latest, tree.comment(v).comment_time);
    likes += tree.comment(v).likes;
  }
  const std::int64_t delta =
      std::max<std::int64_t>(1, latest - tree.post().post_time);
  f[7] = static_cast<double>(n) / static_cast<double>(delta);
  f[8] = static_cast<double>(likes) / n;

  // Text.
  double sc = 0.0;
  for (int v = 1; v <= n; ++v) sc += OracleScore(tree.comment(v).text, lex);
  f[9] = sc / n;

  // Gradients over comment-to-comment links.
  std::vector<int> replies(n + 1, 0);
  for (const Edge &e : all) ++replies[e.parent];
  int up_likes = 0;
  int up_replies = 0;
  for (const Edge &e : inner) {
    if (tree.comment(e.parent).likes < tree.comment(e.child).likes) ++up_likes;
    if (replies[e.parent] < replies[e.child]) ++up_replies;
  }
  if (!inner.empty()) {
    f[11] = static_cast<double>(up_likes) / static_cast<double>(inner.size());
    f[12] = static_cast<double>(up_replies) / static_cast<double>(inner.size());
  }
  return f;
}

// sup |F_a - F_b| evaluated at every pooled point by counting.
inline double OracleKs(const std::vector<double> &a,
                       const std::vector<double> &b) {
  double best = 0.0;
  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  for (double x : pooled) {
    double ca = 0;
    double cb = 0;
    for (double v : a) ca += v <= x;
    for (double v : b) cb += v <= x;
    best = std::max(best, std::abs(ca / a.size() - cb / b.size()));
  }
  return best;
}

}  // namespace controversy::testing

#endif  // CONTROVERSY_TESTS_ORACLES_H_
