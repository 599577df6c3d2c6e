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

// Thread data model: posts, comments and the rooted comment tree built from
// their parent references.

#ifndef CONTROVERSY_THREAD_H_
#define CONTROVERSY_THREAD_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace controversy {

using Timestamp = std::int64_t;  // whole seconds since the epoch

struct Post {
  std::string topic;
  std::string post_id;
  Timestamp post_time = 0;
  std::string text;
  std::optional<bool> label;  // true = controversial

  bool operator==(const Post &) const = default;
};

struct Comment {
  std::string post_id;
  std::string comment_id;
  Timestamp comment_time = 0;
  std::int64_t likes = 0;
  std::string text;
  std::string parent_id;  // post_id for top-level comments

  bool operator==(const Comment &) const = default;
};

// A post together with the raw comment records that claim to belong to it.
struct Thread {
  Post post;
  std::vector<Comment> comments;
};

enum class RepairPolicy {
  kDrop,          // remove comments whose parent chain does not reach the post
  kReattachRoot,  // hang the first broken link directly under the post
};

// What build_tree did to comments it could not attach as given.
struct BuildReport {
  std::vector<std::string> dropped;     // sorted comment ids
  std::vector<std::string> reattached;  // sorted comment ids
};

// Immutable rooted tree. Node 0 is the post; nodes 1..size() are comments
// ordered by comment_id, so the layout does not depend on input order.
class CommentTree {
 public:
  static constexpr int kRoot = 0;

  CommentTree() = default;

  // Assembles a tree from comments and their parent node indices
  // (parents[i] is the node index of comments[i]'s parent, 0 = post).
  // Comments must be sorted by comment_id and the parent map acyclic.
  static CommentTree FromParentIndex(Post post, std::vector<Comment> comments,
                                     std::vector<int> parents);

  const Post &post() const { return post_; }
  // Number of comments, the root excluded.
  int size() const { return static_cast<int>(comments_.size()); }
  int num_nodes() const { return size() + 1; }

  // `node` in 1..size().
  const Comment &comment(int node) const { return comments_[node - 1]; }
  std::span<const Comment> comments() const { return comments_; }

  int parent(int node) const { return parent_[node]; }  // -1 for the root
  int depth(int node) const { return depth_[node]; }
  std::span<const int> children(int node) const { return children_[node]; }

  // Timestamp of any node; the root reports the post time.
  Timestamp time(int node) const {
    return node == kRoot ? post_.post_time : comments_[node - 1].comment_time;
  }

  // Nodes in breadth-first order starting at the root.
  const std::vector<int> &bfs_order() const { return bfs_order_; }

  // Finds the node index of a comment id, or -1.
  int find(const std::string &comment_id) const;

  // Comment records with parent_id rewritten to the effective parent, so
  // rebuilding from them reproduces this tree.
  std::vector<Comment> effective_comments() const;

  bool operator==(const CommentTree &other) const;

 private:
  Post post_;
  std::vector<Comment> comments_;
  std::vector<int> parent_;
  std::vector<int> depth_;
  std::vector<std::vector<int>> children_;
  std::vector<int> bfs_order_;
};

// Assembles the tree for one post. All comments must carry post.post_id.
// Throws DataError listing the offenders when comment ids repeat.
CommentTree build_tree(const Post &post, std::span<const Comment> comments,
                       RepairPolicy policy = RepairPolicy::kDrop,
                       BuildReport *report = nullptr);

struct ParseOptions {
  bool strict = false;  // malformed lines are fatal instead of skipped
};

struct SkippedLine {
  std::string path;
  std::size_t line = 0;
  std::string reason;
};

struct ParseReport {
  std::vector<SkippedLine> skipped;
  std::size_t orphan_comments = 0;  // comments naming an unknown post
  std::vector<std::string> warnings;
};

struct ParsedDataset {
  std::vector<Thread> threads;  // in posts-file order
  ParseReport report;
};

// Reads the posts and comments JSON Lines files. Unreadable files raise
// DataError; malformed records are skipped and reported, or raise
// SchemaError in strict mode.
ParsedDataset parse_dataset(const std::string &posts_path,
                            const std::string &comments_path,
                            const ParseOptions &options = {});

// Writes threads back out in the same JSON Lines schema.
void write_dataset(std::span<const Thread> threads,
                   const std::string &posts_path,
                   const std::string &comments_path);

std::string post_to_json_line(const Post &post);
std::string comment_to_json_line(const Comment &comment);

}  // namespace controversy

#endif  // CONTROVERSY_THREAD_H_
