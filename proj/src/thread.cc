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

#include "controversy/thread.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "controversy/errors.h"

namespace controversy {

using json = nlohmann::json;

CommentTree CommentTree::FromParentIndex(Post post,
                                         std::vector<Comment> comments,
                                         std::vector<int> parents) {
  if (parents.size() != comments.size()) {
    throw std::invalid_argument("parent index size does not match comments");
  }
  CommentTree tree;
  tree.post_ = std::move(post);
  tree.comments_ = std::move(comments);
  const int num_nodes = tree.num_nodes();
  tree.parent_.assign(num_nodes, -1);
  tree.depth_.assign(num_nodes, -1);
  tree.children_.assign(num_nodes, {});
  for (int node = 1; node < num_nodes; ++node) {
    const int parent = parents[node - 1];
    if (parent < 0 || parent >= num_nodes || parent == node) {
      throw std::invalid_argument("invalid parent index");
    }
    tree.parent_[node] = parent;
    tree.children_[parent].push_back(node);
  }
  tree.bfs_order_.reserve(num_nodes);
  tree.bfs_order_.push_back(kRoot);
  tree.depth_[kRoot] = 0;
  for (std::size_t head = 0; head < tree.bfs_order_.size(); ++head) {
    const int node = tree.bfs_order_[head];
    for (int child : tree.children_[node]) {
      tree.depth_[child] = tree.depth_[node] + 1;
      tree.bfs_order_.push_back(child);
    }
  }
  if (static_cast<int>(tree.bfs_order_.size()) != num_nodes) {
    throw std::invalid_argument("parent index contains a cycle");
  }
  return tree;
}

int CommentTree::find(const std::string &comment_id) const {
  auto it = std::lower_bound(
      comments_.begin(), comments_.end(), comment_id,
      [](const Comment &c, const std::string &id) { return c.comment_id < id; });
  if (it == comments_.end() || it->comment_id != comment_id) return -1;
  return static_cast<int>(it - comments_.begin()) + 1;
}

std::vector<Comment> CommentTree::effective_comments() const {
  std::vector<Comment> out = comments_;
  for (int node = 1; node <= size(); ++node) {
    const int p = parent_[node];
    out[node - 1].parent_id =
        p == kRoot ? post_.post_id : comments_[p - 1].comment_id;
  }
  return out;
}

bool CommentTree::operator==(const CommentTree &other) const {
  return post_ == other.post_ && parent_ == other.parent_ &&
         effective_comments() == other.effective_comments();
}

CommentTree build_tree(const Post &post, std::span<const Comment> comments,
                       RepairPolicy policy, BuildReport *report) {
  const int count = static_cast<int>(comments.size());
  std::vector<int> order(count);
  std::iota(order.begin(), order.end(), 0);
  for (const Comment &c : comments) {
    if (c.post_id != post.post_id) {
      throw std::invalid_argument("comment " + c.comment_id +
                                  " belongs to post " + c.post_id + ", not " +
                                  post.post_id);
    }
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return comments[a].comment_id < comments[b].comment_id;
  });

  // Duplicate ids, including a comment reusing the post id.
  std::vector<std::string> duplicates;
  for (int i = 0; i < count; ++i) {
    const std::string &id = comments[order[i]].comment_id;
    const bool repeats =
        (i > 0 && comments[order[i - 1]].comment_id == id) || id == post.post_id;
    if (repeats && (duplicates.empty() || duplicates.back() != id)) {
      duplicates.push_back(id);
    }
  }
  if (!duplicates.empty()) {
    std::string list;
    for (const auto &id : duplicates) list += (list.empty() ? "" : ", ") + id;
    throw DataError("duplicate comment ids in post " + post.post_id + ": " +
                    list);
  }

  // Resolve parent references in sorted-position space: 0..count-1 are
  // comments, kPost the post, kMissing an unknown id.
  constexpr int kPost = -1;
  constexpr int kMissing = -2;
  std::unordered_map<std::string, int> position;
  position.reserve(count);
  for (int i = 0; i < count; ++i) position[comments[order[i]].comment_id] = i;
  std::vector<int> ref(count);
  for (int i = 0; i < count; ++i) {
    const std::string &pid = comments[order[i]].parent_id;
    if (pid == post.post_id) {
      ref[i] = kPost;
    } else {
      auto it = position.find(pid);
      ref[i] = it == position.end() ? kMissing : it->second;
    }
  }

  enum State : unsigned char { kUnseen, kOnPath, kAttached, kBroken };
  std::vector<State> state(count, kUnseen);
  std::vector<bool> broken_head(count, false);  // missing parent or on a cycle
  std::vector<int> path;
  for (int start = 0; start < count; ++start) {
    if (state[start] != kUnseen) continue;
    path.clear();
    int cur = start;
    State outcome;
    while (true) {
      state[cur] = kOnPath;
      path.push_back(cur);
      const int next = ref[cur];
      if (next == kPost) {
        outcome = kAttached;
        break;
      }
      if (next == kMissing) {
        broken_head[cur] = true;
        outcome = kBroken;
        break;
      }
      if (state[next] == kOnPath) {
        auto it = std::find(path.begin(), path.end(), next);
        for (; it != path.end(); ++it) broken_head[*it] = true;
        outcome = kBroken;
        break;
      }
      if (state[next] != kUnseen) {
        outcome = state[next];
        break;
      }
      cur = next;
    }
    for (int node : path) state[node] = outcome;
  }

  std::vector<int> keep;  // sorted positions retained
  BuildReport local;
  for (int i = 0; i < count; ++i) {
    if (state[i] == kAttached) {
      keep.push_back(i);
    } else if (policy == RepairPolicy::kReattachRoot) {
      keep.push_back(i);
      if (broken_head[i]) {
        ref[i] = kPost;
        local.reattached.push_back(comments[order[i]].comment_id);
      }
    } else {
      local.dropped.push_back(comments[order[i]].comment_id);
    }
  }

  std::vector<int> node_of(count, -1);
  for (std::size_t k = 0; k < keep.size(); ++k) {
    node_of[keep[k]] = static_cast<int>(k) + 1;
  }
  std::vector<Comment> kept;
  std::vector<int> parents;
  kept.reserve(keep.size());
  parents.reserve(keep.size());
  for (int i : keep) {
    kept.push_back(comments[order[i]]);
    parents.push_back(ref[i] == kPost ? CommentTree::kRoot : node_of[ref[i]]);
  }
  if (report != nullptr) *report = std::move(local);
  return CommentTree::FromParentIndex(post, std::move(kept),
                                      std::move(parents));
}

namespace {

std::string id_field(const json &obj, const char *key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw std::runtime_error(std::string("missing ") + key);
  if (it->is_string()) {
    std::string s = it->get<std::string>();
    if (s.empty()) throw std::runtime_error(std::string("empty ") + key);
    return s;
  }
  if (it->is_number_integer()) return it->dump();
  throw std::runtime_error(std::string(key) + " must be a string");
}

std::string text_field(const json &obj, const char *key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw std::runtime_error(std::string("missing ") + key);
  if (it->is_null()) return {};
  if (!it->is_string()) {
    throw std::runtime_error(std::string(key) + " must be a string");
  }
  return it->get<std::string>();
}

// Seconds; fractional parts are truncated.
Timestamp time_field(const json &obj, const char *key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw std::runtime_error(std::string("missing ") + key);
  if (it->is_number_integer()) return it->get<std::int64_t>();
  if (it->is_number_float()) {
    const double v = it->get<double>();
    if (!std::isfinite(v)) {
      throw std::runtime_error(std::string(key) + " is not finite");
    }
    return static_cast<Timestamp>(std::trunc(v));
  }
  throw std::runtime_error(std::string(key) + " must be a number");
}

Post parse_post(const json &obj) {
  if (!obj.is_object()) throw std::runtime_error("record is not an object");
  Post post;
  post.topic = text_field(obj, "topic");
  post.post_id = id_field(obj, "post_id");
  post.post_time = time_field(obj, "post_time");
  if (post.post_time < 0) throw std::runtime_error("post_time is negative");
  post.text = text_field(obj, "text");
  if (auto it = obj.find("label"); it != obj.end() && !it->is_null()) {
    if (it->is_boolean()) {
      post.label = it->get<bool>();
    } else if (it->is_number_integer() &&
               (it->get<std::int64_t>() == 0 || it->get<std::int64_t>() == 1)) {
      post.label = it->get<std::int64_t>() == 1;
    } else {
      throw std::runtime_error("label must be 0 or 1");
    }
  }
  return post;
}

Comment parse_comment(const json &obj) {
  if (!obj.is_object()) throw std::runtime_error("record is not an object");
  Comment c;
  c.post_id = id_field(obj, "post_id");
  c.comment_id = id_field(obj, "comment_id");
  c.comment_time = time_field(obj, "comment_time");
  auto likes = obj.find("likes");
  if (likes == obj.end()) throw std::runtime_error("missing likes");
  if (likes->is_number_unsigned() || likes->is_number_integer()) {
    c.likes = likes->get<std::int64_t>();
  } else if (likes->is_number_float() &&
             likes->get<double>() == std::trunc(likes->get<double>())) {
    c.likes = static_cast<std::int64_t>(likes->get<double>());
  } else {
    throw std::runtime_error("likes must be an integer");
  }
  if (c.likes < 0) throw std::runtime_error("likes is negative");
  c.text = text_field(obj, "text");
  c.parent_id = id_field(obj, "parent_id");
  return c;
}

bool is_blank(const std::string &line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char ch) {
    return ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n';
  });
}

// Calls `handle(line_number, json)` for every non-blank line. Parse and
// handler failures are either skipped into `report` or rethrown.
template <typename Handler>
void for_each_record(const std::string &path, const ParseOptions &options,
                     ParseReport &report, Handler handle) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    try {
      handle(line_no, json::parse(line));
    } catch (const std::exception &e) {
      if (options.strict) throw SchemaError(path, line_no, e.what());
      report.skipped.push_back({path, line_no, e.what()});
      spdlog::warn("{}:{}: skipped: {}", path, line_no, e.what());
    }
  }
  if (in.bad()) throw DataError("error while reading " + path);
}

}  // namespace

ParsedDataset parse_dataset(const std::string &posts_path,
                            const std::string &comments_path,
                            const ParseOptions &options) {
  ParsedDataset out;
  std::unordered_map<std::string, std::size_t> index;
  for_each_record(posts_path, options, out.report,
                  [&](std::size_t, const json &obj) {
                    Post post = parse_post(obj);
                    if (index.count(post.post_id)) {
                      throw std::runtime_error("duplicate post_id " +
                                               post.post_id);
                    }
                    index.emplace(post.post_id, out.threads.size());
                    out.threads.push_back({std::move(post), {}});
                  });

  std::size_t accepted = 0;
  for_each_record(comments_path, options, out.report,
                  [&](std::size_t, const json &obj) {
                    Comment c = parse_comment(obj);
                    auto it = index.find(c.post_id);
                    if (it == index.end()) {
                      ++out.report.orphan_comments;
                      throw std::runtime_error("unknown post_id " + c.post_id);
                    }
                    out.threads[it->second].comments.push_back(std::move(c));
                    ++accepted;
                  });
  if (accepted == 0) {
    out.report.warnings.push_back("no comments loaded from " + comments_path);
    spdlog::warn("no comments loaded from {}", comments_path);
  }
  return out;
}

std::string post_to_json_line(const Post &post) {
  json obj = {{"topic", post.topic},
              {"post_id", post.post_id},
              {"post_time", post.post_time},
              {"text", post.text}};
  if (post.label) obj["label"] = *post.label ? 1 : 0;
  return obj.dump();
}

std::string comment_to_json_line(const Comment &c) {
  json obj = {{"post_id", c.post_id},       {"comment_id", c.comment_id},
              {"comment_time", c.comment_time}, {"likes", c.likes},
              {"text", c.text},             {"parent_id", c.parent_id}};
  return obj.dump();
}

void write_dataset(std::span<const Thread> threads,
                   const std::string &posts_path,
                   const std::string &comments_path) {
  std::ofstream posts(posts_path);
  std::ofstream comments(comments_path);
  if (!posts) throw DataError("cannot write " + posts_path);
  if (!comments) throw DataError("cannot write " + comments_path);
  for (const Thread &t : threads) {
    posts << post_to_json_line(t.post) << '\n';
    for (const Comment &c : t.comments) {
      comments << comment_to_json_line(c) << '\n';
    }
  }
}

}  // namespace controversy
