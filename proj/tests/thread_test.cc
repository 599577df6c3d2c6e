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
#include <vector>

#include <gtest/gtest.h>

#include "controversy/errors.h"
#include "controversy/random.h"
#include "oracles.h"
#include "test_util.h"

namespace controversy {
namespace {

using testing::FixturePath;
using testing::RandomTree;
using testing::TempDir;
using testing::WriteFile;

Post MakePost(const std::string &id) { return Post{"t", id, 100, "", true}; }

Comment MakeComment(const std::string &post, const std::string &id,
                    const std::string &parent, Timestamp t = 100) {
  return Comment{post, id, t, 0, "", parent};
}

TEST(BuildTree, TwoNodeChain) {
  const Post post = MakePost("p");
  const std::vector<Comment> comments = {MakeComment("p", "c1", "p"),
                                         MakeComment("p", "c2", "c1")};
  const CommentTree tree = build_tree(post, comments);
  ASSERT_EQ(tree.size(), 2);
  EXPECT_EQ(tree.depth(tree.find("c1")), 1);
  EXPECT_EQ(tree.depth(tree.find("c2")), 2);
  EXPECT_EQ(tree.depth(CommentTree::kRoot), 0);
}

TEST(BuildTree, FixtureT1Depths) {
  const CommentTree tree = testing::T1Tree();
  ASSERT_EQ(tree.size(), 4);
  std::vector<int> depths;
  for (const char *id : {"t1-c1", "t1-c2", "t1-c3", "t1-c4"}) {
    depths.push_back(tree.depth(tree.find(id)));
  }
  EXPECT_EQ(depths, (std::vector<int>{1, 1, 2, 3}));
  EXPECT_EQ(tree.parent(tree.find("t1-c3")), tree.find("t1-c1"));
}

TEST(BuildTree, SelfLoopIsDroppedByDefault) {
  const Post post = MakePost("p");
  const std::vector<Comment> comments = {MakeComment("p", "c1", "p"),
                                         MakeComment("p", "c2", "c2")};
  BuildReport report;
  const CommentTree tree = build_tree(post, comments, RepairPolicy::kDrop,
                                      &report);
  EXPECT_EQ(tree.size(), 1);
  EXPECT_EQ(report.dropped, std::vector<std::string>{"c2"});
  EXPECT_EQ(tree.find("c2"), -1);
}

TEST(BuildTree, CycleDropsWholeBrokenChain) {
  const Post post = MakePost("p");
  const std::vector<Comment> comments = {
      MakeComment("p", "a", "b"), MakeComment("p", "b", "a"),
      MakeComment("p", "c", "a"), MakeComment("p", "d", "p")};
  BuildReport report;
  const CommentTree tree = build_tree(post, comments, RepairPolicy::kDrop,
                                      &report);
  EXPECT_EQ(tree.size(), 1);
  EXPECT_EQ(report.dropped, (std::vector<std::string>{"a", "b", "c"}));
}

TEST(BuildTree, ReattachHangsBrokenHeadsUnderRoot) {
  const Post post = MakePost("p");
  const std::vector<Comment> comments = {MakeComment("p", "a", "missing"),
                                         MakeComment("p", "b", "a")};
  BuildReport report;
  const CommentTree tree =
      build_tree(post, comments, RepairPolicy::kReattachRoot, &report);
  ASSERT_EQ(tree.size(), 2);
  EXPECT_EQ(tree.parent(tree.find("a")), CommentTree::kRoot);
  EXPECT_EQ(tree.parent(tree.find("b")), tree.find("a"));
  EXPECT_EQ(report.reattached, std::vector<std::string>{"a"});
}

TEST(BuildTree, DuplicateIdsAreListed) {
  const Post post = MakePost("p");
  const std::vector<Comment> comments = {MakeComment("p", "a", "p"),
                                         MakeComment("p", "a", "p"),
                                         MakeComment("p", "b", "p")};
  try {
    build_tree(post, comments);
    FAIL() << "expected DataError";
  } catch (const DataError &e) {
    EXPECT_NE(std::string(e.what()).find("a"), std::string::npos);
  }
}

TEST(BuildTree, ForeignCommentIsRejected) {
  const Post post = MakePost("p");
  const std::vector<Comment> comments = {MakeComment("q", "a", "q")};
  EXPECT_THROW(build_tree(post, comments), std::invalid_argument);
}

TEST(BuildTree, EdgeCountMatchesChildLists) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const CommentTree tree = RandomTree(seed);
    int child_total = 0;
    for (int v = 0; v < tree.num_nodes(); ++v) {
      child_total += static_cast<int>(tree.children(v).size());
    }
    EXPECT_EQ(child_total, tree.size()) << "seed " << seed;
    EXPECT_EQ(static_cast<int>(tree.bfs_order().size()), tree.num_nodes());
  }
}

TEST(BuildTree, IndependentOfInputOrder) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const CommentTree tree = RandomTree(seed);
    std::vector<Comment> comments = tree.effective_comments();
    Rng rng(seed + 1000);
    shuffle(rng, comments);
    EXPECT_EQ(build_tree(tree.post(), comments), tree) << "seed " << seed;
  }
}

TEST(Dataset, RoundTripThroughFiles) {
  TempDir dir;
  std::vector<Thread> threads;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const CommentTree tree = RandomTree(seed);
    threads.push_back({tree.post(), tree.effective_comments()});
  }
  write_dataset(threads, dir.file("posts.jsonl"), dir.file("comments.jsonl"));
  const ParsedDataset parsed = parse_dataset(dir.file("posts.jsonl"),
                                             dir.file("comments.jsonl"),
                                             {.strict = true});
  ASSERT_EQ(parsed.threads.size(), threads.size());
  for (std::size_t i = 0; i < threads.size(); ++i) {
    const CommentTree a = build_tree(threads[i].post, threads[i].comments);
    const CommentTree b =
        build_tree(parsed.threads[i].post, parsed.threads[i].comments);
    EXPECT_EQ(a, b) << "thread " << i;
  }
}

TEST(Dataset, FixtureHasTwoTreesAndOneOrphan) {
  const ParsedDataset parsed = parse_dataset(
      FixturePath("t1_posts.jsonl"), FixturePath("t1_comments.jsonl"));
  ASSERT_EQ(parsed.threads.size(), 2u);
  EXPECT_EQ(build_tree(parsed.threads[0].post, parsed.threads[0].comments)
                .size(),
            4);
  EXPECT_EQ(build_tree(parsed.threads[1].post, parsed.threads[1].comments)
                .size(),
            0);
  EXPECT_EQ(parsed.report.orphan_comments, 1u);
  EXPECT_EQ(parsed.report.skipped.size(), 1u);
  EXPECT_EQ(parsed.threads[0].post.label, std::optional<bool>(true));
}

TEST(Dataset, EmptyCommentsFileWarns) {
  TempDir dir;
  WriteFile(dir.file("posts.jsonl"),
            R"({"topic":"a","post_id":"p","post_time":1,"text":"x"})" "\n");
  WriteFile(dir.file("comments.jsonl"), "");
  const ParsedDataset parsed =
      parse_dataset(dir.file("posts.jsonl"), dir.file("comments.jsonl"));
  ASSERT_EQ(parsed.threads.size(), 1u);
  EXPECT_TRUE(parsed.threads[0].comments.empty());
  EXPECT_FALSE(parsed.report.warnings.empty());
  EXPECT_FALSE(parsed.threads[0].post.label.has_value());
}

TEST(Dataset, MalformedLineSkippedOrFatal) {
  TempDir dir;
  WriteFile(dir.file("posts.jsonl"),
            R"({"topic":"a","post_id":"p","post_time":1,"text":"x"})" "\n"
            "{not json\n"
            R"({"topic":"a","post_id":"q","post_time":-5,"text":"x"})" "\n");
  WriteFile(dir.file("comments.jsonl"), "");
  const ParsedDataset lenient =
      parse_dataset(dir.file("posts.jsonl"), dir.file("comments.jsonl"));
  EXPECT_EQ(lenient.threads.size(), 1u);
  ASSERT_EQ(lenient.report.skipped.size(), 2u);
  EXPECT_EQ(lenient.report.skipped[0].line, 2u);
  EXPECT_EQ(lenient.report.skipped[1].line, 3u);
  try {
    parse_dataset(dir.file("posts.jsonl"), dir.file("comments.jsonl"),
                  {.strict = true});
    FAIL() << "expected SchemaError";
  } catch (const SchemaError &e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Dataset, NegativeLikesRejected) {
  TempDir dir;
  WriteFile(dir.file("posts.jsonl"),
            R"({"topic":"a","post_id":"p","post_time":1,"text":"x"})" "\n");
  WriteFile(dir.file("comments.jsonl"),
            R"({"post_id":"p","comment_id":"c","comment_time":2,"likes":-1,"text":"","parent_id":"p"})"
            "\n");
  EXPECT_THROW(parse_dataset(dir.file("posts.jsonl"),
                             dir.file("comments.jsonl"), {.strict = true}),
               SchemaError);
}

TEST(Dataset, MissingFileIsDataError) {
  EXPECT_THROW(parse_dataset("/nonexistent/posts.jsonl",
                             "/nonexistent/comments.jsonl"),
               DataError);
}

}  // namespace
}  // namespace controversy
