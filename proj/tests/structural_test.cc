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

#include <vector>

#include <gtest/gtest.h>

#include "controversy/random.h"
#include "oracles.h"

namespace controversy {
namespace {

using testing::RandomTree;

CommentTree Shape(const std::vector<int> &parents) {
  Post post{"t", "p", 0, "", std::nullopt};
  std::vector<Comment> comments;
  for (std::size_t i = 0; i < parents.size(); ++i) {
    comments.push_back(
        Comment{"p", fmt::format("c{:03d}", i + 1), 1, 0, "", ""});
  }
  return CommentTree::FromParentIndex(post, comments, parents);
}

TEST(Structural, FixtureT1) {
  const StructuralFeatures f = structural_features(testing::T1Tree());
  EXPECT_EQ(f.size, 4);
  EXPECT_EQ(f.depth, 3);
  EXPECT_EQ(f.breadth, 2);
  EXPECT_EQ(f.avg_degree, 0.5);
  EXPECT_EQ(f.virality, 26.0 / 12.0);
}

TEST(Structural, EmptyTreeIsAllZero) {
  const StructuralFeatures f = structural_features(Shape({}));
  EXPECT_EQ(f.size, 0);
  EXPECT_EQ(f.depth, 0);
  EXPECT_EQ(f.breadth, 0);
  EXPECT_EQ(f.avg_degree, 0.0);
  EXPECT_EQ(f.virality, 0.0);
}

TEST(Structural, SingleCommentHasZeroVirality) {
  const StructuralFeatures f = structural_features(Shape({0}));
  EXPECT_EQ(f.size, 1);
  EXPECT_EQ(f.virality, 0.0);
}

TEST(Structural, ChainAndStar) {
  for (int n = 1; n <= 30; ++n) {
    std::vector<int> chain(n);
    std::vector<int> star(n, 0);
    for (int i = 0; i < n; ++i) chain[i] = i;
    const StructuralFeatures c = structural_features(Shape(chain));
    EXPECT_EQ(c.depth, n);
    EXPECT_EQ(c.breadth, 1);
    const StructuralFeatures s = structural_features(Shape(star));
    EXPECT_EQ(s.depth, 1);
    EXPECT_EQ(s.breadth, n);
    EXPECT_EQ(s.avg_degree, 0.0);
    if (n > 1) EXPECT_EQ(s.virality, 2.0);
  }
}

TEST(Structural, MatchesBruteForceOnRandomTrees) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const CommentTree tree = RandomTree(seed);
    const auto oracle =
        testing::OracleFeatures(tree, testing::DemoLexiconEntries());
    const StructuralFeatures f = structural_features(tree);
    EXPECT_EQ(f.size, oracle[0]);
    EXPECT_EQ(f.depth, oracle[1]);
    EXPECT_EQ(f.breadth, oracle[2]);
    EXPECT_NEAR(f.avg_degree, oracle[3], 1e-12);
    EXPECT_NEAR(f.virality, oracle[4], 1e-12) << "seed " << seed;
    EXPECT_LE(f.depth, f.size);
    EXPECT_LE(f.breadth, f.size);
  }
}

TEST(Structural, InsertionOrderDoesNotMatter) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const CommentTree tree = RandomTree(seed);
    std::vector<Comment> comments = tree.effective_comments();
    Rng rng(seed);
    shuffle(rng, comments);
    const StructuralFeatures a = structural_features(tree);
    const StructuralFeatures b =
        structural_features(build_tree(tree.post(), comments));
    EXPECT_EQ(a.depth, b.depth);
    EXPECT_EQ(a.breadth, b.breadth);
    EXPECT_EQ(a.avg_degree, b.avg_degree);
    EXPECT_EQ(a.virality, b.virality);
  }
}

}  // namespace
}  // namespace controversy
