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

#include <vector>

#include <gtest/gtest.h>

#include "oracles.h"

namespace controversy {
namespace {

using testing::RandomTree;

TEST(Interaction, FixtureT1) {
  const InteractionFeatures f = interaction_features(testing::T1Tree());
  EXPECT_EQ(f.t_min, 10.0);
  EXPECT_EQ(f.t_avg, 17.5);
  EXPECT_EQ(f.delta, 50.0);
  EXPECT_EQ(f.density, 0.08);
  EXPECT_EQ(f.avg_ups, 3.75);
  EXPECT_EQ(f.clamped_intervals, 0);
}

TEST(Interaction, SingleComment) {
  Post post{"t", "p", 1000, "", std::nullopt};
  const std::vector<Comment> comments = {{"p", "c", 1060, 9, "", "p"}};
  const InteractionFeatures f = interaction_features(build_tree(post, comments));
  EXPECT_EQ(f.t_min, 60.0);
  EXPECT_EQ(f.t_avg, 60.0);
  EXPECT_EQ(f.delta, 60.0);
  EXPECT_EQ(f.density, 1.0 / 60.0);
  EXPECT_EQ(f.avg_ups, 9.0);
}

TEST(Interaction, SkewIsClampedAndCounted) {
  Post post{"t", "p", 0, "", std::nullopt};
  const std::vector<Comment> comments = {{"p", "a", 100, 0, "", "p"},
                                         {"p", "b", 40, 0, "", "a"}};
  const InteractionFeatures f = interaction_features(build_tree(post, comments));
  EXPECT_EQ(f.t_min, 0.0);
  EXPECT_EQ(f.t_avg, 50.0);
  EXPECT_EQ(f.clamped_intervals, 1);
}

TEST(Interaction, SimultaneousCommentsUseOneSecondFloor) {
  Post post{"t", "p", 7, "", std::nullopt};
  const std::vector<Comment> comments = {{"p", "a", 7, 0, "", "p"},
                                         {"p", "b", 7, 0, "", "p"},
                                         {"p", "c", 7, 0, "", "a"}};
  const InteractionFeatures f = interaction_features(build_tree(post, comments));
  EXPECT_EQ(f.delta, 0.0);
  EXPECT_EQ(f.density, 3.0);
}

TEST(Interaction, EmptyTreeIsAllZero) {
  Post post{"t", "p", 7, "", std::nullopt};
  const InteractionFeatures f = interaction_features(build_tree(post, {}));
  EXPECT_EQ(f.t_min, 0.0);
  EXPECT_EQ(f.t_avg, 0.0);
  EXPECT_EQ(f.density, 0.0);
  EXPECT_EQ(f.avg_ups, 0.0);
}

TEST(Interaction, RootLinksCanBeExcluded) {
  const InteractionFeatures f =
      interaction_features(testing::T1Tree(), {.include_root_links = false});
  EXPECT_EQ(f.t_min, 20.0);
  EXPECT_EQ(f.t_avg, 20.0);
}

TEST(Interaction, MatchesEdgeEnumeration) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const CommentTree tree = RandomTree(seed);
    const auto oracle =
        testing::OracleFeatures(tree, testing::DemoLexiconEntries());
    const InteractionFeatures f = interaction_features(tree);
    EXPECT_EQ(f.t_min, oracle[5]);
    EXPECT_NEAR(f.t_avg, oracle[6], 1e-12);
    EXPECT_NEAR(f.density, oracle[7], 1e-12);
    EXPECT_NEAR(f.avg_ups, oracle[8], 1e-12);
    EXPECT_LE(f.t_min, f.t_avg);
  }
}

Thread Rebuild(const CommentTree &tree, Timestamp shift, std::int64_t scale) {
  Thread t{tree.post(), tree.effective_comments()};
  t.post.post_time += shift;
  for (Comment &c : t.comments) {
    c.comment_time += shift;
    c.likes *= scale;
  }
  return t;
}

TEST(Interaction, TranslationInvarianceAndLikeScaling) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const CommentTree tree = RandomTree(seed);
    const Thread moved = Rebuild(tree, 123456, 3);
    const InteractionFeatures a = interaction_features(tree);
    const InteractionFeatures b =
        interaction_features(build_tree(moved.post, moved.comments));
    EXPECT_EQ(a.t_min, b.t_min);
    EXPECT_EQ(a.t_avg, b.t_avg);
    EXPECT_EQ(a.density, b.density);
    EXPECT_EQ(a.delta, b.delta);
    EXPECT_NEAR(b.avg_ups, 3.0 * a.avg_ups, 1e-12);
  }
}

}  // namespace
}  // namespace controversy
