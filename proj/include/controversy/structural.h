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

#ifndef CONTROVERSY_STRUCTURAL_H_
#define CONTROVERSY_STRUCTURAL_H_

#include "controversy/thread.h"

namespace controversy {

// Tree-shape features. Only comment nodes are counted; the post is the root
// and contributes paths but not pairs.
struct StructuralFeatures {
  int size = 0;             // n
  int depth = 0;            // max node depth
  int breadth = 0;          // max node count at any depth 1..depth
  double avg_degree = 0.0;  // direct children per comment
  double virality = 0.0;    // mean shortest-path distance over comment pairs,
                            // 0 when size <= 1
};

StructuralFeatures structural_features(const CommentTree &tree);

}  // namespace controversy

#endif  // CONTROVERSY_STRUCTURAL_H_
