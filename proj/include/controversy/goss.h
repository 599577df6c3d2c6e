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

#ifndef CONTROVERSY_GOSS_H_
#define CONTROVERSY_GOSS_H_

#include <cstdint>
#include <span>
#include <vector>

namespace controversy {

// Gradient-based one-side sampling.
//
// Keeps the ceil(a*N) rows with the largest |gradient| at weight 1, then
// draws ceil(b*N) of the remaining rows uniformly without replacement and
// weights them (1 - a) / b to restore the small-gradient mass. When the
// draw would take every remaining row nothing is subsampled and those rows
// keep weight 1, so a + b = 1 is exactly equivalent to no sampling.
//
// Indices come back in ascending order. Throws std::invalid_argument for
// a = b = 0, a or b outside [0, 1], a + b > 1 or empty gradients.
struct GossSample {
  std::vector<int> indices;
  std::vector<double> weights;
};

GossSample goss_sample(std::span<const double> gradients, double a, double b,
                       std::uint64_t seed);

}  // namespace controversy

#endif  // CONTROVERSY_GOSS_H_
