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

#ifndef CONTROVERSY_BINNING_H_
#define CONTROVERSY_BINNING_H_

#include <cstdint>
#include <span>
#include <vector>

namespace controversy {

using Bin = std::uint16_t;

// Quantile histogram bins for one feature. bin(x) counts the edges strictly
// below x, so x <= edges[b] exactly when bin(x) <= b.
struct BinMapper {
  std::vector<double> edges;  // strictly increasing
  int default_bin = 0;        // bin holding the value 0.0

  int num_bins() const { return static_cast<int>(edges.size()) + 1; }
  Bin bin(double x) const;
  // Split threshold for "bin <= b goes left".
  double threshold(int b) const { return edges[b]; }
};

// With at most `max_bins` distinct values every value gets its own bin and
// the edges are midpoints between neighbours, matching exact splits.
// Otherwise edges fall at count quantiles. max_bins >= 2.
BinMapper fit_bins(std::span<const double> values, int max_bins);

}  // namespace controversy

#endif  // CONTROVERSY_BINNING_H_
