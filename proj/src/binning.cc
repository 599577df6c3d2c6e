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

#include "controversy/binning.h"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace controversy {

namespace {

// A cut strictly between lo < hi that keeps lo on the left.
double cut_between(double lo, double hi) {
  const double mid = lo + (hi - lo) / 2.0;
  return mid < hi ? mid : lo;
}

}  // namespace

Bin BinMapper::bin(double x) const {
  return static_cast<Bin>(std::lower_bound(edges.begin(), edges.end(), x) -
                          edges.begin());
}

BinMapper fit_bins(std::span<const double> values, int max_bins) {
  if (max_bins < 2) throw std::invalid_argument("histogram_bins must be >= 2");
  if (max_bins > std::numeric_limits<Bin>::max()) {
    throw std::invalid_argument("histogram_bins too large");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  std::vector<double> distinct;
  std::vector<std::size_t> counts;
  for (double v : sorted) {
    if (distinct.empty() || distinct.back() != v) {
      distinct.push_back(v);
      counts.push_back(0);
    }
    ++counts.back();
  }

  BinMapper mapper;
  if (distinct.size() <= static_cast<std::size_t>(max_bins)) {
    for (std::size_t i = 0; i + 1 < distinct.size(); ++i) {
      mapper.edges.push_back(cut_between(distinct[i], distinct[i + 1]));
    }
  } else {
    const double per_bin =
        static_cast<double>(sorted.size()) / static_cast<double>(max_bins);
    std::size_t cumulative = 0;
    int next_quantile = 1;
    for (std::size_t i = 0; i + 1 < distinct.size(); ++i) {
      cumulative += counts[i];
      if (static_cast<double>(cumulative) >= next_quantile * per_bin) {
        mapper.edges.push_back(cut_between(distinct[i], distinct[i + 1]));
        while (next_quantile < max_bins &&
               static_cast<double>(cumulative) >= next_quantile * per_bin) {
          ++next_quantile;
        }
        if (static_cast<int>(mapper.edges.size()) >= max_bins - 1) break;
      }
    }
  }
  mapper.default_bin = mapper.bin(0.0);
  return mapper;
}

}  // namespace controversy
