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

#include "controversy/goss.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "controversy/random.h"

namespace controversy {

namespace {

// ceil(fraction * n), ignoring representation noise in the product.
std::size_t ceil_count(double fraction, std::size_t n) {
  const double x = fraction * static_cast<double>(n);
  return static_cast<std::size_t>(std::ceil(x - 1e-9));
}

}  // namespace

GossSample goss_sample(std::span<const double> gradients, double a, double b,
                       std::uint64_t seed) {
  if (gradients.empty()) throw std::invalid_argument("GOSS: no gradients");
  if (!(a >= 0.0 && a <= 1.0) || !(b >= 0.0 && b <= 1.0)) {
    throw std::invalid_argument("GOSS: a and b must lie in [0, 1]");
  }
  if (a + b > 1.0 + 1e-12) throw std::invalid_argument("GOSS: a + b > 1");
  if (a == 0.0 && b == 0.0) {
    throw std::invalid_argument("GOSS: a = b = 0 leaves no training rows");
  }

  const std::size_t n = gradients.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int l, int r) {
    return std::fabs(gradients[l]) > std::fabs(gradients[r]);
  });

  const std::size_t top = std::min(n, ceil_count(a, n));
  const std::size_t rest = n - top;
  const std::size_t want = b > 0.0 ? std::min(rest, ceil_count(b, n)) : 0;

  std::vector<double> weight_of(n, 0.0);
  for (std::size_t i = 0; i < top; ++i) weight_of[order[i]] = 1.0;
  if (want == rest) {
    for (std::size_t i = top; i < n; ++i) weight_of[order[i]] = 1.0;
  } else if (want > 0) {
    Rng rng(seed);
    std::vector<int> pool(order.begin() + top, order.end());
    const double amplify = (1.0 - a) / b;
    for (std::size_t i = 0; i < want; ++i) {
      const std::size_t j = i + uniform_index(rng, pool.size() - i);
      std::swap(pool[i], pool[j]);
      weight_of[pool[i]] = amplify;
    }
  }

  GossSample sample;
  sample.indices.reserve(top + want);
  sample.weights.reserve(top + want);
  for (std::size_t i = 0; i < n; ++i) {
    if (weight_of[i] > 0.0) {
      sample.indices.push_back(static_cast<int>(i));
      sample.weights.push_back(weight_of[i]);
    }
  }
  return sample;
}

}  // namespace controversy
