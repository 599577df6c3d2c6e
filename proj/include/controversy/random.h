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

// Seeded randomness with platform-independent output. std::mt19937_64 is
// fully specified; the <random> distributions are not, so the draws are
// derived from raw engine output here.

#ifndef CONTROVERSY_RANDOM_H_
#define CONTROVERSY_RANDOM_H_

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

namespace controversy {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Independent stream seed for (seed, k1, k2, ...).
inline std::uint64_t derive_seed(std::uint64_t seed,
                                 std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = splitmix64(seed);
  for (std::uint64_t k : keys) h = splitmix64(h ^ splitmix64(k));
  return h;
}

// Uniform in [0, n); n > 0.
inline std::uint64_t uniform_index(Rng &rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  while (true) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

// Uniform in [0, 1) with 53 random bits.
inline double uniform01(Rng &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Rng &rng, double p) { return uniform01(rng) < p; }

inline double exponential(Rng &rng, double mean) {
  return -mean * std::log1p(-uniform01(rng));
}

// Failures before the first success, with the given mean (>= 0).
inline std::int64_t geometric(Rng &rng, double mean) {
  if (mean <= 0.0) return 0;
  const double p = 1.0 / (1.0 + mean);
  return static_cast<std::int64_t>(
      std::floor(std::log1p(-uniform01(rng)) / std::log1p(-p)));
}

template <typename T>
void shuffle(Rng &rng, std::vector<T> &v) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[uniform_index(rng, i)]);
  }
}

}  // namespace controversy

#endif  // CONTROVERSY_RANDOM_H_
