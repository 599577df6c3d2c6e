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

#include "controversy/efb.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace controversy {

namespace {

std::vector<int> resolve_defaults(std::size_t num_features,
                                  std::span<const int> default_bins) {
  if (default_bins.empty()) return std::vector<int>(num_features, 0);
  if (default_bins.size() != num_features) {
    throw std::invalid_argument("EFB: default_bins size mismatch");
  }
  return {default_bins.begin(), default_bins.end()};
}

}  // namespace

std::vector<std::vector<std::int64_t>> conflict_graph(
    std::span<const std::vector<Bin>> columns, std::span<const int> default_bins) {
  const std::size_t f = columns.size();
  const auto defaults = resolve_defaults(f, default_bins);
  std::vector<std::vector<std::int64_t>> graph(f,
                                               std::vector<std::int64_t>(f, 0));
  if (f == 0) return graph;
  const std::size_t rows = columns[0].size();
  std::vector<int> nonzero;
  for (std::size_t r = 0; r < rows; ++r) {
    nonzero.clear();
    for (std::size_t i = 0; i < f; ++i) {
      if (columns[i][r] != defaults[i]) nonzero.push_back(static_cast<int>(i));
    }
    for (std::size_t x = 0; x < nonzero.size(); ++x) {
      for (std::size_t y = x + 1; y < nonzero.size(); ++y) {
        ++graph[nonzero[x]][nonzero[y]];
        ++graph[nonzero[y]][nonzero[x]];
      }
    }
  }
  return graph;
}

std::vector<FeatureBundle> efb_bundle(std::span<const std::vector<Bin>> columns,
                                      std::int64_t max_conflicts,
                                      std::span<const int> default_bins,
                                      std::span<const int> num_bins) {
  if (max_conflicts < 0) throw std::invalid_argument("EFB: K must be >= 0");
  const std::size_t f = columns.size();
  if (f == 0) return {};
  const std::size_t rows = columns[0].size();
  for (const auto &col : columns) {
    if (col.size() != rows) throw std::invalid_argument("EFB: ragged columns");
  }
  const auto defaults = resolve_defaults(f, default_bins);
  std::vector<int> widths(f);
  for (std::size_t i = 0; i < f; ++i) {
    if (!num_bins.empty()) {
      widths[i] = num_bins[i];
    } else {
      int top = defaults[i];
      for (Bin b : columns[i]) top = std::max<int>(top, b);
      widths[i] = top + 1;
    }
  }

  const auto graph = conflict_graph(columns, defaults);
  std::vector<std::int64_t> degree(f, 0);
  for (std::size_t i = 0; i < f; ++i) {
    degree[i] = std::accumulate(graph[i].begin(), graph[i].end(),
                                std::int64_t{0});
  }
  std::vector<int> order(f);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int l, int r) { return degree[l] > degree[r]; });

  std::vector<FeatureBundle> bundles;
  std::vector<std::vector<int>> members_nonzero;  // per bundle, per row
  for (int feature : order) {
    const auto &col = columns[feature];
    bool placed = false;
    for (std::size_t b = 0; b < bundles.size() && !placed; ++b) {
      int width = 1;
      for (int member : bundles[b].features) width += widths[member] - 1;
      if (width + widths[feature] - 1 > std::numeric_limits<Bin>::max()) {
        continue;
      }
      std::int64_t added = 0;
      for (std::size_t r = 0; r < rows; ++r) {
        if (col[r] != defaults[feature] && members_nonzero[b][r] == 1) ++added;
      }
      if (bundles[b].conflicts + added <= max_conflicts) {
        bundles[b].conflicts += added;
        bundles[b].features.push_back(feature);
        for (std::size_t r = 0; r < rows; ++r) {
          if (col[r] != defaults[feature]) ++members_nonzero[b][r];
        }
        placed = true;
      }
    }
    if (!placed) {
      FeatureBundle bundle;
      bundle.features.push_back(feature);
      std::vector<int> counts(rows, 0);
      for (std::size_t r = 0; r < rows; ++r) {
        if (col[r] != defaults[feature]) counts[r] = 1;
      }
      bundles.push_back(std::move(bundle));
      members_nonzero.push_back(std::move(counts));
    }
  }

  for (FeatureBundle &bundle : bundles) {
    int offset = 1;
    for (int feature : bundle.features) {
      bundle.offsets.push_back(offset);
      offset += widths[feature] - 1;
    }
    bundle.num_bins = offset;
  }
  return bundles;
}

int bundle_bin(const FeatureBundle &bundle, int member, int raw_bin,
               int default_bin) {
  if (raw_bin == default_bin) return 0;
  const int rank = raw_bin < default_bin ? raw_bin : raw_bin - 1;
  return bundle.offsets[member] + rank;
}

std::vector<Bin> merge_bundle(const FeatureBundle &bundle,
                              std::span<const std::vector<Bin>> columns,
                              std::span<const int> default_bins) {
  const auto defaults = resolve_defaults(columns.size(), default_bins);
  const std::size_t rows = columns.empty() ? 0 : columns[0].size();
  std::vector<Bin> merged(rows, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t m = 0; m < bundle.features.size(); ++m) {
      const int feature = bundle.features[m];
      const int raw = columns[feature][r];
      if (raw != defaults[feature]) {
        merged[r] = static_cast<Bin>(
            bundle_bin(bundle, static_cast<int>(m), raw, defaults[feature]));
        break;
      }
    }
  }
  return merged;
}

}  // namespace controversy
