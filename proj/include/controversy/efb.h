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

// Exclusive feature bundling over pre-binned columns.
//
// A feature is "nonzero" on a row when its bin differs from the feature's
// default bin (the bin of raw value 0). Two features conflict on a row when
// both are nonzero there.
//
//  1. Build the conflict graph: edge weight = rows where both are nonzero.
//  2. Order features by descending weighted degree (ties: lower index).
//  3. Put each feature into the first bundle whose conflict count, the rows
//     where two or more members are nonzero, stays <= K after adding it;
//     otherwise open a new bundle.
//  4. Merge each bundle into one column. Bin 0 means "every member at its
//     default"; member j's non-default bins occupy offset_j onwards, where
//     offset_j = 1 + sum of (num_bins - 1) over the members before it.

#ifndef CONTROVERSY_EFB_H_
#define CONTROVERSY_EFB_H_

#include <cstdint>
#include <span>
#include <vector>

#include "controversy/binning.h"

namespace controversy {

struct FeatureBundle {
  std::vector<int> features;  // in insertion order
  std::vector<int> offsets;   // first merged bin of each member
  int num_bins = 1;           // merged column width
  std::int64_t conflicts = 0;
};

// Pairwise conflict counts, conflicts[i][j] for i != j.
std::vector<std::vector<std::int64_t>> conflict_graph(
    std::span<const std::vector<Bin>> columns, std::span<const int> default_bins);

// `num_bins[f]` bounds the bins in column f. Empty `default_bins` means 0
// for every column; empty `num_bins` means max bin + 1.
std::vector<FeatureBundle> efb_bundle(std::span<const std::vector<Bin>> columns,
                                      std::int64_t max_conflicts,
                                      std::span<const int> default_bins = {},
                                      std::span<const int> num_bins = {});

// Merged bin of one member's raw bin (0 when it is the default bin).
int bundle_bin(const FeatureBundle &bundle, int member, int raw_bin,
               int default_bin);

// Merged column for all rows. On conflicting rows the earliest member wins.
std::vector<Bin> merge_bundle(const FeatureBundle &bundle,
                              std::span<const std::vector<Bin>> columns,
                              std::span<const int> default_bins);

}  // namespace controversy

#endif  // CONTROVERSY_EFB_H_
