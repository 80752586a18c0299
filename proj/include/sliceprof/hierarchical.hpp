// Copyright 2026 The sliceprof Authors.
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

#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sliceprof/distance.hpp"

namespace sliceprof {

enum class Linkage { kAverage, kSingle, kComplete };

std::string_view to_string(Linkage l);
std::optional<Linkage> linkage_from_string(std::string_view name);

/// One agglomeration step. Leaves are clusters 0..n-1; the cluster formed by
/// merge t gets id n + t. a < b.
struct Merge {
  int a = 0;
  int b = 0;
  double height = 0.0;
  int size = 0;

  bool operator==(const Merge&) const = default;
};

struct Dendrogram {
  int n = 0;
  std::vector<Merge> merges;  // n - 1 entries in merge order
};

/// Greedy bottom-up clustering: repeatedly merges the closest pair of active
/// clusters (ties to the lexicographically smallest id pair), updating
/// dissimilarities with the Lance-Williams recurrence of the linkage.
Dendrogram agglomerate(const DistanceMatrix& d, Linkage linkage = Linkage::kAverage);

/// Flat k-clustering obtained by undoing the last k - 1 merges. Clusters are
/// labelled 0..k-1 in order of their smallest leaf. Throws
/// std::invalid_argument for k outside [1, n].
std::vector<int> cut(const Dendrogram& dendrogram, int k);

}  // namespace sliceprof
