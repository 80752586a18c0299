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

#include "sliceprof/hierarchical.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>

namespace sliceprof {
namespace {

// Total order used for picking merges: distance, then the ordered id pair.
struct PairKey {
  double distance;
  int lo;
  int hi;

  PairKey(double d, int a, int b) : distance(d), lo(std::min(a, b)), hi(std::max(a, b)) {}

  bool operator<(const PairKey& o) const {
    return std::tie(distance, lo, hi) < std::tie(o.distance, o.lo, o.hi);
  }
};

double lance_williams(Linkage linkage, double d_ak, double d_bk, double size_a, double size_b) {
  switch (linkage) {
    case Linkage::kSingle: return std::min(d_ak, d_bk);
    case Linkage::kComplete: return std::max(d_ak, d_bk);
    case Linkage::kAverage: return (size_a * d_ak + size_b * d_bk) / (size_a + size_b);
  }
  return d_ak;
}

}  // namespace

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::kEuclidean: return "euclidean";
    case Metric::kCosine: return "cosine";
    case Metric::kJaccard: return "jaccard";
  }
  return "euclidean";
}

std::optional<Metric> metric_from_string(std::string_view name) {
  if (name == "euclidean") return Metric::kEuclidean;
  if (name == "cosine") return Metric::kCosine;
  if (name == "jaccard") return Metric::kJaccard;
  return std::nullopt;
}

std::string_view to_string(Linkage l) {
  switch (l) {
    case Linkage::kAverage: return "average";
    case Linkage::kSingle: return "single";
    case Linkage::kComplete: return "complete";
  }
  return "average";
}

std::optional<Linkage> linkage_from_string(std::string_view name) {
  if (name == "average") return Linkage::kAverage;
  if (name == "single") return Linkage::kSingle;
  if (name == "complete") return Linkage::kComplete;
  return std::nullopt;
}

Dendrogram agglomerate(const DistanceMatrix& dm, Linkage linkage) {
  const Eigen::Index n = dm.n();
  if (n < 1 || dm.values.cols() != n) throw std::invalid_argument("distance matrix must be square and non-empty");
  Dendrogram out;
  out.n = static_cast<int>(n);
  out.merges.reserve(static_cast<std::size_t>(n - 1));

  // Slot i holds one active cluster; a merge reuses the slot of its first
  // member. nn[i] caches the best partner of slot i under PairKey order.
  Eigen::MatrixXd d = dm.values;
  std::vector<int> id(static_cast<std::size_t>(n));
  std::iota(id.begin(), id.end(), 0);
  std::vector<int> size(static_cast<std::size_t>(n), 1);
  std::vector<bool> active(static_cast<std::size_t>(n), true);
  std::vector<Eigen::Index> nn(static_cast<std::size_t>(n), -1);

  const auto key = [&](Eigen::Index i, Eigen::Index j) {
    return PairKey(d(i, j), id[static_cast<std::size_t>(i)], id[static_cast<std::size_t>(j)]);
  };
  const auto refresh = [&](Eigen::Index i) {
    Eigen::Index best = -1;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i || !active[static_cast<std::size_t>(j)]) continue;
      if (best < 0 || key(i, j) < key(i, best)) best = j;
    }
    nn[static_cast<std::size_t>(i)] = best;
  };
  for (Eigen::Index i = 0; i < n; ++i) refresh(i);

  for (Eigen::Index step = 0; step + 1 < n; ++step) {
    Eigen::Index a = -1;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!active[static_cast<std::size_t>(i)]) continue;
      if (a < 0 || key(i, nn[static_cast<std::size_t>(i)]) < key(a, nn[static_cast<std::size_t>(a)])) a = i;
    }
    Eigen::Index b = nn[static_cast<std::size_t>(a)];
    const auto sa = static_cast<std::size_t>(a);
    const auto sb = static_cast<std::size_t>(b);

    const double height = d(a, b);
    out.merges.push_back({std::min(id[sa], id[sb]), std::max(id[sa], id[sb]), height, size[sa] + size[sb]});

    for (Eigen::Index k = 0; k < n; ++k) {
      if (k == a || k == b || !active[static_cast<std::size_t>(k)]) continue;
      const double v = lance_williams(linkage, d(a, k), d(b, k), size[sa], size[sb]);
      d(a, k) = v;
      d(k, a) = v;
    }
    active[sb] = false;
    size[sa] += size[sb];
    id[sa] = static_cast<int>(n + step);

    refresh(a);
    for (Eigen::Index k = 0; k < n; ++k) {
      const auto sk = static_cast<std::size_t>(k);
      if (k == a || !active[sk]) continue;
      if (nn[sk] == a || nn[sk] == b) {
        refresh(k);
      } else if (key(k, a) < key(k, nn[sk])) {
        nn[sk] = a;
      }
    }
  }
  return out;
}

std::vector<int> cut(const Dendrogram& dendrogram, int k) {
  const int n = dendrogram.n;
  if (k < 1 || k > n) {
    throw std::invalid_argument("cut: k must be in [1, " + std::to_string(n) + "], got " + std::to_string(k));
  }
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  // Leaf representative of every cluster id.
  std::vector<int> rep(static_cast<std::size_t>(2 * n - 1));
  std::iota(rep.begin(), rep.begin() + n, 0);
  for (int t = 0; t < n - k; ++t) {
    const Merge& m = dendrogram.merges[static_cast<std::size_t>(t)];
    const int ra = find(rep[static_cast<std::size_t>(m.a)]);
    const int rb = find(rep[static_cast<std::size_t>(m.b)]);
    parent[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
    rep[static_cast<std::size_t>(n + t)] = std::min(ra, rb);
  }
  std::vector<int> label_of_root(static_cast<std::size_t>(n), -1);
  std::vector<int> labels(static_cast<std::size_t>(n));
  int next = 0;
  for (int leaf = 0; leaf < n; ++leaf) {
    int& l = label_of_root[static_cast<std::size_t>(find(leaf))];
    if (l < 0) l = next++;
    labels[static_cast<std::size_t>(leaf)] = l;
  }
  return labels;
}

}  // namespace sliceprof
