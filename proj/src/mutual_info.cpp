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

#include "sliceprof/mutual_info.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sliceprof {
namespace {

void require_bins(int bins) {
  if (bins < 2) throw std::invalid_argument("mutual information needs at least 2 bins");
}

double plogp_sum(const std::vector<double>& counts, double n) {
  double h = 0.0;
  for (double c : counts) {
    if (c > 0.0) h -= (c / n) * std::log2(c / n);
  }
  return h;
}

}  // namespace

std::vector<int> discretize_equal_width(const Eigen::Ref<const Eigen::VectorXd>& x, int bins) {
  require_bins(bins);
  std::vector<int> out(static_cast<std::size_t>(x.size()), 0);
  if (x.size() == 0) return out;
  const double lo = x.minCoeff();
  const double hi = x.maxCoeff();
  if (!(hi > lo)) return out;
  const double width = (hi - lo) / bins;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const int b = static_cast<int>(std::floor((x[i] - lo) / width));
    out[static_cast<std::size_t>(i)] = std::clamp(b, 0, bins - 1);
  }
  return out;
}

double entropy_bits(const Eigen::Ref<const Eigen::VectorXd>& x, int bins) {
  const std::vector<int> cells = discretize_equal_width(x, bins);
  std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
  for (int c : cells) counts[static_cast<std::size_t>(c)] += 1.0;
  return plogp_sum(counts, static_cast<double>(cells.size()));
}

double mutual_information(const Eigen::Ref<const Eigen::VectorXd>& x,
                          const Eigen::Ref<const Eigen::VectorXd>& y, int bins) {
  if (x.size() != y.size()) throw std::invalid_argument("mutual information needs equal-length columns");
  if (x.size() == 0) return 0.0;
  const std::vector<int> bx = discretize_equal_width(x, bins);
  const std::vector<int> by = discretize_equal_width(y, bins);
  const auto b = static_cast<std::size_t>(bins);
  Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(bins, bins);
  for (std::size_t i = 0; i < bx.size(); ++i) joint(bx[i], by[i]) += 1.0;
  const double n = static_cast<double>(bx.size());
  const Eigen::VectorXd px = joint.rowwise().sum();
  const Eigen::VectorXd py = joint.colwise().sum().transpose();

  // Summed in a swap-invariant order (by unordered cell pair) so that
  // I(x; y) and I(y; x) agree bit for bit.
  double mi = 0.0;
  for (std::size_t a = 0; a < b; ++a) {
    for (std::size_t c = a; c < b; ++c) {
      const auto term = [&](std::size_t i, std::size_t j) {
        const double nij = joint(i, j);
        return nij > 0.0 ? (nij / n) * std::log2(nij * n / (px[i] * py[j])) : 0.0;
      };
      const double t1 = term(a, c);
      const double t2 = a == c ? 0.0 : term(c, a);
      mi += std::min(t1, t2) + std::max(t1, t2);
    }
  }
  return std::max(0.0, mi);
}

std::vector<std::string> mrmr_select(const FeatureMatrix& m, const std::string& target, int m_out,
                                     int bins) {
  const auto t = m.column_index(target);
  if (!t) throw std::invalid_argument("unknown mRMR target column '" + target + "'");
  const auto d = static_cast<int>(m.cols());
  if (m_out < 1 || m_out > d - 1) {
    throw std::invalid_argument("mRMR selection size must be in [1, " + std::to_string(d - 1) + "]");
  }

  std::vector<Eigen::Index> candidates;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (j != *t) candidates.push_back(j);
  }
  std::vector<double> relevance(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    relevance[c] = mutual_information(m.values.col(candidates[c]), m.values.col(*t), bins);
  }
  std::vector<double> redundancy(candidates.size(), 0.0);  // running sum over selected
  std::vector<bool> taken(candidates.size(), false);
  std::vector<std::string> selected;

  for (int step = 0; step < m_out; ++step) {
    std::size_t best = candidates.size();
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (taken[c]) continue;
      const double score = step == 0 ? relevance[c] : relevance[c] - redundancy[c] / step;
      if (score > best_score) {
        best_score = score;
        best = c;
      }
    }
    taken[best] = true;
    selected.push_back(m.columns[static_cast<std::size_t>(candidates[best])]);
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (!taken[c]) {
        redundancy[c] += mutual_information(m.values.col(candidates[c]), m.values.col(candidates[best]), bins);
      }
    }
  }
  return selected;
}

}  // namespace sliceprof
