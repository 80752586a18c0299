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

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sliceprof/features.hpp"

namespace sliceprof {

inline constexpr int kDefaultMiBins = 8;

/// Equal-width discretization over the column's own [min, max] range into
/// `bins` cells; the maximum lands in the last cell. A constant column maps
/// entirely to cell 0.
std::vector<int> discretize_equal_width(const Eigen::Ref<const Eigen::VectorXd>& x, int bins);

/// Plug-in Shannon entropy (bits) of the equal-width discretization.
double entropy_bits(const Eigen::Ref<const Eigen::VectorXd>& x, int bins);

/// Plug-in mutual information (bits) from the joint histogram of the two
/// equal-width discretizations. Symmetric and non-negative.
double mutual_information(const Eigen::Ref<const Eigen::VectorXd>& x,
                          const Eigen::Ref<const Eigen::VectorXd>& y, int bins);

/// Greedy minimum-redundancy maximum-relevance selection (difference form).
/// The first pick maximizes I(f; target); each further pick maximizes
/// I(f; target) minus the mean of I(f; s) over already selected s. Ties go to
/// the earlier column. The target column is never a candidate.
std::vector<std::string> mrmr_select(const FeatureMatrix& m, const std::string& target, int m_out,
                                     int bins = kDefaultMiBins);

}  // namespace sliceprof
