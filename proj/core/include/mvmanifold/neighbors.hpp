// core/include/mvmanifold/neighbors.hpp

// Copyright      2026  The mvmanifold Authors

// See ../../../COPYING for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>

#include <vector>

namespace mvm {

/// Pairwise squared Euclidean distances, N x N. Exact zero diagonal,
/// entries clamped at 0, symmetric bit for bit.
Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& x);

/// Gamma_i for every sample: indices of the K nearest other samples,
/// nearest first, ties broken by lower index.
using NeighborSets = std::vector<std::vector<Eigen::Index>>;

/// Throws kConfig unless 1 <= k < N.
NeighborSets knn(const Eigen::MatrixXd& x, int k);
NeighborSets knn_from_squared(const Eigen::MatrixXd& sq_dist, int k);

}  // namespace mvm
