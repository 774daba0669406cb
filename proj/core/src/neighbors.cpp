// core/src/neighbors.cpp

// Copyright      2026  The mvmanifold Authors

// See ../../COPYING for clarification regarding multiple authors
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

#include "mvmanifold/neighbors.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "mvmanifold/error.hpp"

namespace mvm {

Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& x) {
  const Eigen::Index n = x.rows();
  const Eigen::VectorXd norms = x.rowwise().squaredNorm();
  Eigen::MatrixXd gram = x * x.transpose();
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    d(j, j) = 0.0;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double v = std::max(0.0, norms(i) + norms(j) - 2.0 * gram(i, j));
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

NeighborSets knn_from_squared(const Eigen::MatrixXd& sq, int k) {
  const Eigen::Index n = sq.rows();
  require(k >= 1 && k < n, ErrorKind::kConfig,
          "neighbour count K=" + std::to_string(k) + " must satisfy 1 <= K < N=" +
              std::to_string(n));
  NeighborSets out(static_cast<std::size_t>(n));
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n - 1));
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index at = 0;
    for (Eigen::Index j = 0; j < n; ++j)
      if (j != i) idx[static_cast<std::size_t>(at++)] = j;
    auto closer = [&](Eigen::Index a, Eigen::Index b) {
      const double da = sq(i, a), db = sq(i, b);
      return da < db || (da == db && a < b);
    };
    std::partial_sort(idx.begin(), idx.begin() + k, idx.end(), closer);
    out[static_cast<std::size_t>(i)].assign(idx.begin(), idx.begin() + k);
  }
  return out;
}

NeighborSets knn(const Eigen::MatrixXd& x, int k) {
  return knn_from_squared(squared_distances(x), k);
}

}  // namespace mvm
