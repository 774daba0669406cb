// core/src/linalg.cpp

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

#include "mvmanifold/linalg.hpp"

#include <cmath>

#include "mvmanifold/error.hpp"

namespace mvm {

Eigen::MatrixXd center_columns(const Eigen::MatrixXd& x) {
  return x.rowwise() - x.colwise().mean();
}

void canonicalize_signs(Eigen::MatrixXd& columns) {
  for (Eigen::Index c = 0; c < columns.cols(); ++c) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < columns.rows(); ++r) {
      const double a = std::abs(columns(r, c));
      if (a > best) {
        best = a;
        arg = r;
      }
    }
    if (columns.rows() > 0 && columns(arg, c) < 0.0) columns.col(c) *= -1.0;
  }
}

Eigen::MatrixXd procrustes_align(const Eigen::MatrixXd& y,
                                 const Eigen::MatrixXd& reference) {
  require(y.rows() == reference.rows() && y.cols() == reference.cols(),
          ErrorKind::kAlignment, "procrustes: shape mismatch");
  const Eigen::MatrixXd yc = center_columns(y);
  const Eigen::MatrixXd rc = center_columns(reference);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(yc.transpose() * rc,
                                        Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXd rotation = svd.matrixU() * svd.matrixV().transpose();
  return yc * rotation;
}

double procrustes_residual(const Eigen::MatrixXd& y, const Eigen::MatrixXd& reference) {
  return (procrustes_align(y, reference) - center_columns(reference)).norm();
}

}  // namespace mvm
