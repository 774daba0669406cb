// core/include/mvmanifold/linalg.hpp

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

namespace mvm {

/// Subtracts column means.
Eigen::MatrixXd center_columns(const Eigen::MatrixXd& x);

/// Flips the sign of each column so its largest-magnitude entry is positive
/// (first such entry on ties).
void canonicalize_signs(Eigen::MatrixXd& columns);

/// Orthogonal Procrustes: rotates/reflects the centered `y` onto the
/// centered `reference` (least squares, no scaling). Both are N x d.
Eigen::MatrixXd procrustes_align(const Eigen::MatrixXd& y,
                                 const Eigen::MatrixXd& reference);

/// Residual of the best orthogonal alignment, ||Y R - ref||_F after centering.
double procrustes_residual(const Eigen::MatrixXd& y, const Eigen::MatrixXd& reference);

}  // namespace mvm
