// core/include/mvmanifold/lle.hpp

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
#include <Eigen/SparseCore>

#include "mvmanifold/dataset.hpp"
#include "mvmanifold/embedding.hpp"
#include "mvmanifold/neighbors.hpp"

namespace mvm::lle {

using SparseRowMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Row i holds the affine weights reconstructing x_i from its neighbors.
struct ReconstructionWeights {
  SparseRowMatrix w;  // N x N
  int k = 0;
  int n_regularized = 0;  // rows whose local Gram system needed the ridge
};

struct LleConfig {
  int n_neighbors = 10;
  int output_dim = 2;
  double regularization = 1e-3;  // ridge factor r in r * trace(G) / K
};

/// Minimizes |x_i - sum_j w_ij x_j|^2 subject to sum_j w_ij = 1 with w_ij = 0
/// off the neighbor set. The local Gram system gets a ridge when K > p or
/// when it is numerically singular.
ReconstructionWeights reconstruction_weights(const Eigen::MatrixXd& x,
                                             const NeighborSets& neighbors,
                                             double regularization = 1e-3);
ReconstructionWeights reconstruction_weights(const Eigen::MatrixXd& x, int k,
                                             double regularization = 1e-3);

/// sum_i |x_i - sum_j w_ij x_j|^2
double reconstruction_error(const Eigen::MatrixXd& x, const SparseRowMatrix& w);

/// Convex combination sum_m alpha^m W^m of per-view weight matrices.
SparseRowMatrix consensus(std::span<const SparseRowMatrix> w, const ViewWeights& alpha);

struct SpectralEmbedding {
  Embedding embedding;
  Eigen::VectorXd eigenvalues;  // the d returned ones, nondecreasing
  int n_discarded = 0;          // near-zero modes skipped (1 when connected)
};

/// Eigenvalues below this count as the trivial (constant) mode.
inline constexpr double kNullEigenvalue = 1e-10;

/// Bottom d eigenvectors of (I - W)'(I - W) after the near-zero modes.
/// Throws kNumerical when fewer than d nonzero modes exist.
SpectralEmbedding embed_from_weights(const SparseRowMatrix& w, int d);

Embedding run_lle(const Eigen::MatrixXd& x, const LleConfig& cfg);
Embedding run_lle_concat(const MultiViewDataset& ds, const LleConfig& cfg);
/// multi-LLE: one embedding from the consensus weight matrix.
Embedding run_multille(const MultiViewDataset& ds, const LleConfig& cfg,
                       const ViewWeights& alpha);
Embedding run_multille(const MultiViewDataset& ds, const LleConfig& cfg);
/// m-LLE: per-view LLE embeddings, Procrustes-aligned to view 1, averaged.
Embedding run_mlle(const MultiViewDataset& ds, const LleConfig& cfg, const ViewWeights& beta);
Embedding run_mlle(const MultiViewDataset& ds, const LleConfig& cfg);

}  // namespace mvm::lle
