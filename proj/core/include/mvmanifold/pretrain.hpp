// core/include/mvmanifold/pretrain.hpp

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

#include <optional>
#include <string_view>
#include <vector>

#include "mvmanifold/dataset.hpp"

namespace mvm::pretrain {

enum class Mode { kNone, kPCA, kMultiCCA };

std::optional<Mode> parse_mode(std::string_view s);
std::string_view to_string(Mode m);

struct PretrainConfig {
  Mode mode = Mode::kPCA;
  double variance_threshold = 0.8;  // PCA: keep this fraction of variance
  std::optional<int> n_components;  // overrides the threshold (PCA) or K (CCA)
};

struct PcaResult {
  Eigen::MatrixXd scores;          // N x q, columns by decreasing variance
  Eigen::MatrixXd components;      // p x q loadings, orthonormal columns
  Eigen::VectorXd explained_ratio; // every component, sums to 1
  Eigen::RowVectorXd mean;

  Eigen::Index n_components() const { return scores.cols(); }
};

/// PCA through the SVD of the centered view. Throws kDegenerateInput when
/// every row is identical, kConfig on a bad threshold/component count.
PcaResult pca(const Eigen::MatrixXd& view, const PretrainConfig& cfg = {});
Eigen::MatrixXd pca_reduce(const Eigen::MatrixXd& view, const PretrainConfig& cfg = {});

struct MultiCcaOptions {
  std::optional<int> n_components;  // default min_m p_m
  double tolerance = 1e-6;
  int max_iter = 100;
};

struct MultiCcaResult {
  MultiViewDataset reduced;             // view m -> N x K unit-variance variates
  std::vector<Eigen::MatrixXd> weights; // view m -> p_m x K canonical vectors
  Eigen::VectorXd mean_correlation;     // per component, over view pairs
  std::vector<int> iterations;          // per component
};

/// Unpenalized multiple CCA: for each component, maximizes the sum of
/// pairwise covariances sum_{i<j} w_i' X_i' X_j w_j over unit-norm w_m on
/// standardized views, deflating the cross products between components.
MultiCcaResult multicca(const MultiViewDataset& ds, const MultiCcaOptions& opts = {});
MultiViewDataset multicca_reduce(const MultiViewDataset& ds,
                                 const MultiCcaOptions& opts = {});

/// Applies the configured reduction to every view (labels carried over).
MultiViewDataset apply(const MultiViewDataset& ds, const PretrainConfig& cfg);

}  // namespace mvm::pretrain
