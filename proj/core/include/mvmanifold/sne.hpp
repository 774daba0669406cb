// core/include/mvmanifold/sne.hpp

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

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "mvmanifold/dataset.hpp"
#include "mvmanifold/embedding.hpp"

namespace mvm::sne {

enum class AffinityKind { kHighDimJoint, kLowDimStudentT };

/// N x N pair distribution: zero diagonal, entries sum to one.
struct AffinityMatrix {
  Eigen::MatrixXd values;
  AffinityKind kind = AffinityKind::kHighDimJoint;
  double perplexity = 0.0;  // kHighDimJoint only

  Eigen::Index size() const { return values.rows(); }
};

/// Floor applied to p and q inside logarithms.
inline constexpr double kLogFloor = 1e-12;

struct RowCalibration {
  double beta = 0.0;          // 1 / (2 sigma^2)
  double sigma = 0.0;
  double entropy_bits = 0.0;  // H(P_i)
  int iterations = 0;
  Eigen::VectorXd row;        // conditional p_{j|i}, same order as the input
};

/// Binary search (in log beta, sigma within [1e-20, 1e20], at most 50 steps)
/// for the Gaussian bandwidth whose conditional row has 2^H = perplexity.
/// `sq_distances` holds the squared distances from sample i to every other
/// sample; +inf entries receive zero mass. Throws kCalibration when the
/// target entropy is out of reach.
RowCalibration calibrate_row(std::span<const double> sq_distances, double perplexity);

/// Symmetrized joint affinities p_ij = (p_{j|i} + p_{i|j}) / 2N.
AffinityMatrix joint_affinities(const Eigen::MatrixXd& view, double perplexity);
AffinityMatrix joint_affinities_from_squared(const Eigen::MatrixXd& sq_dist,
                                             double perplexity);

/// Student-t (one degree of freedom) low-dimensional affinities.
AffinityMatrix student_t_affinities(const Eigen::MatrixXd& y);

/// KL(P || Q) with 0 log 0 = 0. Throws kDomain if q_ij = 0 where p_ij > 0.
double kl_divergence(const AffinityMatrix& p, const AffinityMatrix& q);

/// sum_m w^m KL(P^m || Q).
double multisne_cost(std::span<const AffinityMatrix> p, const AffinityMatrix& q,
                     const ViewWeights& w);

/// Gradient of multisne_cost with respect to the N x d coordinates Y; the sum
/// over views of the weighted per-view t-SNE gradients.
Eigen::MatrixXd multisne_gradient(std::span<const AffinityMatrix> p,
                                  const Eigen::MatrixXd& y, const ViewWeights& w);

/// Weight update from per-view KL divergences: normalize k to sum 1, take
/// 1 - k, renormalize. Invariant to positive rescaling of `kl`; all-zero
/// input (or a single view) yields uniform weights.
ViewWeights update_weights(std::span<const double> kl);

struct SneConfig {
  double perplexity = 30.0;
  int n_iter = 1000;
  double learning_rate = 100.0;
  double momentum_initial = 0.5;
  double momentum_final = 0.8;
  int momentum_switch_iter = 250;
  double exaggeration = 4.0;  // 1 disables early exaggeration
  int exaggeration_iters = 100;
  bool adaptive_gains = true;
  double min_gain = 0.01;
  double init_variance = 0.1;  // Y(0) ~ N(0, 0.1)
  int output_dim = 2;
  std::uint64_t seed = 0;
  /// Stop once the relative cost change falls below this (after the
  /// exaggeration phase). 0 runs all n_iter iterations.
  double cost_tolerance = 0.0;
  /// Automatic weights stay at 1/M for this many iterations.
  int weight_freeze_iters = 100;

  /// Throws kConfig on invalid values; n_samples enables the Perp < N check.
  void validate(Eigen::Index n_samples = 0) const;
};

/// Marker requesting KL-driven automatic view weights.
struct AutoWeights {};
using WeightSpec = std::variant<ViewWeights, AutoWeights>;

struct SneResult {
  Embedding embedding;
  std::vector<double> cost;                         // per iteration
  std::vector<std::vector<double>> weight_history;  // per iteration, auto only
  ViewWeights final_weights = ViewWeights::uniform(1);
  int iterations = 0;
};

/// Gradient descent with momentum on the multi-view cost. The optimizer steps
/// along sum_m (M w^m) dKL(P^m||Q)/dY, i.e. the plain sum of per-view
/// gradients when the weights are uniform; one view reduces to t-SNE.
SneResult optimize(std::span<const AffinityMatrix> p, const WeightSpec& weights,
                   const SneConfig& cfg);

/// multi-SNE on every view of `ds` (pre-training is the caller's business).
SneResult run_multisne(const MultiViewDataset& ds, const SneConfig& cfg,
                       const WeightSpec& weights);
/// Uniform weights 1/M.
SneResult run_multisne(const MultiViewDataset& ds, const SneConfig& cfg);
/// m-SNE: t-SNE on the single distribution sum_m beta^m P^m.
SneResult run_msne(const MultiViewDataset& ds, const SneConfig& cfg,
                   const ViewWeights& beta);
SneResult run_msne(const MultiViewDataset& ds, const SneConfig& cfg);
/// Single-view t-SNE.
SneResult run_tsne(const Eigen::MatrixXd& view, const SneConfig& cfg);
/// t-SNE on all views concatenated column-wise.
SneResult run_tsne_concat(const MultiViewDataset& ds, const SneConfig& cfg);

}  // namespace mvm::sne
