// core/include/mvmanifold/cluster.hpp

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
#include <vector>

namespace mvm::cluster {

inline constexpr int kNoise = -1;

struct ClusteringResult {
  std::vector<int> labels;  // in [0, k), or kNoise for DBSCAN outliers
  int k = 0;
  double inertia = 0.0;               // K-means only
  std::vector<double> inertia_trace;  // per Lloyd iteration of the winning restart
};

struct KMeansConfig {
  int k = 3;
  int restarts = 10;
  int max_iter = 300;
  std::uint64_t seed = 0;
};

/// Lloyd's algorithm from k-means++ seeds; the restart with the lowest
/// inertia wins (earliest on ties). Empty clusters are reseeded with the
/// point farthest from its centroid.
ClusteringResult kmeans(const Eigen::MatrixXd& y, const KMeansConfig& cfg);

/// Density-based clustering; a point is core when at least `min_pts`
/// points (itself included) lie within `eps`.
ClusteringResult dbscan(const Eigen::MatrixXd& y, double eps, int min_pts = 5);

/// eps at the elbow of the sorted distances to the min_pts-th nearest
/// neighbour (kneedle: farthest point below the chord).
double estimate_eps(const Eigen::MatrixXd& y, int min_pts = 5);

/// Rows are the true classes, columns the predicted clusters.
struct ContingencyTable {
  Eigen::MatrixXd counts;
  std::vector<int> row_labels;  // sorted distinct truth values
  std::vector<int> col_labels;  // sorted distinct predicted values
  Eigen::VectorXd row_sums;
  Eigen::VectorXd col_sums;
  double total = 0.0;
};

/// Throws kConfig on length mismatch.
ContingencyTable contingency(std::span<const int> pred, std::span<const int> truth);

/// Minimum-cost assignment of rows to distinct columns (rows <= cols);
/// returns the column for each row.
std::vector<int> hungarian(const Eigen::MatrixXd& cost);

/// Fraction of samples on the diagonal after the best one-to-one matching
/// of clusters to classes.
double accuracy(const ContingencyTable& t);
/// 2 I(X;Y) / (H(X) + H(Y)), natural logs; 0 when both entropies vanish.
double nmi(const ContingencyTable& t);
/// Throw kUndefinedInput when fewer than 2 samples.
double rand_index(const ContingencyTable& t);
double ari(const ContingencyTable& t);

/// Mean silhouette width. Singleton clusters score 0 and noise labels are
/// ignored. Throws kUndefinedInput with fewer than 2 clusters.
double silhouette(const Eigen::MatrixXd& y, std::span<const int> labels);

struct Scores {
  double acc = 0.0;
  double nmi = 0.0;
  double ri = 0.0;
  double ari = 0.0;
  double silhouette = 0.0;  // NaN when undefined
};

Scores evaluate(const Eigen::MatrixXd& y, std::span<const int> pred, std::span<const int> truth);

}  // namespace mvm::cluster
