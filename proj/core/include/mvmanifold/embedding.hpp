// core/include/mvmanifold/embedding.hpp

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

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace mvm {

/// Low-dimensional coordinates produced by any of the manifold methods.
///
/// `samples` maps embedding rows back to dataset rows when a method only
/// embeds part of the data (ISOMAP restricted to the largest connected
/// component). Empty means row i is sample i.
struct Embedding {
  Eigen::MatrixXd coords;
  std::string method;
  std::map<std::string, std::string> config;
  std::vector<Eigen::Index> samples;
  std::vector<std::string> warnings;

  Eigen::Index n_points() const { return coords.rows(); }
  Eigen::Index dim() const { return coords.cols(); }
  bool is_finite() const { return coords.allFinite(); }
  bool covers_all(Eigen::Index n) const {
    return samples.empty() && coords.rows() == n;
  }
};

/// Nonnegative per-view coefficients summing to one. Plays the role of the
/// multi-SNE weights, the m-SNE/m-LLE/m-ISOMAP averaging weights and the
/// multi-LLE consensus weights alike.
class ViewWeights {
 public:
  static constexpr double kSumTolerance = 1e-10;

  /// Throws ErrorKind::kConfig unless every entry is >= 0 and the sum is
  /// within kSumTolerance of 1.
  explicit ViewWeights(std::vector<double> w);

  static ViewWeights uniform(std::size_t n_views);
  /// Divides by the sum. All-zero input yields uniform weights.
  static ViewWeights normalized(std::vector<double> raw);
  /// One-hot weight on `view`.
  static ViewWeights single(std::size_t n_views, std::size_t view);

  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t m) const { return w_[m]; }
  std::span<const double> values() const { return w_; }
  std::string to_string() const;

 private:
  ViewWeights() = default;
  std::vector<double> w_;
};

}  // namespace mvm
