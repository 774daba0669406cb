// tests/oracles.hpp

// Copyright      2026  The mvmanifold Authors

// See ../COPYING for clarification regarding multiple authors
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

// Slow, independent reference implementations used to check the library.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "mvmanifold/isomap.hpp"

namespace mvm::oracle {

// Central differences of a scalar function of a matrix argument.
inline Eigen::MatrixXd numeric_gradient(const std::function<double(const Eigen::MatrixXd&)>& f,
                                        const Eigen::MatrixXd& x, double h = 1e-5) {
  Eigen::MatrixXd g(x.rows(), x.cols());
  Eigen::MatrixXd probe = x;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      probe(i, j) = x(i, j) + h;
      const double up = f(probe);
      probe(i, j) = x(i, j) - h;
      const double down = f(probe);
      probe(i, j) = x(i, j);
      g(i, j) = (up - down) / (2 * h);
    }
  }
  return g;
}

inline Eigen::MatrixXd floyd_warshall(const isomap::NeighborGraph& g) {
  const Eigen::Index n = g.n_vertices();
  const double inf = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd d = Eigen::MatrixXd::Constant(n, n, inf);
  for (Eigen::Index i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    for (const auto& [j, len] : g.neighbors(i)) d(i, j) = std::min(d(i, j), len);
  }
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (d(i, k) + d(k, j) < d(i, j)) d(i, j) = d(i, k) + d(k, j);
  return d;
}

struct PairCounts {
  double a = 0;  // same in both
  double b = 0;  // different in both
  double c = 0;  // same in truth only
  double d = 0;  // same in prediction only
};

inline PairCounts count_pairs(const std::vector<int>& pred, const std::vector<int>& truth) {
  PairCounts pc;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    for (std::size_t j = i + 1; j < pred.size(); ++j) {
      const bool sp = pred[i] == pred[j];
      const bool st = truth[i] == truth[j];
      if (sp && st) pc.a += 1;
      else if (!sp && !st) pc.b += 1;
      else if (st) pc.c += 1;
      else pc.d += 1;
    }
  }
  return pc;
}

inline double rand_index(const std::vector<int>& pred, const std::vector<int>& truth) {
  const PairCounts pc = count_pairs(pred, truth);
  return (pc.a + pc.b) / (pc.a + pc.b + pc.c + pc.d);
}

// Hubert-Arabie ARI written in pair-count form.
inline double ari(const std::vector<int>& pred, const std::vector<int>& truth) {
  const PairCounts pc = count_pairs(pred, truth);
  const double total = pc.a + pc.b + pc.c + pc.d;
  const double same_truth = pc.a + pc.c;
  const double same_pred = pc.a + pc.d;
  const double expected = same_truth * same_pred / total;
  const double max_index = 0.5 * (same_truth + same_pred);
  if (max_index == expected) return 1.0;
  return (pc.a - expected) / (max_index - expected);
}

// Best accuracy over every injective relabelling of predicted clusters onto
// the true classes, by enumerating permutations.
inline double permutation_accuracy(const std::vector<int>& pred, const std::vector<int>& truth) {
  std::vector<int> pv = pred, tv = truth;
  std::sort(pv.begin(), pv.end());
  pv.erase(std::unique(pv.begin(), pv.end()), pv.end());
  std::sort(tv.begin(), tv.end());
  tv.erase(std::unique(tv.begin(), tv.end()), tv.end());
  const std::size_t slots = std::max(pv.size(), tv.size());
  std::vector<int> targets(slots, std::numeric_limits<int>::min());
  std::copy(tv.begin(), tv.end(), targets.begin());
  std::sort(targets.begin(), targets.end());

  std::size_t best = 0;
  do {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
      const auto c = static_cast<std::size_t>(
          std::lower_bound(pv.begin(), pv.end(), pred[i]) - pv.begin());
      if (targets[c] == truth[i]) ++hits;
    }
    best = std::max(best, hits);
  } while (std::next_permutation(targets.begin(), targets.end()));
  return static_cast<double>(best) / static_cast<double>(pred.size());
}

// A random affine combination supported on `nb`: w sums to one.
inline Eigen::VectorXd random_affine(std::size_t k, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXd w(static_cast<Eigen::Index>(k));
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = g(rng);
  w.array() += (1.0 - w.sum()) / static_cast<double>(k);
  return w;
}

inline std::vector<int> random_labels(std::size_t n, int k, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, k - 1);
  std::vector<int> out(n);
  for (int& v : out) v = d(rng);
  return out;
}

}  // namespace mvm::oracle
