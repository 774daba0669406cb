// tests/cluster_test.cpp

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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "mvmanifold/cluster.hpp"
#include "mvmanifold/error.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace mvm;
using namespace mvm::cluster;

namespace {

Eigen::MatrixXd gaussian(Eigen::Index r, Eigen::Index c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = g(rng);
  return m;
}

double inertia_of(const Eigen::MatrixXd& y, const std::vector<int>& lab, int k) {
  double total = 0.0;
  for (int c = 0; c < k; ++c) {
    Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(y.cols());
    int n = 0;
    for (std::size_t i = 0; i < lab.size(); ++i)
      if (lab[i] == c) {
        mean += y.row(static_cast<Eigen::Index>(i));
        ++n;
      }
    if (n == 0) continue;
    mean /= n;
    for (std::size_t i = 0; i < lab.size(); ++i)
      if (lab[i] == c) total += (y.row(static_cast<Eigen::Index>(i)) - mean).squaredNorm();
  }
  return total;
}

// Labels from direct density reachability: BFS over core points.
std::vector<int> dbscan_oracle(const Eigen::MatrixXd& y, double eps, int min_pts) {
  const Eigen::Index n = y.rows();
  auto near = [&](Eigen::Index i, Eigen::Index j) {
    return (y.row(i) - y.row(j)).norm() <= eps;
  };
  std::vector<bool> core(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    int c = 0;
    for (Eigen::Index j = 0; j < n; ++j) c += near(i, j);
    core[static_cast<std::size_t>(i)] = c >= min_pts;
  }
  std::vector<int> lab(static_cast<std::size_t>(n), kNoise);
  int next = 0;
  for (Eigen::Index s = 0; s < n; ++s) {
    if (!core[static_cast<std::size_t>(s)] || lab[static_cast<std::size_t>(s)] != kNoise) continue;
    std::vector<Eigen::Index> queue{s};
    lab[static_cast<std::size_t>(s)] = next;
    while (!queue.empty()) {
      const Eigen::Index i = queue.back();
      queue.pop_back();
      if (!core[static_cast<std::size_t>(i)]) continue;
      for (Eigen::Index j = 0; j < n; ++j)
        if (near(i, j) && lab[static_cast<std::size_t>(j)] == kNoise) {
          lab[static_cast<std::size_t>(j)] = next;
          queue.push_back(j);
        }
    }
    ++next;
  }
  return lab;
}

}  // namespace

TEST(KMeans, TwoSeparatedPairs) {
  Eigen::MatrixXd y(4, 2);
  y << 0, 0, 0, 1, 10, 0, 10, 1;
  const auto r = kmeans(y, {.k = 2, .restarts = 3, .seed = 1});
  EXPECT_EQ(r.labels[0], r.labels[1]);
  EXPECT_EQ(r.labels[2], r.labels[3]);
  EXPECT_NE(r.labels[0], r.labels[2]);
  EXPECT_NEAR(r.inertia, 1.0, 1e-12);  // each pair contributes 2 * 0.5^2
}

TEST(KMeans, OneClusterPerPoint) {
  const Eigen::MatrixXd y = gaussian(7, 2, 2);
  EXPECT_NEAR(kmeans(y, {.k = 7, .restarts = 2, .seed = 3}).inertia, 0.0, 1e-20);
}

TEST(KMeans, BeatsRandomAssignments) {
  const Eigen::MatrixXd y = gaussian(30, 2, 4);
  const auto r = kmeans(y, {.k = 3, .restarts = 10, .seed = 5});
  EXPECT_NEAR(r.inertia, inertia_of(y, r.labels, 3), 1e-9);
  std::mt19937_64 rng(6);
  for (int t = 0; t < 10000; ++t) {
    const auto lab = oracle::random_labels(30, 3, rng);
    ASSERT_LE(r.inertia, inertia_of(y, lab, 3) + 1e-9);
  }
}

TEST(KMeans, DeterministicAndMonotone) {
  const Eigen::MatrixXd y = gaussian(100, 3, 7);
  const auto a = kmeans(y, {.k = 4, .restarts = 4, .seed = 8});
  const auto b = kmeans(y, {.k = 4, .restarts = 4, .seed = 8});
  EXPECT_EQ(a.labels, b.labels);
  for (std::size_t t = 1; t < a.inertia_trace.size(); ++t)
    EXPECT_LE(a.inertia_trace[t], a.inertia_trace[t - 1] + 1e-9);
}

TEST(KMeans, DuplicatePointsNeverFail) {
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(10, 2);
  y.row(9) << 1, 1;
  const auto r = kmeans(y, {.k = 4, .restarts = 3, .seed = 9});
  EXPECT_EQ(r.labels.size(), 10u);
  EXPECT_THROW(kmeans(y, {.k = 11}), Error);
}

TEST(Dbscan, BlobsAndNoise) {
  Eigen::MatrixXd y = 0.1 * gaussian(40, 2, 10);
  y.bottomRows(20).array() += 20.0;
  const auto r = dbscan(y, 1.0, 4);
  EXPECT_EQ(r.k, 2);
  std::vector<int> truth(40, 1);
  std::fill(truth.begin(), truth.begin() + 20, 0);
  EXPECT_EQ(accuracy(contingency(r.labels, truth)), 1.0);
}

TEST(Dbscan, SparsePointsAreNoise) {
  Eigen::MatrixXd y(4, 1);
  y << 0, 10, 20, 30;
  const auto r = dbscan(y, 1.0, 2);
  for (int l : r.labels) EXPECT_EQ(l, kNoise);
  EXPECT_EQ(r.k, 0);
}

TEST(Dbscan, MatchesReachabilityOracle) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    Eigen::MatrixXd y = gaussian(60, 2, 20 + s);
    y.topRows(20).array() += 4.0;
    const auto got = dbscan(y, 0.6, 4).labels;
    const auto want = dbscan_oracle(y, 0.6, 4);
    // Core and noise membership agree exactly; cluster ids up to renaming.
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i] == kNoise, want[i] == kNoise);
      for (std::size_t j = 0; j < got.size(); ++j) {
        // Border points reachable from two clusters may go either way, so
        // only pairs the oracle places together are compared.
        if (got[i] != kNoise && got[j] != kNoise && want[i] == want[j]) {
          EXPECT_EQ(got[i], got[j]);
        }
      }
    }
  }
}

TEST(Dbscan, ElbowEstimate) {
  Eigen::MatrixXd y = 0.1 * gaussian(60, 2, 30);
  y.bottomRows(30).array() += 20.0;
  const double eps = estimate_eps(y, 4);
  EXPECT_GT(eps, 0.0);
  EXPECT_EQ(dbscan(y, eps, 4).k, 2);
}

TEST(Contingency, HandCounts) {
  const std::vector<int> truth{1, 1, 2, 2};
  auto t = contingency(truth, truth);
  EXPECT_EQ(t.counts, (Eigen::MatrixXd(2, 2) << 2, 0, 0, 2).finished());
  t = contingency(std::vector<int>{1, 1, 1, 1}, truth);
  EXPECT_EQ(t.counts, (Eigen::MatrixXd(2, 1) << 2, 2).finished());
  t = contingency(std::vector<int>{1, 2, 1, 2}, truth);
  EXPECT_EQ(t.counts, Eigen::MatrixXd::Ones(2, 2));
  EXPECT_THROW(contingency(std::vector<int>{1}, truth), Error);
}

TEST(Accuracy, Examples) {
  const std::vector<int> truth{0, 0, 1, 1};
  EXPECT_EQ(accuracy(contingency(std::vector<int>{5, 5, 3, 3}, truth)), 1.0);
  EXPECT_EQ(accuracy(contingency(std::vector<int>{1, 1, 1, 2}, truth)), 0.75);
  std::mt19937_64 rng(12);
  const auto t12 = oracle::random_labels(12, 2, rng);
  const auto p12 = oracle::random_labels(12, 2, rng);
  EXPECT_NEAR(accuracy(contingency(p12, t12)), oracle::permutation_accuracy(p12, t12), 1e-15);
}

TEST(Accuracy, MatchesPermutationOracle) {
  const auto r = props::accuracy_matches_permutations(13, 100);
  EXPECT_TRUE(r.ok) << r.detail;
}

TEST(Hungarian, RectangularAssignment) {
  Eigen::MatrixXd c(2, 3);
  c << 4, 1, 3, 2, 0, 5;
  EXPECT_EQ(hungarian(c), (std::vector<int>{1, 0}));
}

TEST(Nmi, Examples) {
  const std::vector<int> truth{0, 0, 1, 1};
  EXPECT_NEAR(nmi(contingency(truth, truth)), 1.0, 1e-15);
  EXPECT_NEAR(nmi(contingency(std::vector<int>{1, 2, 1, 2}, truth)), 0.0, 1e-15);
  EXPECT_EQ(nmi(contingency(std::vector<int>{0, 0, 0, 0}, std::vector<int>{3, 3, 3, 3})), 0.0);
}

TEST(PairIndices, Examples) {
  const std::vector<int> truth{1, 1, 2, 2};
  EXPECT_EQ(rand_index(contingency(truth, truth)), 1.0);
  EXPECT_EQ(ari(contingency(truth, truth)), 1.0);
  const std::vector<int> pred{1, 2, 1, 2};
  EXPECT_NEAR(rand_index(contingency(pred, truth)), 1.0 / 3.0, 1e-15);
  EXPECT_LT(ari(contingency(pred, truth)), 0.0);
  EXPECT_NEAR(ari(contingency(pred, truth)), oracle::ari(pred, truth), 1e-15);
  EXPECT_THROW(rand_index(contingency(std::vector<int>{1}, std::vector<int>{1})), Error);
}

TEST(PairIndices, MatchBruteForce) {
  const auto r = props::pair_indices_match_brute_force(14, 100);
  EXPECT_TRUE(r.ok) << r.detail;
}

TEST(Silhouette, SeparatedBlobsScoreHigh) {
  Eigen::MatrixXd y = 0.1 * gaussian(40, 2, 15);
  y.bottomRows(20).array() += 10.0;
  std::vector<int> lab(40, 1);
  std::fill(lab.begin(), lab.begin() + 20, 0);
  EXPECT_GT(silhouette(y, lab), 0.9);
}

TEST(Silhouette, RandomSplitOfOneBlobNearZero) {
  const Eigen::MatrixXd y = gaussian(200, 2, 16);
  std::mt19937_64 rng(17);
  EXPECT_LT(std::abs(silhouette(y, oracle::random_labels(200, 2, rng))), 0.2);
}

TEST(Silhouette, HandConfiguration) {
  Eigen::MatrixXd y(6, 1);
  y << 0, 1, 2, 10, 11, 30;
  const std::vector<int> lab{0, 0, 0, 1, 1, 2};
  // Direct per-sample evaluation; the singleton scores 0.
  double total = 0.0;
  for (int i = 0; i < 5; ++i) {
    double a = 0, na = 0;
    std::map<int, std::pair<double, int>> other;
    for (int j = 0; j < 6; ++j) {
      if (j == i) continue;
      const double d = std::abs(y(i) - y(j));
      if (lab[static_cast<std::size_t>(j)] == lab[static_cast<std::size_t>(i)]) {
        a += d;
        ++na;
      } else {
        auto& o = other[lab[static_cast<std::size_t>(j)]];
        o.first += d;
        ++o.second;
      }
    }
    a /= na;
    double b = INFINITY;
    for (const auto& [c, s] : other) b = std::min(b, s.first / s.second);
    total += (b - a) / std::max(a, b);
  }
  EXPECT_NEAR(silhouette(y, lab), total / 6.0, 1e-12);
  EXPECT_THROW(silhouette(y, std::vector<int>(6, 0)), Error);
}

TEST(Evaluate, AllScores) {
  Eigen::MatrixXd y(4, 1);
  y << 0, 0.1, 5, 5.1;
  const std::vector<int> truth{0, 0, 1, 1};
  const auto s = evaluate(y, truth, truth);
  EXPECT_EQ(s.acc, 1.0);
  EXPECT_NEAR(s.nmi, 1.0, 1e-15);
  EXPECT_EQ(s.ri, 1.0);
  EXPECT_EQ(s.ari, 1.0);
  EXPECT_GT(s.silhouette, 0.9);
  EXPECT_TRUE(std::isnan(evaluate(y, std::vector<int>(4, 0), truth).silhouette));
}
