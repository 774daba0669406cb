// tests/sne_test.cpp

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
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "mvmanifold/cluster.hpp"
#include "mvmanifold/error.hpp"
#include "mvmanifold/neighbors.hpp"
#include "mvmanifold/sne.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace mvm;
using namespace mvm::sne;

namespace {

Eigen::MatrixXd gaussian(Eigen::Index r, Eigen::Index c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = g(rng);
  return m;
}

double entropy_bits(const Eigen::VectorXd& p) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p(i) > 0) h -= p(i) * std::log2(p(i));
  return h;
}

MultiViewDataset two_blobs(std::uint64_t seed, int views = 1) {
  MultiViewDataset ds;
  for (int m = 0; m < views; ++m) {
    Eigen::MatrixXd x = gaussian(40, 4, seed + static_cast<std::uint64_t>(m));
    x.topRows(20).array() += 8.0;
    ds.views.push_back(x);
  }
  std::vector<int> lab(40, 1);
  std::fill(lab.begin(), lab.begin() + 20, 0);
  ds.labels = lab;
  return ds;
}

SneConfig quick(double perp, int iters = 300) {
  SneConfig c;
  c.perplexity = perp;
  c.n_iter = iters;
  c.seed = 5;
  // The default step is sized for hundreds of points; on 40 points with
  // several views summed into the gradient it overshoots.
  c.learning_rate = 20.0;
  return c;
}

}  // namespace

TEST(CalibrateRow, EquidistantNeighboursGiveUniformRow) {
  const double inf = std::numeric_limits<double>::infinity();
  const std::vector<double> d{4.0, 4.0, 4.0, 4.0, inf, inf};
  const auto r = calibrate_row(d, 4.0);
  for (int j = 0; j < 4; ++j) EXPECT_NEAR(r.row(j), 0.25, 1e-12);
  EXPECT_EQ(r.row(4), 0.0);
  EXPECT_NEAR(r.entropy_bits, 2.0, 1e-5);
}

TEST(CalibrateRow, HitsTargetPerplexity) {
  const Eigen::MatrixXd sq = squared_distances(gaussian(30, 3, 1));
  for (double perp : {2.0, 5.0, 12.5, 25.0}) {
    std::vector<double> row;
    for (Eigen::Index j = 1; j < 30; ++j) row.push_back(sq(0, j));
    const auto r = calibrate_row(row, perp);
    EXPECT_NEAR(std::exp2(entropy_bits(r.row)), perp, perp * 1e-4);
    EXPECT_NEAR(r.row.sum(), 1.0, 1e-12);
    EXPECT_NEAR(r.sigma, std::sqrt(1.0 / (2.0 * r.beta)), 1e-12 * r.sigma);
  }
}

TEST(CalibrateRow, DuplicatePointsStayFinite) {
  const std::vector<double> d{0.0, 0.0, 1.0, 2.0, 5.0};
  const auto r = calibrate_row(d, 3.0);
  EXPECT_TRUE(r.row.allFinite());
  EXPECT_TRUE(std::isfinite(r.sigma));
  EXPECT_NEAR(r.entropy_bits, std::log2(3.0), 1e-5);
}

TEST(CalibrateRow, UnreachablePerplexityThrows) {
  const double inf = std::numeric_limits<double>::infinity();
  try {
    calibrate_row(std::vector<double>{1.0, 2.0, inf, inf}, 3.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCalibration);
  }
}

TEST(JointAffinities, SymmetricNormalisedZeroDiagonal) {
  const auto p = joint_affinities(gaussian(25, 6, 2), 7.0);
  EXPECT_EQ((p.values - p.values.transpose()).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_NEAR(p.values.sum(), 1.0, 1e-12);
  EXPECT_EQ(p.values.diagonal().cwiseAbs().maxCoeff(), 0.0);
}

TEST(JointAffinities, MatchesDirectFormula) {
  const Eigen::MatrixXd x = gaussian(4, 2, 3);
  const Eigen::MatrixXd sq = squared_distances(x);
  const double perp = 2.0;
  const auto p = joint_affinities(x, perp);
  // Rebuild from the calibrated bandwidths by direct evaluation.
  Eigen::MatrixXd cond = Eigen::MatrixXd::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    std::vector<double> row;
    for (int j = 0; j < 4; ++j)
      if (j != i) row.push_back(sq(i, j));
    const double beta = calibrate_row(row, perp).beta;
    double z = 0.0;
    for (int j = 0; j < 4; ++j)
      if (j != i) z += std::exp(-beta * sq(i, j));
    for (int j = 0; j < 4; ++j)
      if (j != i) cond(i, j) = std::exp(-beta * sq(i, j)) / z;
  }
  const Eigen::MatrixXd expected = (cond + cond.transpose()) / 8.0;
  EXPECT_LT((p.values - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(JointAffinities, PerplexityMustBeBelowN) {
  EXPECT_THROW(joint_affinities(gaussian(5, 2, 1), 5.0), Error);
}

TEST(StudentT, EquilateralTriangle) {
  Eigen::MatrixXd y(3, 2);
  y << 0, 0, 1, 0, 0.5, std::sqrt(3.0) / 2;
  const auto q = student_t_affinities(y);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      EXPECT_NEAR(q.values(i, j), i == j ? 0.0 : 1.0 / 6.0, 1e-12);
}

TEST(StudentT, MatchesDirectFormula) {
  const Eigen::MatrixXd y = gaussian(5, 2, 4);
  const auto q = student_t_affinities(y);
  double z = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      if (i != j) z += 1.0 / (1.0 + (y.row(i) - y.row(j)).squaredNorm());
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      if (i != j) {
        EXPECT_NEAR(q.values(i, j), 1.0 / (1.0 + (y.row(i) - y.row(j)).squaredNorm()) / z,
                    1e-12);
      }
}

TEST(StudentT, NearerPairsGetMoreMass) {
  Eigen::MatrixXd y(3, 1);
  y << 0, 0, 1;
  const auto q = student_t_affinities(y);
  EXPECT_GT(q.values(0, 1), q.values(0, 2));
}

TEST(Cost, ZeroWhenQEqualsP) {
  const auto q = student_t_affinities(gaussian(6, 2, 5));
  AffinityMatrix p = q;
  p.kind = AffinityKind::kHighDimJoint;
  const std::vector<AffinityMatrix> ps{p, p};
  EXPECT_NEAR(multisne_cost(ps, q, ViewWeights::uniform(2)), 0.0, 1e-15);
}

TEST(Cost, MatchesTripleSum) {
  const std::vector<AffinityMatrix> ps{joint_affinities(gaussian(4, 3, 6), 2.0),
                                       joint_affinities(gaussian(4, 3, 7), 1.5)};
  const auto q = student_t_affinities(gaussian(4, 2, 8));
  const ViewWeights w({0.3, 0.7});
  double expected = 0.0;
  for (std::size_t m = 0; m < 2; ++m)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (i != j)
          expected += w[m] * ps[m].values(i, j) *
                      std::log(ps[m].values(i, j) / q.values(i, j));
  const double cost = multisne_cost(ps, q, w);
  EXPECT_GE(cost, 0.0);
  EXPECT_NEAR(cost, expected, 1e-12);
  EXPECT_NEAR(multisne_cost({&ps[0], 1}, q, ViewWeights::uniform(1)),
              kl_divergence(ps[0], q), 1e-15);
}

TEST(Gradient, MatchesFiniteDifferences) {
  const auto r = props::gradient_matches_finite_differences(17, 20);
  EXPECT_TRUE(r.ok) << r.detail;
}

TEST(Gradient, TwoPointSymmetry) {
  AffinityMatrix p;
  p.values = Eigen::MatrixXd{{0.0, 0.5}, {0.5, 0.0}};
  Eigen::MatrixXd y(2, 2);
  y << -1, 0.5, 1, -0.5;
  const auto g = multisne_gradient({&p, 1}, y, ViewWeights::uniform(1));
  EXPECT_LT((g.row(0) + g.row(1)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Gradient, SmallAtOptimum) {
  // Q realised exactly by a configuration: the gradient vanishes there.
  const Eigen::MatrixXd y = gaussian(6, 2, 9);
  AffinityMatrix p = student_t_affinities(y);
  const auto g = multisne_gradient({&p, 1}, y, ViewWeights::uniform(1));
  EXPECT_LT(g.cwiseAbs().maxCoeff(), 1e-14);
}

TEST(UpdateWeights, Examples) {
  const auto even = update_weights(std::vector<double>{2.0, 2.0, 2.0});
  for (std::size_t m = 0; m < 3; ++m) EXPECT_NEAR(even[m], 1.0 / 3.0, 1e-15);
  const auto two = update_weights(std::vector<double>{0.3, 0.7});
  EXPECT_NEAR(two[0], 0.7, 1e-15);
  EXPECT_NEAR(two[1], 0.3, 1e-15);
  const auto zero = update_weights(std::vector<double>{0.0, 0.0});
  EXPECT_EQ(zero[0], 0.5);
}

TEST(UpdateWeights, ScaleInvariantAndOrderReversing) {
  const std::vector<double> kl{0.4, 1.3, 0.9, 2.2};
  std::vector<double> scaled;
  for (double v : kl) scaled.push_back(v * 37.5);
  const auto a = update_weights(kl);
  const auto b = update_weights(scaled);
  for (std::size_t m = 0; m < 4; ++m) EXPECT_NEAR(a[m], b[m], 1e-15);
  EXPECT_GT(a[0], a[2]);
  EXPECT_GT(a[2], a[1]);
  EXPECT_GT(a[1], a[3]);
}

TEST(Optimize, CostDecreasesAndStaysFinite) {
  const auto r = run_tsne(two_blobs(1).views[0], quick(10));
  ASSERT_EQ(r.cost.size(), 300u);
  for (double c : r.cost) EXPECT_TRUE(std::isfinite(c));
  EXPECT_LT(r.cost.back(), r.cost.front());
  EXPECT_TRUE(r.embedding.is_finite());
  EXPECT_LT(r.embedding.coords.colwise().mean().cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Optimize, SeparatesTwoBlobs) {
  const auto ds = two_blobs(2, 2);
  const auto r = run_multisne(ds, quick(10));
  const auto km = cluster::kmeans(r.embedding.coords, {.k = 2, .restarts = 5, .seed = 1});
  EXPECT_EQ(cluster::accuracy(cluster::contingency(km.labels, *ds.labels)), 1.0);
}

TEST(Optimize, DeterministicForSeed) {
  const auto ds = two_blobs(3, 2);
  const auto a = run_multisne(ds, quick(8, 150));
  const auto b = run_multisne(ds, quick(8, 150));
  EXPECT_EQ(a.embedding.coords, b.embedding.coords);
  EXPECT_EQ(a.cost, b.cost);
  auto other = quick(8, 150);
  other.seed = 6;
  EXPECT_NE(run_multisne(ds, other).embedding.coords, a.embedding.coords);
}

TEST(Optimize, SingleViewReductions) {
  const auto r = props::single_view_reductions(23);
  EXPECT_TRUE(r.ok) << r.detail;
}

TEST(Optimize, ToleranceStopsEarly) {
  auto cfg = quick(10, 1000);
  cfg.cost_tolerance = 1e-3;
  const auto r = run_tsne(two_blobs(4).views[0], cfg);
  EXPECT_LT(r.iterations, 1000);
  EXPECT_GT(r.iterations, cfg.exaggeration_iters);
  EXPECT_EQ(r.cost.size(), static_cast<std::size_t>(r.iterations));
}

TEST(Optimize, DivergenceReportsIteration) {
  auto cfg = quick(10, 200);
  cfg.learning_rate = 1e300;
  cfg.adaptive_gains = false;
  try {
    run_tsne(two_blobs(5).views[0], cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kOptimization);
    EXPECT_NE(std::string(e.what()).find("iteration"), std::string::npos);
  }
}

TEST(Optimize, AutoWeightsFreezeThenFavourInformativeViews) {
  auto ds = two_blobs(6, 2);
  ds.views.push_back(gaussian(40, 4, 99));  // pure noise
  auto cfg = quick(10, 400);
  const auto r = run_multisne(ds, cfg, AutoWeights{});
  ASSERT_EQ(r.weight_history.size(), 400u);
  for (int t = 0; t < cfg.weight_freeze_iters; ++t)
    for (double w : r.weight_history[static_cast<std::size_t>(t)]) EXPECT_EQ(w, 1.0 / 3.0);
  const auto& last = r.weight_history.back();
  EXPECT_NEAR(last[0] + last[1] + last[2], 1.0, 1e-12);
  EXPECT_LT(last[2], std::min(last[0], last[1]));
  EXPECT_EQ(r.final_weights[2], last[2]);
}

TEST(Msne, CombinedDistributionAndIdenticalViews) {
  const auto ds = two_blobs(7);
  MultiViewDataset three;
  three.views = {ds.views[0], ds.views[0], ds.views[0]};
  // The averaged P differs from a single view's only by rounding. The gain
  // updates branch on gradient signs, so compare the early trajectory.
  const auto cfg = quick(9, 10);
  const auto a = run_msne(three, cfg);
  const auto b = run_tsne(ds.views[0], cfg);
  EXPECT_LT((a.embedding.coords - b.embedding.coords).cwiseAbs().maxCoeff(), 1e-10);
  for (std::size_t t = 0; t < a.cost.size(); ++t) EXPECT_NEAR(a.cost[t], b.cost[t], 1e-12);
}

TEST(Concat, ThreeCopiesKeepNeighbourRanking) {
  const Eigen::MatrixXd x = two_blobs(8).views[0];
  MultiViewDataset ds;
  ds.views = {x, x, x};
  // Both rows are calibrated to the same perplexity only up to the bisection
  // tolerance, so agreement is approximate.
  const auto p1 = joint_affinities(x, 6.0);
  const auto p3 = joint_affinities(ds.concatenated(), 6.0);
  EXPECT_LT((p1.values - p3.values).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Config, Validation) {
  SneConfig c;
  c.perplexity = -1;
  EXPECT_THROW(c.validate(), Error);
  c = SneConfig{};
  c.momentum_final = 1.0;
  EXPECT_THROW(c.validate(), Error);
  c = SneConfig{};
  EXPECT_THROW(c.validate(30), Error);  // perplexity 30 needs N > 30
  EXPECT_NO_THROW(c.validate(31));
}
