// core/src/cluster.cpp

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

#include "mvmanifold/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "mvmanifold/error.hpp"
#include "mvmanifold/neighbors.hpp"
#include "mvmanifold/random.hpp"

namespace mvm::cluster {

namespace {

struct LloydRun {
  std::vector<int> labels;
  double inertia = 0.0;
  std::vector<double> trace;
};

Eigen::MatrixXd plus_plus_seeds(const Eigen::MatrixXd& y, int k, std::mt19937_64& rng) {
  const Eigen::Index n = y.rows();
  Eigen::MatrixXd centers(k, y.cols());
  std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
  centers.row(0) = y.row(pick(rng));
  Eigen::VectorXd d2 = (y.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    Eigen::Index chosen = 0;
    if (total > 0.0) {
      std::uniform_real_distribution<double> u(0.0, total);
      double r = u(rng);
      chosen = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        r -= d2(i);
        if (r < 0.0) {
          chosen = i;
          break;
        }
      }
    } else {
      chosen = pick(rng);
    }
    centers.row(c) = y.row(chosen);
    d2 = d2.cwiseMin((y.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }
  return centers;
}

LloydRun lloyd(const Eigen::MatrixXd& y, int k, int max_iter, std::mt19937_64& rng) {
  const Eigen::Index n = y.rows();
  Eigen::MatrixXd centers = plus_plus_seeds(y, k, rng);
  LloydRun run;
  run.labels.assign(static_cast<std::size_t>(n), -1);
  Eigen::VectorXd best_d2(n);

  for (int it = 0; it < max_iter; ++it) {
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      int arg = 0;
      double best = std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        const double d = (y.row(i) - centers.row(c)).squaredNorm();
        if (d < best) {
          best = d;
          arg = c;
        }
      }
      best_d2(i) = best;
      if (run.labels[static_cast<std::size_t>(i)] != arg) {
        run.labels[static_cast<std::size_t>(i)] = arg;
        changed = true;
      }
    }
    run.trace.push_back(best_d2.sum());
    if (!changed && it > 0) break;

    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, y.cols());
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      const int c = run.labels[static_cast<std::size_t>(i)];
      sums.row(c) += y.row(i);
      ++counts[static_cast<std::size_t>(c)];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) {
        centers.row(c) = sums.row(c) / counts[static_cast<std::size_t>(c)];
      } else {
        // Reseed with the point currently worst served by its centre.
        Eigen::Index far = 0;
        best_d2.maxCoeff(&far);
        centers.row(c) = y.row(far);
        best_d2(far) = 0.0;
      }
    }
  }

  run.inertia = 0.0;
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, y.cols());
  std::vector<int> counts(static_cast<std::size_t>(k), 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int c = run.labels[static_cast<std::size_t>(i)];
    sums.row(c) += y.row(i);
    ++counts[static_cast<std::size_t>(c)];
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    const int c = run.labels[static_cast<std::size_t>(i)];
    run.inertia += (y.row(i) - sums.row(c) / counts[static_cast<std::size_t>(c)]).squaredNorm();
  }
  return run;
}

}  // namespace

ClusteringResult kmeans(const Eigen::MatrixXd& y, const KMeansConfig& cfg) {
  require(cfg.k >= 1 && cfg.k <= y.rows(), ErrorKind::kConfig,
          "k=" + std::to_string(cfg.k) + " must be in [1, N=" + std::to_string(y.rows()) + "]");
  require(cfg.restarts >= 1, ErrorKind::kConfig, "K-means needs at least one restart");
  require(cfg.max_iter >= 1, ErrorKind::kConfig, "K-means needs at least one iteration");
  require(y.allFinite(), ErrorKind::kNumerical, "K-means input has non-finite values");

  ClusteringResult best;
  best.k = cfg.k;
  best.inertia = std::numeric_limits<double>::infinity();
  for (int r = 0; r < cfg.restarts; ++r) {
    std::mt19937_64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(r)));
    LloydRun run = lloyd(y, cfg.k, cfg.max_iter, rng);
    if (run.inertia < best.inertia) {
      best.inertia = run.inertia;
      best.labels = std::move(run.labels);
      best.inertia_trace = std::move(run.trace);
    }
  }
  return best;
}

ClusteringResult dbscan(const Eigen::MatrixXd& y, double eps, int min_pts) {
  require(eps > 0.0, ErrorKind::kConfig, "DBSCAN eps must be positive");
  require(min_pts >= 1, ErrorKind::kConfig, "DBSCAN min_pts must be >= 1");
  const Eigen::Index n = y.rows();
  const Eigen::MatrixXd sq = squared_distances(y);
  const double eps2 = eps * eps;

  std::vector<std::vector<Eigen::Index>> nb(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (sq(i, j) <= eps2) nb[static_cast<std::size_t>(i)].push_back(j);
  auto is_core = [&](Eigen::Index i) {
    return static_cast<int>(nb[static_cast<std::size_t>(i)].size()) >= min_pts;
  };

  ClusteringResult out;
  constexpr int kUnvisited = -2;
  out.labels.assign(static_cast<std::size_t>(n), kUnvisited);
  int next = 0;
  std::vector<Eigen::Index> queue;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (out.labels[static_cast<std::size_t>(i)] != kUnvisited) continue;
    if (!is_core(i)) {
      out.labels[static_cast<std::size_t>(i)] = kNoise;
      continue;
    }
    const int id = next++;
    out.labels[static_cast<std::size_t>(i)] = id;
    queue.assign(1, i);
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const Eigen::Index p = queue[q];
      if (!is_core(p)) continue;
      for (Eigen::Index u : nb[static_cast<std::size_t>(p)]) {
        int& lab = out.labels[static_cast<std::size_t>(u)];
        if (lab == kUnvisited || lab == kNoise) {
          const bool fresh = lab == kUnvisited;
          lab = id;
          if (fresh) queue.push_back(u);
        }
      }
    }
  }
  out.k = next;
  return out;
}

double estimate_eps(const Eigen::MatrixXd& y, int min_pts) {
  const Eigen::Index n = y.rows();
  require(min_pts >= 1 && min_pts < n, ErrorKind::kConfig,
          "min_pts must be in [1, N) to estimate eps");
  const NeighborSets nb = knn(y, min_pts);
  std::vector<double> kd(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    kd[static_cast<std::size_t>(i)] = (y.row(i) - y.row(nb[static_cast<std::size_t>(i)].back())).norm();
  std::sort(kd.begin(), kd.end());

  const double lo = kd.front(), hi = kd.back();
  double eps = hi;
  if (hi > lo && n > 2) {
    double best = -1.0;
    for (std::size_t i = 0; i < kd.size(); ++i) {
      const double xn = static_cast<double>(i) / static_cast<double>(kd.size() - 1);
      const double yn = (kd[i] - lo) / (hi - lo);
      if (xn - yn > best) {
        best = xn - yn;
        eps = kd[i];
      }
    }
  }
  if (eps <= 0.0) {
    // All k-distances are zero (heavy duplication); any tiny radius works.
    eps = std::numeric_limits<double>::min();
  }
  return eps;
}

ContingencyTable contingency(std::span<const int> pred, std::span<const int> truth) {
  require(pred.size() == truth.size(), ErrorKind::kConfig,
          "label vectors differ in length (" + std::to_string(pred.size()) + " vs " +
              std::to_string(truth.size()) + ")");
  ContingencyTable t;
  t.row_labels.assign(truth.begin(), truth.end());
  t.col_labels.assign(pred.begin(), pred.end());
  for (auto* v : {&t.row_labels, &t.col_labels}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  auto index_of = [](const std::vector<int>& sorted, int v) {
    return static_cast<Eigen::Index>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
  };
  t.counts = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(t.row_labels.size()),
                                   static_cast<Eigen::Index>(t.col_labels.size()));
  for (std::size_t i = 0; i < pred.size(); ++i)
    t.counts(index_of(t.row_labels, truth[i]), index_of(t.col_labels, pred[i])) += 1.0;
  t.row_sums = t.counts.rowwise().sum();
  t.col_sums = t.counts.colwise().sum().transpose();
  t.total = static_cast<double>(pred.size());
  return t;
}

std::vector<int> hungarian(const Eigen::MatrixXd& cost) {
  // Potentials formulation, O(n^2 m); index 0 is the virtual start column.
  const std::size_t n = static_cast<std::size_t>(cost.rows());
  const std::size_t m = static_cast<std::size_t>(cost.cols());
  require(n <= m, ErrorKind::kConfig, "hungarian: more rows than columns");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  auto c = [&](std::size_t i, std::size_t j) {
    return cost(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j - 1));
  };
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(m + 1, kInf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = c(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> assign(n, -1);
  for (std::size_t j = 1; j <= m; ++j)
    if (p[j] > 0) assign[p[j] - 1] = static_cast<int>(j - 1);
  return assign;
}

double accuracy(const ContingencyTable& t) {
  if (t.total <= 0.0) return 0.0;
  // Maximize matched counts = minimize (max - count) on a square padding.
  const Eigen::Index size = std::max(t.counts.rows(), t.counts.cols());
  Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(size, size);
  padded.topLeftCorner(t.counts.rows(), t.counts.cols()) = t.counts;
  const double top = padded.maxCoeff();
  const std::vector<int> match = hungarian((top - padded.array()).matrix());
  double hit = 0.0;
  for (Eigen::Index i = 0; i < size; ++i) hit += padded(i, match[static_cast<std::size_t>(i)]);
  return hit / t.total;
}

namespace {

double entropy(const Eigen::VectorXd& sums, double total) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < sums.size(); ++i)
    if (sums(i) > 0.0) {
      const double p = sums(i) / total;
      h -= p * std::log(p);
    }
  return h;
}

double choose2(double x) { return x * (x - 1.0) / 2.0; }

struct PairCounts {
  double all, joint, rows, cols;
};

PairCounts pair_counts(const ContingencyTable& t) {
  require(t.total >= 2.0, ErrorKind::kUndefinedInput,
          "pair-counting indices need at least 2 samples");
  PairCounts pc{choose2(t.total), 0.0, 0.0, 0.0};
  for (Eigen::Index j = 0; j < t.counts.cols(); ++j)
    for (Eigen::Index i = 0; i < t.counts.rows(); ++i) pc.joint += choose2(t.counts(i, j));
  for (Eigen::Index i = 0; i < t.row_sums.size(); ++i) pc.rows += choose2(t.row_sums(i));
  for (Eigen::Index j = 0; j < t.col_sums.size(); ++j) pc.cols += choose2(t.col_sums(j));
  return pc;
}

}  // namespace

double nmi(const ContingencyTable& t) {
  if (t.total <= 0.0) return 0.0;
  const double hx = entropy(t.row_sums, t.total);
  const double hy = entropy(t.col_sums, t.total);
  if (hx + hy <= 0.0) return 0.0;
  double mi = 0.0;
  for (Eigen::Index j = 0; j < t.counts.cols(); ++j)
    for (Eigen::Index i = 0; i < t.counts.rows(); ++i) {
      const double nij = t.counts(i, j);
      if (nij > 0.0) mi += nij / t.total * std::log(t.total * nij / (t.row_sums(i) * t.col_sums(j)));
    }
  return std::clamp(2.0 * mi / (hx + hy), 0.0, 1.0);
}

double rand_index(const ContingencyTable& t) {
  const PairCounts pc = pair_counts(t);
  // Agreements: pairs together in both plus pairs apart in both.
  const double together = pc.joint;
  const double apart = pc.all - pc.rows - pc.cols + pc.joint;
  return (together + apart) / pc.all;
}

double ari(const ContingencyTable& t) {
  const PairCounts pc = pair_counts(t);
  const double expected = pc.rows * pc.cols / pc.all;
  const double max_index = 0.5 * (pc.rows + pc.cols);
  const double denom = max_index - expected;
  if (denom == 0.0) return 1.0;
  return (pc.joint - expected) / denom;
}

double silhouette(const Eigen::MatrixXd& y, std::span<const int> labels) {
  require(static_cast<Eigen::Index>(labels.size()) == y.rows(), ErrorKind::kConfig,
          "one label per embedded point required");
  std::vector<int> ids;
  for (int l : labels)
    if (l != kNoise) ids.push_back(l);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  require(ids.size() >= 2, ErrorKind::kUndefinedInput,
          "silhouette needs at least 2 clusters");

  const Eigen::Index n = y.rows();
  const std::size_t k = ids.size();
  std::vector<int> c(static_cast<std::size_t>(n), -1);
  std::vector<double> size(k, 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int l = labels[static_cast<std::size_t>(i)];
    if (l == kNoise) continue;
    const int idx = static_cast<int>(std::lower_bound(ids.begin(), ids.end(), l) - ids.begin());
    c[static_cast<std::size_t>(i)] = idx;
    size[static_cast<std::size_t>(idx)] += 1.0;
  }
  const Eigen::MatrixXd dist = squared_distances(y).cwiseSqrt();

  double total = 0.0;
  double counted = 0.0;
  std::vector<double> sum(k);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int ci = c[static_cast<std::size_t>(i)];
    if (ci < 0) continue;
    counted += 1.0;
    if (size[static_cast<std::size_t>(ci)] <= 1.0) continue;  // singleton scores 0
    std::fill(sum.begin(), sum.end(), 0.0);
    for (Eigen::Index j = 0; j < n; ++j) {
      const int cj = c[static_cast<std::size_t>(j)];
      if (cj >= 0 && j != i) sum[static_cast<std::size_t>(cj)] += dist(i, j);
    }
    const double a = sum[static_cast<std::size_t>(ci)] / (size[static_cast<std::size_t>(ci)] - 1.0);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t q = 0; q < k; ++q)
      if (static_cast<int>(q) != ci) b = std::min(b, sum[q] / size[q]);
    const double den = std::max(a, b);
    total += den > 0.0 ? (b - a) / den : 0.0;
  }
  return total / counted;
}

Scores evaluate(const Eigen::MatrixXd& y, std::span<const int> pred, std::span<const int> truth) {
  const ContingencyTable t = contingency(pred, truth);
  Scores s;
  s.acc = accuracy(t);
  s.nmi = nmi(t);
  s.ri = rand_index(t);
  s.ari = ari(t);
  try {
    s.silhouette = silhouette(y, pred);
  } catch (const Error&) {
    s.silhouette = std::numeric_limits<double>::quiet_NaN();
  }
  return s;
}

}  // namespace mvm::cluster
