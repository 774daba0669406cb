// core/src/sne.cpp

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

#include "mvmanifold/sne.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "mvmanifold/error.hpp"
#include "mvmanifold/neighbors.hpp"

namespace mvm::sne {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kEntropyTolerance = 1e-5;  // bits
constexpr int kMaxBisection = 50;

struct RowEval {
  double entropy_bits;
  double z;
};

// Unnormalized row exp(-beta (d - dmin)) into `out`; returns H in bits.
RowEval eval_row(std::span<const double> d, double dmin, double beta, Eigen::VectorXd& out) {
  double z = 0.0;
  double weighted = 0.0;
  for (std::size_t j = 0; j < d.size(); ++j) {
    const double shifted = d[j] - dmin;
    const double e = std::isfinite(shifted) ? std::exp(-beta * shifted) : 0.0;
    out(static_cast<Eigen::Index>(j)) = e;
    z += e;
    if (e > 0.0) weighted += e * shifted;
  }
  const double h_nats = std::log(z) + beta * weighted / z;
  return {h_nats / kLn2, z};
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

RowCalibration calibrate_row(std::span<const double> sq_distances, double perplexity) {
  require(!sq_distances.empty(), ErrorKind::kCalibration, "calibration: empty row");
  require(perplexity > 0.0 && std::isfinite(perplexity), ErrorKind::kConfig,
          "perplexity must be positive");

  double dmin = std::numeric_limits<double>::infinity();
  for (double v : sq_distances) {
    require(!std::isnan(v) && v >= 0.0, ErrorKind::kCalibration,
            "calibration: distances must be nonnegative numbers");
    dmin = std::min(dmin, v);
  }
  require(std::isfinite(dmin), ErrorKind::kCalibration,
          "calibration: every distance is infinite");

  const double target = std::log2(perplexity);
  // sigma in [1e-20, 1e20]  <=>  beta = 1/(2 sigma^2) in [5e-41, 5e39].
  double lo = std::log(0.5e-40);
  double hi = std::log(0.5e40);

  RowCalibration out;
  out.row.resize(static_cast<Eigen::Index>(sq_distances.size()));
  double beta = 0.0;
  double h = 0.0;
  double z = 1.0;
  bool hit = false;
  for (int it = 0; it < kMaxBisection; ++it) {
    const double mid = 0.5 * (lo + hi);
    beta = std::exp(mid);
    const RowEval e = eval_row(sq_distances, dmin, beta, out.row);
    h = e.entropy_bits;
    z = e.z;
    out.iterations = it + 1;
    if (std::abs(h - target) < kEntropyTolerance) {
      hit = true;
      break;
    }
    // Entropy falls as beta grows.
    if (h > target)
      lo = mid;
    else
      hi = mid;
  }
  if (!hit) {
    throw Error(ErrorKind::kCalibration,
                "perplexity " + format_double(perplexity) +
                    " not attainable for this row (entropy reached " + format_double(h) +
                    " bits, target " + format_double(target) + ")");
  }
  out.row /= z;
  out.beta = beta;
  out.sigma = std::sqrt(1.0 / (2.0 * beta));
  out.entropy_bits = h;
  return out;
}

AffinityMatrix joint_affinities_from_squared(const Eigen::MatrixXd& sq_dist,
                                             double perplexity) {
  const Eigen::Index n = sq_dist.rows();
  require(sq_dist.cols() == n, ErrorKind::kConfig, "distance matrix must be square");
  require(n >= 3, ErrorKind::kConfig, "affinities need at least 3 samples");
  require(perplexity < static_cast<double>(n), ErrorKind::kConfig,
          "perplexity " + format_double(perplexity) + " must be below N=" +
              std::to_string(n));

  Eigen::MatrixXd cond = Eigen::MatrixXd::Zero(n, n);
  std::vector<double> buf(static_cast<std::size_t>(n - 1));
  for (Eigen::Index i = 0; i < n; ++i) {
    std::size_t k = 0;
    for (Eigen::Index j = 0; j < n; ++j)
      if (j != i) buf[k++] = sq_dist(i, j);
    RowCalibration rc;
    try {
      rc = calibrate_row(buf, perplexity);
    } catch (const Error& e) {
      throw Error(e.kind(), "sample " + std::to_string(i) + ": " + e.what());
    }
    k = 0;
    for (Eigen::Index j = 0; j < n; ++j)
      if (j != i) cond(i, j) = rc.row(static_cast<Eigen::Index>(k++));
  }

  AffinityMatrix p;
  p.kind = AffinityKind::kHighDimJoint;
  p.perplexity = perplexity;
  p.values.resize(n, n);
  const double scale = 1.0 / (2.0 * static_cast<double>(n));
  // Both triangles from the same expression so P is exactly symmetric.
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) p.values(i, j) = (cond(i, j) + cond(j, i)) * scale;
  p.values.diagonal().setZero();
  return p;
}

AffinityMatrix joint_affinities(const Eigen::MatrixXd& view, double perplexity) {
  return joint_affinities_from_squared(squared_distances(view), perplexity);
}

namespace {

// Student-t kernel 1 / (1 + ||y_i - y_j||^2) with zero diagonal.
Eigen::MatrixXd student_kernel(const Eigen::MatrixXd& y) {
  Eigen::MatrixXd num = squared_distances(y);
  num = (1.0 + num.array()).inverse().matrix();
  num.diagonal().setZero();
  return num;
}

}  // namespace

AffinityMatrix student_t_affinities(const Eigen::MatrixXd& y) {
  require(y.rows() >= 2, ErrorKind::kConfig, "Q needs at least 2 points");
  AffinityMatrix q;
  q.kind = AffinityKind::kLowDimStudentT;
  q.values = student_kernel(y);
  q.values /= q.values.sum();
  return q;
}

double kl_divergence(const AffinityMatrix& p, const AffinityMatrix& q) {
  require(p.size() == q.size(), ErrorKind::kConfig, "KL: size mismatch");
  double kl = 0.0;
  const Eigen::Index n = p.size();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double pij = p.values(i, j);
      if (pij <= 0.0) continue;
      const double qij = q.values(i, j);
      require(qij > 0.0, ErrorKind::kDomain,
              "KL undefined: q is zero where p is positive at (" + std::to_string(i) +
                  ", " + std::to_string(j) + ")");
      kl += pij * std::log(std::max(pij, kLogFloor) / std::max(qij, kLogFloor));
    }
  }
  return kl;
}

double multisne_cost(std::span<const AffinityMatrix> p, const AffinityMatrix& q,
                     const ViewWeights& w) {
  require(p.size() == w.size(), ErrorKind::kConfig, "one weight per view required");
  double c = 0.0;
  for (std::size_t m = 0; m < p.size(); ++m) c += w[m] * kl_divergence(p[m], q);
  return c;
}

Eigen::MatrixXd multisne_gradient(std::span<const AffinityMatrix> p,
                                  const Eigen::MatrixXd& y, const ViewWeights& w) {
  require(p.size() == w.size(), ErrorKind::kConfig, "one weight per view required");
  const Eigen::Index n = y.rows();
  const Eigen::MatrixXd num = student_kernel(y);
  const Eigen::MatrixXd q = num / num.sum();
  Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(n, y.cols());
  for (std::size_t m = 0; m < p.size(); ++m) {
    require(p[m].size() == n, ErrorKind::kConfig, "affinity size mismatch");
    const Eigen::MatrixXd l = ((p[m].values - q).array() * num.array()).matrix();
    const Eigen::VectorXd rs = l.rowwise().sum();
    grad += 4.0 * w[m] * (rs.asDiagonal() * y - l * y);
  }
  return grad;
}

ViewWeights update_weights(std::span<const double> kl) {
  require(!kl.empty(), ErrorKind::kConfig, "update_weights: no views");
  double total = 0.0;
  for (double v : kl) {
    require(std::isfinite(v), ErrorKind::kNumerical, "update_weights: non-finite KL");
    total += std::max(v, 0.0);
  }
  if (total <= 0.0) return ViewWeights::uniform(kl.size());
  std::vector<double> raw;
  raw.reserve(kl.size());
  for (double v : kl) raw.push_back(1.0 - std::max(v, 0.0) / total);
  return ViewWeights::normalized(std::move(raw));
}

void SneConfig::validate(Eigen::Index n_samples) const {
  require(perplexity > 0.0, ErrorKind::kConfig, "perplexity must be positive");
  if (n_samples > 0)
    require(perplexity < static_cast<double>(n_samples), ErrorKind::kConfig,
            "perplexity " + format_double(perplexity) + " must be below N=" +
                std::to_string(n_samples));
  require(n_iter >= 1, ErrorKind::kConfig, "n_iter must be at least 1");
  require(learning_rate > 0.0, ErrorKind::kConfig, "learning rate must be positive");
  require(momentum_initial >= 0.0 && momentum_initial < 1.0 && momentum_final >= 0.0 &&
              momentum_final < 1.0,
          ErrorKind::kConfig, "momentum must lie in [0, 1)");
  require(exaggeration >= 1.0, ErrorKind::kConfig, "exaggeration must be >= 1");
  require(min_gain > 0.0, ErrorKind::kConfig, "min_gain must be positive");
  require(init_variance > 0.0, ErrorKind::kConfig, "init variance must be positive");
  require(output_dim >= 1, ErrorKind::kConfig, "output dimension must be >= 1");
  require(cost_tolerance >= 0.0, ErrorKind::kConfig, "cost tolerance must be >= 0");
  require(weight_freeze_iters >= 0, ErrorKind::kConfig, "weight freeze must be >= 0");
}

SneResult optimize(std::span<const AffinityMatrix> p, const WeightSpec& weights,
                   const SneConfig& cfg) {
  require(!p.empty(), ErrorKind::kConfig, "optimize: no affinity matrices");
  const Eigen::Index n = p.front().size();
  cfg.validate();
  for (const auto& pm : p)
    require(pm.size() == n, ErrorKind::kAlignment, "affinity matrices differ in size");

  const std::size_t m_views = p.size();
  const bool automatic = std::holds_alternative<AutoWeights>(weights);
  ViewWeights w = automatic ? ViewWeights::uniform(m_views) : std::get<ViewWeights>(weights);
  require(w.size() == m_views, ErrorKind::kConfig,
          "got " + std::to_string(w.size()) + " weights for " + std::to_string(m_views) +
              " views");

  // sum_m p log p, the constant part of each KL term.
  std::vector<double> entropy_term(m_views);
  for (std::size_t m = 0; m < m_views; ++m)
    entropy_term[m] =
        (p[m].values.array() * p[m].values.array().max(kLogFloor).log()).sum();

  // Effective target sum_m M w^m P^m; the coefficients sum to M.
  const double scale = static_cast<double>(m_views);
  Eigen::MatrixXd p_eff;
  auto rebuild_target = [&]() {
    p_eff = (scale * w[0]) * p[0].values;
    for (std::size_t m = 1; m < m_views; ++m) p_eff += (scale * w[m]) * p[m].values;
  };
  rebuild_target();

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(cfg.init_variance));
  Eigen::MatrixXd y(n, cfg.output_dim);
  for (Eigen::Index c = 0; c < y.cols(); ++c)
    for (Eigen::Index r = 0; r < n; ++r) y(r, c) = normal(rng);

  Eigen::MatrixXd inc = Eigen::MatrixXd::Zero(n, cfg.output_dim);
  Eigen::MatrixXd gains = Eigen::MatrixXd::Ones(n, cfg.output_dim);
  Eigen::MatrixXd num(n, n);
  Eigen::MatrixXd l(n, n);

  SneResult out;
  out.cost.reserve(static_cast<std::size_t>(cfg.n_iter));
  std::vector<double> kl(m_views);

  for (int t = 0; t < cfg.n_iter; ++t) {
    num = student_kernel(y);
    const double z = num.sum();
    const double inv_z = 1.0 / z;

    // Per-view KL at the current Y (log q floored as in kl_divergence).
    {
      const Eigen::ArrayXXd log_q = (num.array() * inv_z).max(kLogFloor).log();
      for (std::size_t m = 0; m < m_views; ++m)
        kl[m] = entropy_term[m] - (p[m].values.array() * log_q).sum();
    }
    double cost = 0.0;
    for (std::size_t m = 0; m < m_views; ++m) cost += w[m] * kl[m];
    out.cost.push_back(cost);

    if (automatic && t >= cfg.weight_freeze_iters && m_views > 1) {
      w = update_weights(kl);
      rebuild_target();
    }
    if (automatic) out.weight_history.emplace_back(w.values().begin(), w.values().end());

    const double exag = t < cfg.exaggeration_iters ? cfg.exaggeration : 1.0;
    // L_ij = (exag * Peff_ij - M q_ij) num_ij; grad_i = 4 sum_j L_ij (y_i - y_j).
    l = ((exag * p_eff.array() - (scale * inv_z) * num.array()) * num.array()).matrix();
    const Eigen::VectorXd rs = l.rowwise().sum();
    const Eigen::MatrixXd grad = 4.0 * (rs.asDiagonal() * y - l * y);

    if (cfg.adaptive_gains) {
      for (Eigen::Index k = 0; k < grad.size(); ++k) {
        const bool same = (grad(k) > 0.0) == (inc(k) > 0.0);
        gains(k) = same ? gains(k) * 0.8 : gains(k) + 0.2;
        gains(k) = std::max(gains(k), cfg.min_gain);
      }
    }
    const double momentum =
        t < cfg.momentum_switch_iter ? cfg.momentum_initial : cfg.momentum_final;
    inc = momentum * inc - cfg.learning_rate * (gains.array() * grad.array()).matrix();
    y += inc;
    y.rowwise() -= y.colwise().mean();

    out.iterations = t + 1;
    if (!y.allFinite())
      throw Error(ErrorKind::kOptimization,
                  "embedding diverged (non-finite coordinates) at iteration " +
                      std::to_string(t + 1));

    if (cfg.cost_tolerance > 0.0 && t > cfg.exaggeration_iters && out.cost.size() >= 2) {
      const double prev = out.cost[out.cost.size() - 2];
      if (std::abs(prev - cost) <= cfg.cost_tolerance * std::max(std::abs(prev), 1e-300))
        break;
    }
  }

  out.final_weights = w;
  out.embedding.coords = std::move(y);
  out.embedding.config = {
      {"perplexity", format_double(cfg.perplexity)},
      {"n_iter", std::to_string(cfg.n_iter)},
      {"iterations_run", std::to_string(out.iterations)},
      {"learning_rate", format_double(cfg.learning_rate)},
      {"seed", std::to_string(cfg.seed)},
      {"weights", automatic ? "auto" : "fixed"},
      {"final_weights", w.to_string()},
  };
  return out;
}

namespace {

std::vector<AffinityMatrix> view_affinities(const MultiViewDataset& ds, double perplexity) {
  std::vector<AffinityMatrix> p;
  p.reserve(ds.n_views());
  for (std::size_t m = 0; m < ds.n_views(); ++m) {
    try {
      p.push_back(joint_affinities(ds.views[m], perplexity));
    } catch (const Error& e) {
      throw Error(e.kind(), "view " + std::to_string(m + 1) + ": " + e.what());
    }
  }
  return p;
}

}  // namespace

SneResult run_multisne(const MultiViewDataset& ds, const SneConfig& cfg,
                       const WeightSpec& weights) {
  ds.validate();
  cfg.validate(ds.n_samples());
  const auto p = view_affinities(ds, cfg.perplexity);
  SneResult r = optimize(p, weights, cfg);
  r.embedding.method = "multisne";
  return r;
}

SneResult run_multisne(const MultiViewDataset& ds, const SneConfig& cfg) {
  return run_multisne(ds, cfg, ViewWeights::uniform(ds.n_views()));
}

SneResult run_msne(const MultiViewDataset& ds, const SneConfig& cfg, const ViewWeights& beta) {
  ds.validate();
  cfg.validate(ds.n_samples());
  require(beta.size() == ds.n_views(), ErrorKind::kConfig,
          "m-SNE needs one weight per view");
  const auto p = view_affinities(ds, cfg.perplexity);
  AffinityMatrix combined;
  combined.perplexity = cfg.perplexity;
  combined.values = beta[0] * p[0].values;
  for (std::size_t m = 1; m < p.size(); ++m) combined.values += beta[m] * p[m].values;
  SneResult r = optimize(std::span<const AffinityMatrix>(&combined, 1),
                         ViewWeights::uniform(1), cfg);
  r.final_weights = beta;
  r.embedding.method = "msne";
  r.embedding.config["weights"] = beta.to_string();
  r.embedding.config.erase("final_weights");
  return r;
}

SneResult run_msne(const MultiViewDataset& ds, const SneConfig& cfg) {
  return run_msne(ds, cfg, ViewWeights::uniform(ds.n_views()));
}

SneResult run_tsne(const Eigen::MatrixXd& view, const SneConfig& cfg) {
  require(view.rows() >= 3, ErrorKind::kConfig, "t-SNE needs at least 3 samples");
  cfg.validate(view.rows());
  const AffinityMatrix p = joint_affinities(view, cfg.perplexity);
  SneResult r = optimize(std::span<const AffinityMatrix>(&p, 1), ViewWeights::uniform(1), cfg);
  r.embedding.method = "tsne";
  return r;
}

SneResult run_tsne_concat(const MultiViewDataset& ds, const SneConfig& cfg) {
  ds.validate();
  SneResult r = run_tsne(ds.concatenated(), cfg);
  r.embedding.method = "tsne-concat";
  return r;
}

}  // namespace mvm::sne
