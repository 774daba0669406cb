// core/src/pretrain.cpp

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

#include "mvmanifold/pretrain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mvmanifold/error.hpp"
#include "mvmanifold/linalg.hpp"

namespace mvm::pretrain {

std::optional<Mode> parse_mode(std::string_view s) {
  if (s == "none") return Mode::kNone;
  if (s == "pca") return Mode::kPCA;
  if (s == "multicca") return Mode::kMultiCCA;
  return std::nullopt;
}

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::kNone: return "none";
    case Mode::kPCA: return "pca";
    case Mode::kMultiCCA: return "multicca";
  }
  return "?";
}

PcaResult pca(const Eigen::MatrixXd& view, const PretrainConfig& cfg) {
  require(view.rows() >= 2 && view.cols() >= 1, ErrorKind::kConfig,
          "PCA needs at least 2 rows and 1 column");
  require(cfg.variance_threshold > 0.0 && cfg.variance_threshold <= 1.0,
          ErrorKind::kConfig, "variance threshold must be in (0, 1]");

  PcaResult out;
  out.mean = view.colwise().mean();
  const Eigen::MatrixXd centered = view.rowwise() - out.mean;
  const double total = centered.squaredNorm();
  require(total > 0.0, ErrorKind::kDegenerateInput,
          "PCA input has zero variance (all rows identical)");

  Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd sv = svd.singularValues();
  Eigen::VectorXd var = sv.array().square();
  out.explained_ratio = var / var.sum();

  Eigen::Index q = 0;
  if (cfg.n_components) {
    q = *cfg.n_components;
    require(q >= 1 && q <= sv.size(), ErrorKind::kConfig,
            "PCA component count " + std::to_string(q) + " out of range [1, " +
                std::to_string(sv.size()) + "]");
  } else {
    // Slack so that e.g. a 0.8 threshold is met by ratios summing to 0.8.
    constexpr double kSlack = 1e-12;
    double cum = 0.0;
    while (q < sv.size()) {
      cum += out.explained_ratio(q++);
      if (cum >= cfg.variance_threshold - kSlack) break;
    }
  }

  out.components = svd.matrixV().leftCols(q);
  Eigen::MatrixXd u = svd.matrixU().leftCols(q);
  for (Eigen::Index c = 0; c < q; ++c) {
    Eigen::Index arg = 0;
    out.components.col(c).cwiseAbs().maxCoeff(&arg);
    if (out.components(arg, c) < 0.0) {
      out.components.col(c) *= -1.0;
      u.col(c) *= -1.0;
    }
  }
  out.scores = u * sv.head(q).asDiagonal();
  return out;
}

Eigen::MatrixXd pca_reduce(const Eigen::MatrixXd& view, const PretrainConfig& cfg) {
  return pca(view, cfg).scores;
}

namespace {

Eigen::MatrixXd standardize(const Eigen::MatrixXd& x) {
  Eigen::MatrixXd c = center_columns(x);
  const double denom = static_cast<double>(std::max<Eigen::Index>(x.rows() - 1, 1));
  for (Eigen::Index j = 0; j < c.cols(); ++j) {
    const double sd = std::sqrt(c.col(j).squaredNorm() / denom);
    if (sd > 0.0) c.col(j) /= sd;
  }
  return c;
}

double correlation(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::VectorXd ac = a.array() - a.mean();
  const Eigen::VectorXd bc = b.array() - b.mean();
  const double den = ac.norm() * bc.norm();
  return den > 0.0 ? ac.dot(bc) / den : 0.0;
}

}  // namespace

MultiCcaResult multicca(const MultiViewDataset& ds, const MultiCcaOptions& opts) {
  ds.validate();
  const std::size_t m_views = ds.n_views();
  require(m_views >= 2, ErrorKind::kConfig, "multi-CCA needs at least two views");
  const Eigen::Index n = ds.n_samples();

  Eigen::Index min_p = ds.views.front().cols();
  for (const auto& v : ds.views) min_p = std::min(min_p, v.cols());
  const Eigen::Index k_comp = opts.n_components.value_or(static_cast<int>(min_p));
  require(k_comp >= 1, ErrorKind::kConfig, "multi-CCA needs K >= 1 components");
  require(k_comp <= std::min(min_p, n), ErrorKind::kConfig,
          "multi-CCA K=" + std::to_string(k_comp) + " exceeds min(N, p_m)");

  std::vector<Eigen::MatrixXd> x;
  for (const auto& v : ds.views) x.push_back(standardize(v));

  // Cross products X_i' X_j for i != j.
  std::vector<std::vector<Eigen::MatrixXd>> cross(m_views, std::vector<Eigen::MatrixXd>(m_views));
  for (std::size_t i = 0; i < m_views; ++i)
    for (std::size_t j = 0; j < m_views; ++j)
      if (i != j) cross[i][j] = x[i].transpose() * x[j];

  // Initial directions: leading right singular vectors of each view.
  std::vector<Eigen::MatrixXd> init;
  for (const auto& xi : x) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(xi, Eigen::ComputeThinV);
    init.push_back(svd.matrixV().leftCols(k_comp));
  }

  MultiCcaResult out;
  std::vector<Eigen::MatrixXd> final_w;
  for (std::size_t i = 0; i < m_views; ++i)
    final_w.push_back(Eigen::MatrixXd::Zero(x[i].cols(), k_comp));

  // Deflated copies; the deflation scale uses the original cross products.
  auto deflated = cross;
  auto deflated_product = [&](std::size_t i, std::size_t j, const Eigen::VectorXd& wj) {
    return Eigen::VectorXd(deflated[i][j] * wj);
  };

  for (Eigen::Index comp = 0; comp < k_comp; ++comp) {
    std::vector<Eigen::VectorXd> w;
    for (std::size_t i = 0; i < m_views; ++i) w.push_back(init[i].col(comp));

    auto criterion = [&]() {
      double c = 0.0;
      for (std::size_t i = 0; i < m_views; ++i)
        for (std::size_t j = i + 1; j < m_views; ++j)
          c += w[i].dot(deflated_product(i, j, w[j]));
      return c;
    };

    double crit = criterion();
    int iter = 0;
    while (iter < opts.max_iter) {
      ++iter;
      for (std::size_t i = 0; i < m_views; ++i) {
        Eigen::VectorXd tots = Eigen::VectorXd::Zero(x[i].cols());
        for (std::size_t j = 0; j < m_views; ++j)
          if (j != i) tots += deflated_product(i, j, w[j]);
        const double nrm = tots.norm();
        if (nrm > 0.0) w[i] = tots / nrm;
      }
      const double next = criterion();
      const bool converged =
          crit == 0.0 ? next == 0.0 : std::abs(next - crit) / std::abs(crit) < opts.tolerance;
      crit = next;
      if (converged) break;
    }

    // One sign per component across views keeps pairwise correlations
    // positive; the first view's largest loading decides it.
    Eigen::Index arg = 0;
    w[0].cwiseAbs().maxCoeff(&arg);
    if (w[0](arg) < 0.0)
      for (auto& wi : w) wi = -wi;

    for (std::size_t i = 0; i < m_views; ++i) final_w[i].col(comp) = w[i];
    out.iterations.push_back(iter);

    for (std::size_t i = 0; i < m_views; ++i)
      for (std::size_t j = 0; j < m_views; ++j)
        if (i != j) {
          const double d = w[i].dot(cross[i][j] * w[j]);
          deflated[i][j].noalias() -= d * w[i] * w[j].transpose();
        }
  }

  out.reduced.labels = ds.labels;
  out.reduced.names = ds.names;
  out.mean_correlation = Eigen::VectorXd::Zero(k_comp);
  for (std::size_t i = 0; i < m_views; ++i) {
    Eigen::MatrixXd z = x[i] * final_w[i];
    const double denom = static_cast<double>(std::max<Eigen::Index>(n - 1, 1));
    for (Eigen::Index c = 0; c < k_comp; ++c) {
      z.col(c).array() -= z.col(c).mean();
      const double sd = std::sqrt(z.col(c).squaredNorm() / denom);
      if (sd > 0.0) z.col(c) /= sd;
    }
    out.reduced.views.push_back(std::move(z));
  }
  const double pairs = static_cast<double>(m_views * (m_views - 1) / 2);
  for (Eigen::Index c = 0; c < k_comp; ++c) {
    double s = 0.0;
    for (std::size_t i = 0; i < m_views; ++i)
      for (std::size_t j = i + 1; j < m_views; ++j)
        s += correlation(out.reduced.views[i].col(c), out.reduced.views[j].col(c));
    out.mean_correlation(c) = s / pairs;
  }
  out.weights = std::move(final_w);
  return out;
}

MultiViewDataset multicca_reduce(const MultiViewDataset& ds, const MultiCcaOptions& opts) {
  return multicca(ds, opts).reduced;
}

MultiViewDataset apply(const MultiViewDataset& ds, const PretrainConfig& cfg) {
  switch (cfg.mode) {
    case Mode::kNone:
      return ds;
    case Mode::kPCA: {
      MultiViewDataset out;
      out.labels = ds.labels;
      out.names = ds.names;
      for (const auto& v : ds.views) out.views.push_back(pca_reduce(v, cfg));
      return out;
    }
    case Mode::kMultiCCA: {
      MultiCcaOptions opts;
      opts.n_components = cfg.n_components;
      return multicca_reduce(ds, opts);
    }
  }
  return ds;
}

}  // namespace mvm::pretrain
