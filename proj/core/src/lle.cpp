// core/src/lle.cpp

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

#include "mvmanifold/lle.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>
#include <vector>

#include "mvmanifold/error.hpp"
#include "mvmanifold/linalg.hpp"

namespace mvm::lle {

namespace {

constexpr double kMinRcond = 1e-12;

// Weights for one row. Returns true if the ridge was needed.
bool solve_row(const Eigen::MatrixXd& x, Eigen::Index i, const std::vector<Eigen::Index>& nb,
               double reg, Eigen::VectorXd& w) {
  const Eigen::Index k = static_cast<Eigen::Index>(nb.size());
  Eigen::MatrixXd z(k, x.cols());
  for (Eigen::Index a = 0; a < k; ++a) z.row(a) = x.row(nb[static_cast<std::size_t>(a)]) - x.row(i);
  Eigen::MatrixXd g = z * z.transpose();
  const double trace = g.trace();
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(k);

  if (trace <= 0.0) {
    // Every neighbor coincides with x_i; any affine combination is exact.
    w = ones / static_cast<double>(k);
    return false;
  }

  bool ridged = false;
  auto add_ridge = [&]() {
    g.diagonal().array() += reg * trace / static_cast<double>(k);
    ridged = true;
  };
  if (k > x.cols()) add_ridge();

  // LDLT::rcond() does not see zero pivots, so judge conditioning by the
  // spread of the pivots themselves.
  Eigen::LDLT<Eigen::MatrixXd> ldlt(g);
  const Eigen::VectorXd pivots = ldlt.vectorD().cwiseAbs();
  if (!ridged && (ldlt.info() != Eigen::Success ||
                  pivots.minCoeff() <= kMinRcond * pivots.maxCoeff())) {
    add_ridge();
    ldlt.compute(g);
  }
  w = ldlt.solve(ones);
  w /= w.sum();
  return ridged;
}

}  // namespace

ReconstructionWeights reconstruction_weights(const Eigen::MatrixXd& x,
                                             const NeighborSets& neighbors,
                                             double regularization) {
  const Eigen::Index n = x.rows();
  require(static_cast<Eigen::Index>(neighbors.size()) == n, ErrorKind::kConfig,
          "one neighbour set per sample required");
  require(regularization > 0.0, ErrorKind::kConfig, "regularization must be positive");

  ReconstructionWeights out;
  out.k = neighbors.empty() ? 0 : static_cast<int>(neighbors.front().size());
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(out.k));
  Eigen::VectorXd w;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& nb = neighbors[static_cast<std::size_t>(i)];
    require(!nb.empty(), ErrorKind::kConfig, "empty neighbour set");
    for (Eigen::Index j : nb)
      require(j != i && j >= 0 && j < n, ErrorKind::kConfig, "invalid neighbour index");
    if (solve_row(x, i, nb, regularization, w)) ++out.n_regularized;
    for (std::size_t a = 0; a < nb.size(); ++a)
      trips.emplace_back(i, nb[a], w(static_cast<Eigen::Index>(a)));
  }
  out.w.resize(n, n);
  out.w.setFromTriplets(trips.begin(), trips.end());
  return out;
}

ReconstructionWeights reconstruction_weights(const Eigen::MatrixXd& x, int k,
                                             double regularization) {
  return reconstruction_weights(x, knn(x, k), regularization);
}

double reconstruction_error(const Eigen::MatrixXd& x, const SparseRowMatrix& w) {
  return (x - w * x).squaredNorm();
}

SparseRowMatrix consensus(std::span<const SparseRowMatrix> w, const ViewWeights& alpha) {
  require(!w.empty() && w.size() == alpha.size(), ErrorKind::kConfig,
          "one weight per view matrix required");
  SparseRowMatrix out = alpha[0] * w[0];
  for (std::size_t m = 1; m < w.size(); ++m) {
    require(w[m].rows() == out.rows(), ErrorKind::kAlignment, "weight matrices differ in size");
    out += alpha[m] * w[m];
  }
  out.prune(0.0);
  return out;
}

SpectralEmbedding embed_from_weights(const SparseRowMatrix& w, int d) {
  const Eigen::Index n = w.rows();
  require(w.cols() == n, ErrorKind::kConfig, "weight matrix must be square");
  require(d >= 1 && d < n, ErrorKind::kConfig, "embedding dimension must be in [1, N)");

  SparseRowMatrix iw(n, n);
  iw.setIdentity();
  iw -= w;
  const Eigen::SparseMatrix<double> ms = Eigen::SparseMatrix<double>(iw.transpose()) * iw;
  const Eigen::MatrixXd m = Eigen::MatrixXd(ms);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success)
    throw Error(ErrorKind::kNumerical, "LLE eigensolver failed to converge");

  const Eigen::VectorXd& ev = es.eigenvalues();
  Eigen::Index first = 0;
  while (first < n && ev(first) < kNullEigenvalue) ++first;
  if (first + d > n)
    throw Error(ErrorKind::kNumerical,
                "LLE: only " + std::to_string(n - first) + " non-null eigenvalues for d=" +
                    std::to_string(d));

  SpectralEmbedding out;
  out.n_discarded = static_cast<int>(first);
  out.eigenvalues = ev.segment(first, d);
  Eigen::MatrixXd y = es.eigenvectors().middleCols(first, d);
  for (Eigen::Index c = 0; c < d; ++c) {
    const double res = (m * y.col(c) - ev(first + c) * y.col(c)).norm();
    if (!(res < 1e-6))
      throw Error(ErrorKind::kNumerical,
                  "LLE eigenpair residual " + std::to_string(res) + " too large");
  }
  canonicalize_signs(y);
  out.embedding.coords = std::move(y);
  if (first > 1)
    out.embedding.warnings.push_back("weight graph has " + std::to_string(first) +
                                     " null modes (disconnected neighbourhoods)");
  return out;
}

namespace {

Embedding finish(Embedding e, std::string method, const LleConfig& cfg) {
  e.method = std::move(method);
  e.config["n_neighbors"] = std::to_string(cfg.n_neighbors);
  e.config["output_dim"] = std::to_string(cfg.output_dim);
  return e;
}

std::vector<SparseRowMatrix> view_weights(const MultiViewDataset& ds, const LleConfig& cfg) {
  std::vector<SparseRowMatrix> w;
  for (const auto& v : ds.views)
    w.push_back(reconstruction_weights(v, cfg.n_neighbors, cfg.regularization).w);
  return w;
}

}  // namespace

Embedding run_lle(const Eigen::MatrixXd& x, const LleConfig& cfg) {
  const auto rw = reconstruction_weights(x, cfg.n_neighbors, cfg.regularization);
  return finish(embed_from_weights(rw.w, cfg.output_dim).embedding, "lle", cfg);
}

Embedding run_lle_concat(const MultiViewDataset& ds, const LleConfig& cfg) {
  ds.validate();
  return finish(run_lle(ds.concatenated(), cfg), "lle-concat", cfg);
}

Embedding run_multille(const MultiViewDataset& ds, const LleConfig& cfg,
                       const ViewWeights& alpha) {
  ds.validate();
  require(alpha.size() == ds.n_views(), ErrorKind::kConfig,
          "multi-LLE needs one weight per view");
  const auto w = view_weights(ds, cfg);
  Embedding e = embed_from_weights(consensus(w, alpha), cfg.output_dim).embedding;
  e.config["weights"] = alpha.to_string();
  return finish(std::move(e), "multille", cfg);
}

Embedding run_multille(const MultiViewDataset& ds, const LleConfig& cfg) {
  return run_multille(ds, cfg, ViewWeights::uniform(ds.n_views()));
}

Embedding run_mlle(const MultiViewDataset& ds, const LleConfig& cfg, const ViewWeights& beta) {
  ds.validate();
  require(beta.size() == ds.n_views(), ErrorKind::kConfig, "m-LLE needs one weight per view");
  Embedding out;
  Eigen::MatrixXd reference;
  for (std::size_t m = 0; m < ds.n_views(); ++m) {
    Embedding em = run_lle(ds.views[m], cfg);
    for (auto& msg : em.warnings) out.warnings.push_back("view " + std::to_string(m + 1) + ": " + msg);
    if (m == 0) {
      reference = em.coords;
      out.coords = beta[0] * reference;
    } else {
      out.coords += beta[m] * procrustes_align(em.coords, reference);
    }
  }
  out.config["weights"] = beta.to_string();
  return finish(std::move(out), "mlle", cfg);
}

Embedding run_mlle(const MultiViewDataset& ds, const LleConfig& cfg) {
  return run_mlle(ds, cfg, ViewWeights::uniform(ds.n_views()));
}

}  // namespace mvm::lle
