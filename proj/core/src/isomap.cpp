// core/src/isomap.cpp

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

#include "mvmanifold/isomap.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "mvmanifold/error.hpp"
#include "mvmanifold/linalg.hpp"
#include "mvmanifold/neighbors.hpp"

namespace mvm::isomap {

NeighborGraph::NeighborGraph(Eigen::Index n_vertices)
    : adj_(static_cast<std::size_t>(n_vertices)) {
  require(n_vertices >= 0, ErrorKind::kConfig, "negative vertex count");
}

std::size_t NeighborGraph::n_edges() const {
  std::size_t twice = 0;
  for (const auto& a : adj_) twice += a.size();
  return twice / 2;
}

namespace {

void upsert(std::vector<NeighborGraph::Edge>& list, Eigen::Index j, double length) {
  auto it = std::lower_bound(list.begin(), list.end(), j,
                             [](const NeighborGraph::Edge& e, Eigen::Index v) { return e.first < v; });
  if (it != list.end() && it->first == j)
    it->second = length;
  else
    list.insert(it, {j, length});
}

const NeighborGraph::Edge* find_edge(std::span<const NeighborGraph::Edge> list, Eigen::Index j) {
  auto it = std::lower_bound(list.begin(), list.end(), j,
                             [](const NeighborGraph::Edge& e, Eigen::Index v) { return e.first < v; });
  return it != list.end() && it->first == j ? &*it : nullptr;
}

}  // namespace

void NeighborGraph::set_edge(Eigen::Index i, Eigen::Index j, double length) {
  require(i >= 0 && j >= 0 && i < n_vertices() && j < n_vertices(), ErrorKind::kConfig,
          "edge endpoint out of range");
  require(i != j, ErrorKind::kConfig, "self loops are not allowed");
  require(length >= 0.0 && std::isfinite(length), ErrorKind::kConfig,
          "edge length must be finite and nonnegative");
  upsert(adj_[static_cast<std::size_t>(i)], j, length);
  upsert(adj_[static_cast<std::size_t>(j)], i, length);
}

bool NeighborGraph::has_edge(Eigen::Index i, Eigen::Index j) const {
  return find_edge(neighbors(i), j) != nullptr;
}

double NeighborGraph::edge_length(Eigen::Index i, Eigen::Index j) const {
  const Edge* e = find_edge(neighbors(i), j);
  require(e != nullptr, ErrorKind::kConfig,
          "no edge between " + std::to_string(i) + " and " + std::to_string(j));
  return e->second;
}

std::vector<int> NeighborGraph::component_labels() const {
  std::vector<int> label(adj_.size(), -1);
  int next = 0;
  std::vector<Eigen::Index> stack;
  for (std::size_t s = 0; s < adj_.size(); ++s) {
    if (label[s] >= 0) continue;
    label[s] = next;
    stack.assign(1, static_cast<Eigen::Index>(s));
    while (!stack.empty()) {
      const Eigen::Index v = stack.back();
      stack.pop_back();
      for (const auto& [u, len] : adj_[static_cast<std::size_t>(v)]) {
        if (label[static_cast<std::size_t>(u)] < 0) {
          label[static_cast<std::size_t>(u)] = next;
          stack.push_back(u);
        }
      }
    }
    ++next;
  }
  return label;
}

int NeighborGraph::n_components() const {
  const auto labels = component_labels();
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

std::vector<Eigen::Index> NeighborGraph::largest_component() const {
  const auto labels = component_labels();
  if (labels.empty()) return {};
  std::vector<int> sizes(static_cast<std::size_t>(
      *std::max_element(labels.begin(), labels.end()) + 1));
  for (int l : labels) ++sizes[static_cast<std::size_t>(l)];
  const int best = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  std::vector<Eigen::Index> out;
  for (std::size_t v = 0; v < labels.size(); ++v)
    if (labels[v] == best) out.push_back(static_cast<Eigen::Index>(v));
  return out;
}

NeighborGraph NeighborGraph::induced(std::span<const Eigen::Index> vertices) const {
  std::vector<Eigen::Index> map(adj_.size(), -1);
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    require(vertices[a] >= 0 && vertices[a] < n_vertices(), ErrorKind::kConfig,
            "vertex out of range");
    map[static_cast<std::size_t>(vertices[a])] = static_cast<Eigen::Index>(a);
  }
  NeighborGraph g(static_cast<Eigen::Index>(vertices.size()));
  for (std::size_t a = 0; a < vertices.size(); ++a)
    for (const auto& [u, len] : neighbors(vertices[a])) {
      const Eigen::Index b = map[static_cast<std::size_t>(u)];
      if (b >= 0) g.adj_[a].emplace_back(b, len);
    }
  for (auto& list : g.adj_) std::sort(list.begin(), list.end());
  return g;
}

NeighborGraph build_graph_from_squared(const Eigen::MatrixXd& sq, int k) {
  const NeighborSets nb = knn_from_squared(sq, k);
  NeighborGraph g(sq.rows());
  for (Eigen::Index i = 0; i < sq.rows(); ++i)
    for (Eigen::Index j : nb[static_cast<std::size_t>(i)]) g.set_edge(i, j, std::sqrt(sq(i, j)));
  return g;
}

NeighborGraph build_graph(const Eigen::MatrixXd& view, int k) {
  return build_graph_from_squared(squared_distances(view), k);
}

Eigen::MatrixXd shortest_paths(const NeighborGraph& g) {
  const Eigen::Index n = g.n_vertices();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd d = Eigen::MatrixXd::Constant(n, n, kInf);
  using Item = std::pair<double, Eigen::Index>;
  std::vector<double> dist(static_cast<std::size_t>(n));
  std::vector<Item> heap_storage;
  for (Eigen::Index s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kInf);
    dist[static_cast<std::size_t>(s)] = 0.0;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap(std::greater<>{},
                                                                      std::move(heap_storage));
    heap.emplace(0.0, s);
    while (!heap.empty()) {
      const auto [dv, v] = heap.top();
      heap.pop();
      if (dv > dist[static_cast<std::size_t>(v)]) continue;
      for (const auto& [u, len] : g.neighbors(v)) {
        const double cand = dv + len;
        if (cand < dist[static_cast<std::size_t>(u)]) {
          dist[static_cast<std::size_t>(u)] = cand;
          heap.emplace(cand, u);
        }
      }
    }
    for (Eigen::Index t = 0; t < n; ++t) d(t, s) = dist[static_cast<std::size_t>(t)];
    heap_storage.clear();
  }
  // Floating-point path sums may differ by direction; keep D exactly symmetric.
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double v = std::min(d(i, j), d(j, i));
      d(i, j) = v;
      d(j, i) = v;
    }
  return d;
}

ClassicalEmbedding classical_embed(const Eigen::MatrixXd& d, int dim, bool literal) {
  const Eigen::Index n = d.rows();
  require(d.cols() == n, ErrorKind::kConfig, "distance matrix must be square");
  require(dim >= 1 && dim <= n, ErrorKind::kConfig, "embedding dimension must be in [1, N]");
  require(d.allFinite(), ErrorKind::kNumerical,
          "distance matrix has non-finite entries (disconnected graph?)");

  Eigen::MatrixXd b;
  if (literal) {
    b = d;
  } else {
    const Eigen::MatrixXd d2 = d.array().square().matrix();
    const Eigen::VectorXd row_mean = d2.rowwise().mean();
    const Eigen::RowVectorXd col_mean = d2.colwise().mean();
    const double grand = d2.mean();
    b = -0.5 * ((d2.colwise() - row_mean).rowwise() - col_mean).array() - 0.5 * grand;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
  if (es.info() != Eigen::Success)
    throw Error(ErrorKind::kNumerical, "MDS eigensolver failed to converge");

  ClassicalEmbedding out;
  out.eigenvalues.resize(dim);
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n, dim);
  const Eigen::VectorXd& ev = es.eigenvalues();  // ascending
  const double scale = std::max(ev.cwiseAbs().maxCoeff(), 1.0);
  int positive = 0;
  for (int p = 0; p < dim; ++p) {
    const Eigen::Index idx = n - 1 - p;
    const double lambda = ev(idx);
    out.eigenvalues(p) = lambda;
    if (lambda > 1e-12 * scale) {
      y.col(p) = std::sqrt(lambda) * es.eigenvectors().col(idx);
      ++positive;
    }
  }
  canonicalize_signs(y);
  out.embedding.coords = std::move(y);
  if (positive < dim)
    out.embedding.warnings.push_back("only " + std::to_string(positive) +
                                     " positive eigenvalues; remaining coordinates set to 0");
  return out;
}

Embedding embed_graph(const NeighborGraph& g, const IsomapConfig& cfg) {
  Embedding e;
  if (g.n_components() <= 1) {
    e = classical_embed(shortest_paths(g), cfg.output_dim, cfg.literal_eigen).embedding;
  } else {
    const auto keep = g.largest_component();
    require(static_cast<Eigen::Index>(keep.size()) > cfg.output_dim, ErrorKind::kDegenerateInput,
            "largest connected component has only " + std::to_string(keep.size()) +
                " samples");
    e = classical_embed(shortest_paths(g.induced(keep)), cfg.output_dim, cfg.literal_eigen)
            .embedding;
    e.warnings.push_back("neighbourhood graph has " + std::to_string(g.n_components()) +
                         " components; embedded the largest (" + std::to_string(keep.size()) +
                         " of " + std::to_string(g.n_vertices()) + " samples)");
    e.samples = keep;
  }
  e.config["n_neighbors"] = std::to_string(cfg.n_neighbors);
  e.config["output_dim"] = std::to_string(cfg.output_dim);
  e.config["eigen"] = cfg.literal_eigen ? "literal" : "double-centered";
  return e;
}

Embedding run_isomap(const Eigen::MatrixXd& x, const IsomapConfig& cfg) {
  Embedding e = embed_graph(build_graph(x, cfg.n_neighbors), cfg);
  e.method = "isomap";
  return e;
}

Embedding run_isomap_concat(const MultiViewDataset& ds, const IsomapConfig& cfg) {
  ds.validate();
  Embedding e = run_isomap(ds.concatenated(), cfg);
  e.method = "isomap-concat";
  return e;
}

namespace {

double median_knn_distance(const Eigen::MatrixXd& sq, const NeighborSets& nb) {
  std::vector<double> v;
  for (std::size_t i = 0; i < nb.size(); ++i)
    for (Eigen::Index j : nb[i]) v.push_back(std::sqrt(sq(static_cast<Eigen::Index>(i), j)));
  auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  double med = *mid;
  if (med <= 0.0) med = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  return med > 0.0 ? med : 1.0;
}

}  // namespace

NeighborGraph combined_graph(const MultiViewDataset& ds, int k, const ViewWeights& w) {
  ds.validate();
  require(w.size() == ds.n_views(), ErrorKind::kConfig,
          "multi-ISOMAP needs one weight per view");
  const Eigen::Index n = ds.n_samples();
  const std::size_t m_views = ds.n_views();

  std::vector<Eigen::MatrixXd> sq;
  std::vector<NeighborSets> nb;
  std::vector<double> factor;
  for (const auto& v : ds.views) {
    sq.push_back(squared_distances(v));
    nb.push_back(knn_from_squared(sq.back(), k));
    factor.push_back(median_knn_distance(sq.back(), nb.back()));
  }
  const double reference = factor.front();
  for (double& f : factor) f = reference / f;

  // Union edge set first; lengths are filled from every view afterwards.
  NeighborGraph g(n);
  for (std::size_t m = 0; m < m_views; ++m)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j : nb[m][static_cast<std::size_t>(i)]) g.set_edge(i, j, 0.0);

  for (Eigen::Index i = 0; i < n; ++i) {
    std::vector<std::pair<Eigen::Index, double>> updates;
    for (const auto& [j, unused] : g.neighbors(i)) {
      if (j < i) continue;
      double len = 0.0;
      for (std::size_t m = 0; m < m_views; ++m)
        len += w[m] * std::sqrt(sq[m](i, j)) * factor[m];
      updates.emplace_back(j, len);
    }
    for (const auto& [j, len] : updates) g.set_edge(i, j, len);
  }
  return g;
}

Embedding run_multiisomap(const MultiViewDataset& ds, const IsomapConfig& cfg,
                          const ViewWeights& w) {
  Embedding e = embed_graph(combined_graph(ds, cfg.n_neighbors, w), cfg);
  e.method = "multiisomap";
  e.config["weights"] = w.to_string();
  return e;
}

Embedding run_multiisomap(const MultiViewDataset& ds, const IsomapConfig& cfg) {
  return run_multiisomap(ds, cfg, ViewWeights::uniform(ds.n_views()));
}

Embedding run_misomap(const MultiViewDataset& ds, const IsomapConfig& cfg,
                      const ViewWeights& beta) {
  ds.validate();
  require(beta.size() == ds.n_views(), ErrorKind::kConfig,
          "m-ISOMAP needs one weight per view");
  const Eigen::Index n = ds.n_samples();

  std::vector<Embedding> per_view;
  for (const auto& v : ds.views) per_view.push_back(run_isomap(v, cfg));

  // Samples kept by every view, ascending.
  std::vector<char> kept(static_cast<std::size_t>(n), 1);
  bool partial = false;
  for (const auto& e : per_view) {
    if (e.samples.empty()) continue;
    partial = true;
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    for (Eigen::Index s : e.samples) in[static_cast<std::size_t>(s)] = 1;
    for (std::size_t s = 0; s < kept.size(); ++s) kept[s] = kept[s] && in[s];
  }
  std::vector<Eigen::Index> common;
  for (Eigen::Index s = 0; s < n; ++s)
    if (kept[static_cast<std::size_t>(s)]) common.push_back(s);
  require(static_cast<Eigen::Index>(common.size()) > cfg.output_dim,
          ErrorKind::kDegenerateInput, "views share too few connected samples");

  auto restrict_rows = [&](const Embedding& e) {
    if (e.samples.empty() && !partial) return e.coords;
    std::vector<Eigen::Index> pos(static_cast<std::size_t>(n), -1);
    if (e.samples.empty())
      std::iota(pos.begin(), pos.end(), Eigen::Index{0});
    else
      for (std::size_t r = 0; r < e.samples.size(); ++r)
        pos[static_cast<std::size_t>(e.samples[r])] = static_cast<Eigen::Index>(r);
    Eigen::MatrixXd out(static_cast<Eigen::Index>(common.size()), e.coords.cols());
    for (std::size_t r = 0; r < common.size(); ++r)
      out.row(static_cast<Eigen::Index>(r)) = e.coords.row(pos[static_cast<std::size_t>(common[r])]);
    return out;
  };

  Embedding out;
  const Eigen::MatrixXd reference = restrict_rows(per_view.front());
  out.coords = beta[0] * reference;
  for (std::size_t m = 1; m < per_view.size(); ++m)
    out.coords += beta[m] * procrustes_align(restrict_rows(per_view[m]), reference);
  for (std::size_t m = 0; m < per_view.size(); ++m)
    for (const auto& msg : per_view[m].warnings)
      out.warnings.push_back("view " + std::to_string(m + 1) + ": " + msg);
  if (partial) out.samples = common;
  out.method = "misomap";
  out.config = per_view.front().config;
  out.config["weights"] = beta.to_string();
  return out;
}

Embedding run_misomap(const MultiViewDataset& ds, const IsomapConfig& cfg) {
  return run_misomap(ds, cfg, ViewWeights::uniform(ds.n_views()));
}

}  // namespace mvm::isomap
