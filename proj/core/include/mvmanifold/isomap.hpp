// core/include/mvmanifold/isomap.hpp

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

#include <span>
#include <utility>
#include <vector>

#include "mvmanifold/dataset.hpp"
#include "mvmanifold/embedding.hpp"

namespace mvm::isomap {

/// Undirected weighted graph stored as sorted adjacency lists.
class NeighborGraph {
 public:
  using Edge = std::pair<Eigen::Index, double>;  // (neighbour, length)

  explicit NeighborGraph(Eigen::Index n_vertices = 0);

  Eigen::Index n_vertices() const { return static_cast<Eigen::Index>(adj_.size()); }
  std::size_t n_edges() const;
  /// Inserts or overwrites the undirected edge {i, j}. Self loops are rejected.
  void set_edge(Eigen::Index i, Eigen::Index j, double length);
  bool has_edge(Eigen::Index i, Eigen::Index j) const;
  /// Length of edge {i, j}; throws kConfig if absent.
  double edge_length(Eigen::Index i, Eigen::Index j) const;
  std::span<const Edge> neighbors(Eigen::Index i) const { return adj_[static_cast<std::size_t>(i)]; }

  /// Component id per vertex, numbered by lowest member index.
  std::vector<int> component_labels() const;
  int n_components() const;
  /// Vertices of the largest component (lowest id on ties), ascending.
  std::vector<Eigen::Index> largest_component() const;
  /// Graph on `vertices` only, relabelled 0..n-1 in the given order.
  NeighborGraph induced(std::span<const Eigen::Index> vertices) const;

 private:
  std::vector<std::vector<Edge>> adj_;
};

/// Symmetrized kNN graph with Euclidean edge lengths.
NeighborGraph build_graph(const Eigen::MatrixXd& view, int k);
NeighborGraph build_graph_from_squared(const Eigen::MatrixXd& sq_dist, int k);

/// All-pairs geodesic lengths via Dijkstra from every source; +inf marks
/// unreachable pairs.
Eigen::MatrixXd shortest_paths(const NeighborGraph& g);

struct ClassicalEmbedding {
  Embedding embedding;
  Eigen::VectorXd eigenvalues;  // top d, decreasing
};

/// Classical MDS: y_i,p = sqrt(lambda_p) u_p(i) over the top d eigenpairs of
/// B = -1/2 H D^2 H. With `literal`, D itself is decomposed instead.
/// Non-positive eigenvalues leave zero columns and a warning.
ClassicalEmbedding classical_embed(const Eigen::MatrixXd& d, int dim, bool literal = false);

struct IsomapConfig {
  int n_neighbors = 10;
  int output_dim = 2;
  bool literal_eigen = false;
};

/// Steps 2-3 on a prepared graph, restricted to its largest component.
Embedding embed_graph(const NeighborGraph& g, const IsomapConfig& cfg);

Embedding run_isomap(const Eigen::MatrixXd& x, const IsomapConfig& cfg);
Embedding run_isomap_concat(const MultiViewDataset& ds, const IsomapConfig& cfg);

/// Union of the per-view kNN edge sets; each edge length is the weighted
/// average of the per-view distances, each view divided by its median kNN
/// distance and the result expressed in view-1 units.
NeighborGraph combined_graph(const MultiViewDataset& ds, int k, const ViewWeights& w);
Embedding run_multiisomap(const MultiViewDataset& ds, const IsomapConfig& cfg,
                          const ViewWeights& w);
Embedding run_multiisomap(const MultiViewDataset& ds, const IsomapConfig& cfg);

/// m-ISOMAP: per-view embeddings aligned to view 1 by Procrustes, averaged
/// over the samples every view kept.
Embedding run_misomap(const MultiViewDataset& ds, const IsomapConfig& cfg,
                      const ViewWeights& beta);
Embedding run_misomap(const MultiViewDataset& ds, const IsomapConfig& cfg);

}  // namespace mvm::isomap
