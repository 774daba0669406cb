// core/include/mvmanifold/harness.hpp

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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mvmanifold/cluster.hpp"
#include "mvmanifold/dataset.hpp"
#include "mvmanifold/embedding.hpp"
#include "mvmanifold/pretrain.hpp"

namespace mvm::harness {

enum class Family { kSne, kLle, kIsomap };
enum class Variant {
  kSingle,   // one view
  kConcat,   // views concatenated column-wise
  kAverage,  // m-*: per-view embeddings (or affinities) averaged
  kMulti,    // multi-*
};

struct MethodInfo {
  std::string_view id;       // CLI identifier, e.g. "multisne"
  std::string_view display;  // e.g. "multi-SNE"
  Family family;
  Variant variant;
};

/// Every method, grouped by family in the order single, concat, m-*, multi-*.
std::span<const MethodInfo> method_table();
/// Throws kConfig for unknown ids.
const MethodInfo& method_info(std::string_view id);
/// "perplexity" for SNE methods, "nn" otherwise.
std::string_view parameter_name(Family f);

enum class WeightKind { kUniform, kAuto, kFixed };

struct WeightChoice {
  WeightKind kind = WeightKind::kUniform;
  std::vector<double> fixed;  // kFixed only

  /// "uniform", "auto" or "csv:<path>" (one weight per line or per cell).
  static WeightChoice parse(std::string_view s);
  std::string to_string() const;
};

struct MethodConfig {
  std::string method = "multisne";
  double param = 30.0;  // perplexity for SNE, neighbour count otherwise
  /// Unset: PCA keeping 80% variance for SNE methods, none for the others.
  std::optional<pretrain::PretrainConfig> pretrain;
  WeightChoice weights;
  int output_dim = 2;
  int n_iter = 1000;
  double cost_tolerance = 0.0;
  std::size_t view = 0;  // single-view methods
  bool literal_eigen = false;
  std::uint64_t seed = 0;
};

struct MethodOutput {
  Embedding embedding;
  std::vector<double> cost;                         // SNE only
  std::vector<std::vector<double>> weight_history;  // automatic weights only
};

/// Applies view selection / concatenation and pre-training; the result is
/// what the embedding algorithm consumes.
MultiViewDataset prepare_input(const MultiViewDataset& ds, const MethodConfig& cfg);
/// Runs the method on input already passed through prepare_input.
MethodOutput run_prepared(const MultiViewDataset& input, const MethodConfig& cfg);
MethodOutput run_method(const MultiViewDataset& ds, const MethodConfig& cfg);

enum class ClusterAlgo { kKMeans, kDbscan };

struct ClusterSpec {
  ClusterAlgo algo = ClusterAlgo::kKMeans;
  int k = 0;  // 0: number of distinct labels
  int restarts = 10;
  std::optional<double> eps;  // DBSCAN; estimated from the k-distance elbow when unset
  int min_pts = 5;
};

/// Clusters the embedding and scores it against the labels of the embedded
/// samples.
cluster::Scores cluster_and_score(const Embedding& e, std::span<const int> labels,
                                  const ClusterSpec& spec, std::uint64_t seed,
                                  std::vector<int>* assignment = nullptr);

enum class Metric { kAcc, kNmi, kRi, kAri, kSilhouette };
std::optional<Metric> parse_metric(std::string_view s);
double metric_value(const cluster::Scores& s, Metric m);

/// {2, 10, 20, 50, 80, 100, 200}
std::vector<double> default_grid();
/// Grid values admissible for N samples (strictly below N).
std::vector<double> usable_grid(std::span<const double> grid, Eigen::Index n_samples);

struct SweepSpec {
  MethodConfig method;  // `param` is replaced by each grid value
  std::vector<double> grid = default_grid();
  int repeats = 10;
  ClusterSpec cluster;
  Metric select = Metric::kNmi;
  std::uint64_t seed = 0;
  int workers = 1;  // 0: one per hardware thread
};

struct SweepRow {
  std::string method;
  double param = 0.0;
  int repeat = 0;
  bool ok = false;
  std::string error;
  cluster::Scores scores;
  Eigen::Index n_embedded = 0;
  double wall_seconds = 0.0;
};

struct SweepSummary {
  double param = 0.0;
  int n_ok = 0;
  cluster::Scores mean;
  cluster::Scores sd;
};

struct SweepReport {
  std::vector<SweepRow> rows;            // grid order, then repeat order
  std::vector<SweepSummary> summaries;   // one per grid value
  std::optional<double> optimum;         // grid value with the best mean metric
  Metric select = Metric::kNmi;

  const SweepSummary* best() const;
};

/// Embed, cluster and evaluate for every grid value and repeat. Stochastic
/// methods re-embed per repeat; deterministic ones embed once per grid value
/// and repeat only the clustering. Per-cell failures become failed rows.
SweepReport run_sweep(const MultiViewDataset& ds, const SweepSpec& spec);

struct AblationRow {
  std::vector<std::size_t> views;  // 0-based
  SweepReport report;
};

/// Runs the sweep on every non-empty subset of views (singletons first, then
/// by size, lexicographic within a size).
std::vector<AblationRow> view_ablation(const MultiViewDataset& ds, const SweepSpec& spec);

void write_sweep_csv(const std::filesystem::path& path, const SweepReport& report);
/// One line per grid value: mean and sd of every metric, optimum flagged.
void write_summary_csv(const std::filesystem::path& path, const SweepReport& report);
void write_ablation_csv(const std::filesystem::path& path, std::span<const AblationRow> rows);
void write_weights_csv(const std::filesystem::path& path,
                       const std::vector<std::vector<double>>& history);

/// CSV of coordinates with the sample's label appended when available.
void emit_embedding(const Embedding& e, const std::optional<std::vector<int>>& labels,
                    const std::filesystem::path& path);
/// SVG scatter of the first two coordinates, one colour per label. Returns
/// warnings (e.g. when d > 2).
std::vector<std::string> emit_scatter(const Embedding& e,
                                      const std::optional<std::vector<int>>& labels,
                                      const std::filesystem::path& path,
                                      std::string_view title = {});

/// Labels of the embedded rows (all labels when the embedding covers every sample).
std::vector<int> embedded_labels(const Embedding& e, std::span<const int> labels);

}  // namespace mvm::harness
