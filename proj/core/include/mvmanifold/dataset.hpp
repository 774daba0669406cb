// core/include/mvmanifold/dataset.hpp

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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mvmanifold/csv.hpp"

namespace mvm {

/// M aligned feature matrices over the same N samples.
struct MultiViewDataset {
  std::vector<Eigen::MatrixXd> views;
  std::optional<std::vector<int>> labels;
  std::vector<std::string> names;

  Eigen::Index n_samples() const { return views.empty() ? 0 : views.front().rows(); }
  std::size_t n_views() const { return views.size(); }
  bool has_labels() const { return labels.has_value(); }

  /// Throws kAlignment when a view or the labels disagree on N, kConfig on
  /// the other invariant violations (N >= 2, M >= 1, p_m >= 1).
  void validate() const;

  /// Row subset in the given order, applied identically to every view and
  /// the labels.
  MultiViewDataset select_rows(std::span<const Eigen::Index> rows) const;
  MultiViewDataset select_views(std::span<const std::size_t> views) const;
  /// All views side by side, N x sum(p_m).
  Eigen::MatrixXd concatenated() const;
  /// Sorted distinct label values; requires labels.
  std::vector<int> classes() const;
};

/// Reads one CSV per view (in the given order) plus an optional label file.
MultiViewDataset load_multiview(std::span<const std::filesystem::path> view_paths,
                                const std::optional<std::filesystem::path>& label_path,
                                const csv::ReadOptions& opts = {});

/// Loads `view*.csv` (sorted by name) and `labels.csv` if present from `dir`.
MultiViewDataset load_multiview_dir(const std::filesystem::path& dir,
                                    const csv::ReadOptions& opts = {});

/// Writes view1.csv..viewM.csv and labels.csv (when labelled) into `dir`.
void save_multiview(const MultiViewDataset& ds, const std::filesystem::path& dir);

// ---------------------------------------------------------------------------
// Synthetic scenarios

enum class ScenarioKind { kMMDS, kNDS, kMCS, kNDSExtraNoise };

struct SyntheticScenario {
  ScenarioKind kind = ScenarioKind::kMMDS;
  std::uint64_t seed = 0;
  int n_samples = 300;
  int n_clusters = 3;
  int dims_per_view = 300;
  int extra_noise_views = 0;  // only for kNDSExtraNoise
  double separation = 5.0;    // mean offset on the designated block

  static SyntheticScenario mmds(std::uint64_t seed);
  static SyntheticScenario nds(std::uint64_t seed);
  static SyntheticScenario mcs(std::uint64_t seed);
  static SyntheticScenario nds_extra_noise(int extra_views, std::uint64_t seed);
  /// "MMDS", "NDS", "MCS" or "NDS+<c>" (case-insensitive).
  static std::optional<SyntheticScenario> parse(std::string_view name,
                                                std::uint64_t seed);

  int n_views() const;
  std::string name() const;
};

/// Which clusters each view pushes away from the rest: pattern[m][c] is true
/// when cluster c is offset in view m. A view with no true entry is noise.
std::vector<std::vector<bool>> separation_pattern(const SyntheticScenario& s);

/// Per-view elementwise polynomial, coefficients lowest degree first.
struct Polynomial {
  std::vector<double> coeffs;
  double operator()(double x) const;
};

struct SyntheticDataset {
  MultiViewDataset data;
  std::vector<Polynomial> polynomials;
  std::vector<Eigen::MatrixXd> cluster_means;  // per view, k x p_m
};

SyntheticDataset generate_synthetic_detailed(const SyntheticScenario& scenario);
MultiViewDataset generate_synthetic(const SyntheticScenario& scenario);

/// Samples `per_cluster[c]` rows of each listed cluster without replacement;
/// clusters not listed keep all their rows. Row order follows the original.
MultiViewDataset balance_subset(const MultiViewDataset& ds,
                                const std::map<int, int>& per_cluster,
                                std::uint64_t seed);

}  // namespace mvm
