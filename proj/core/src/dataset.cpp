// core/src/dataset.cpp

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

#include "mvmanifold/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <random>
#include <set>

#include "mvmanifold/error.hpp"

namespace mvm {

void MultiViewDataset::validate() const {
  require(!views.empty(), ErrorKind::kConfig, "dataset has no views");
  const Eigen::Index n = views.front().rows();
  for (std::size_t m = 0; m < views.size(); ++m) {
    require(views[m].rows() == n, ErrorKind::kAlignment,
            "view " + std::to_string(m + 1) + " has " +
                std::to_string(views[m].rows()) + " rows, expected " +
                std::to_string(n));
    require(views[m].cols() >= 1, ErrorKind::kConfig,
            "view " + std::to_string(m + 1) + " has no features");
  }
  require(n >= 2, ErrorKind::kConfig, "dataset needs at least 2 samples");
  if (labels) {
    require(static_cast<Eigen::Index>(labels->size()) == n, ErrorKind::kAlignment,
            "label count " + std::to_string(labels->size()) +
                " does not match sample count " + std::to_string(n));
  }
  require(names.empty() || names.size() == views.size(), ErrorKind::kConfig,
          "view name count does not match view count");
}

MultiViewDataset MultiViewDataset::select_rows(std::span<const Eigen::Index> rows) const {
  MultiViewDataset out;
  out.names = names;
  const auto n = static_cast<Eigen::Index>(rows.size());
  for (const auto& v : views) {
    Eigen::MatrixXd sub(n, v.cols());
    for (Eigen::Index i = 0; i < n; ++i) sub.row(i) = v.row(rows[i]);
    out.views.push_back(std::move(sub));
  }
  if (labels) {
    std::vector<int> sub;
    sub.reserve(rows.size());
    for (auto r : rows) sub.push_back((*labels)[static_cast<std::size_t>(r)]);
    out.labels = std::move(sub);
  }
  return out;
}

MultiViewDataset MultiViewDataset::select_views(std::span<const std::size_t> idx) const {
  MultiViewDataset out;
  out.labels = labels;
  for (auto m : idx) {
    require(m < views.size(), ErrorKind::kConfig, "view index out of range");
    out.views.push_back(views[m]);
    if (!names.empty()) out.names.push_back(names[m]);
  }
  return out;
}

Eigen::MatrixXd MultiViewDataset::concatenated() const {
  Eigen::Index cols = 0;
  for (const auto& v : views) cols += v.cols();
  Eigen::MatrixXd out(n_samples(), cols);
  Eigen::Index at = 0;
  for (const auto& v : views) {
    out.middleCols(at, v.cols()) = v;
    at += v.cols();
  }
  return out;
}

std::vector<int> MultiViewDataset::classes() const {
  require(labels.has_value(), ErrorKind::kConfig, "dataset has no labels");
  std::set<int> s(labels->begin(), labels->end());
  return {s.begin(), s.end()};
}

MultiViewDataset load_multiview(std::span<const std::filesystem::path> view_paths,
                                const std::optional<std::filesystem::path>& label_path,
                                const csv::ReadOptions& opts) {
  require(!view_paths.empty(), ErrorKind::kConfig, "no view files given");
  MultiViewDataset ds;
  for (const auto& p : view_paths) {
    ds.views.push_back(csv::read_matrix(p, opts));
    ds.names.push_back(p.stem().string());
  }
  if (label_path) {
    csv::ReadOptions lopts = opts;
    ds.labels = csv::read_labels(*label_path, lopts);
  }
  ds.validate();
  return ds;
}

MultiViewDataset load_multiview_dir(const std::filesystem::path& dir,
                                    const csv::ReadOptions& opts) {
  namespace fs = std::filesystem;
  require(fs::is_directory(dir), ErrorKind::kIo, dir.string() + " is not a directory");
  std::vector<fs::path> views;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (entry.is_regular_file() && name.rfind("view", 0) == 0 &&
        entry.path().extension() == ".csv")
      views.push_back(entry.path());
  }
  require(!views.empty(), ErrorKind::kIo, "no view*.csv files in " + dir.string());
  // Natural order so view10 sorts after view9.
  std::sort(views.begin(), views.end(), [](const fs::path& a, const fs::path& b) {
    auto sa = a.stem().string(), sb = b.stem().string();
    return sa.size() != sb.size() ? sa.size() < sb.size() : sa < sb;
  });
  std::optional<fs::path> labels;
  if (fs::exists(dir / "labels.csv")) labels = dir / "labels.csv";
  return load_multiview(views, labels, opts);
}

void save_multiview(const MultiViewDataset& ds, const std::filesystem::path& dir) {
  ds.validate();
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  require(!ec, ErrorKind::kIo, "cannot create " + dir.string());
  for (std::size_t m = 0; m < ds.views.size(); ++m)
    csv::write_matrix(dir / ("view" + std::to_string(m + 1) + ".csv"), ds.views[m]);
  if (ds.labels) csv::write_labels(dir / "labels.csv", *ds.labels);
}

// ---------------------------------------------------------------------------

SyntheticScenario SyntheticScenario::mmds(std::uint64_t seed) {
  return {ScenarioKind::kMMDS, seed, 300, 3, 300, 0, 5.0};
}
SyntheticScenario SyntheticScenario::nds(std::uint64_t seed) {
  return {ScenarioKind::kNDS, seed, 300, 3, 100, 0, 5.0};
}
SyntheticScenario SyntheticScenario::mcs(std::uint64_t seed) {
  return {ScenarioKind::kMCS, seed, 500, 5, 100, 0, 5.0};
}
SyntheticScenario SyntheticScenario::nds_extra_noise(int extra_views, std::uint64_t seed) {
  auto s = nds(seed);
  s.kind = ScenarioKind::kNDSExtraNoise;
  s.extra_noise_views = extra_views;
  return s;
}

std::optional<SyntheticScenario> SyntheticScenario::parse(std::string_view name,
                                                          std::uint64_t seed) {
  std::string up(name);
  for (auto& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (up == "MMDS") return mmds(seed);
  if (up == "NDS") return nds(seed);
  if (up == "MCS") return mcs(seed);
  if (up.rfind("NDS+", 0) == 0 && up.size() > 4) {
    int extra = 0;
    for (char c : up.substr(4)) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
      extra = extra * 10 + (c - '0');
    }
    return nds_extra_noise(extra, seed);
  }
  return std::nullopt;
}

int SyntheticScenario::n_views() const {
  switch (kind) {
    case ScenarioKind::kMMDS: return 3;
    case ScenarioKind::kNDS: return 4;
    case ScenarioKind::kMCS: return 3;
    case ScenarioKind::kNDSExtraNoise: return 4 + extra_noise_views;
  }
  return 0;
}

std::string SyntheticScenario::name() const {
  switch (kind) {
    case ScenarioKind::kMMDS: return "MMDS";
    case ScenarioKind::kNDS: return "NDS";
    case ScenarioKind::kMCS: return "MCS";
    case ScenarioKind::kNDSExtraNoise: return "NDS+" + std::to_string(extra_noise_views);
  }
  return "?";
}

std::vector<std::vector<bool>> separation_pattern(const SyntheticScenario& s) {
  // Clusters are A, B, C, ... in label order.
  switch (s.kind) {
    case ScenarioKind::kMMDS:
      // view 1 isolates C, view 2 isolates B, view 3 isolates A
      return {{false, false, true}, {false, true, false}, {true, false, false}};
    case ScenarioKind::kNDS:
    case ScenarioKind::kNDSExtraNoise: {
      std::vector<std::vector<bool>> p = {
          {false, false, true}, {false, true, false}, {true, false, false}};
      for (int m = 3; m < s.n_views(); ++m) p.emplace_back(3, false);
      return p;
    }
    case ScenarioKind::kMCS:
      // Five clusters coded over three views: A=100 B=010 C=001 D=110 E=011.
      // Every cluster pair differs in at least one view, while each view on
      // its own only splits the clusters into two groups.
      return {{true, false, false, true, false},
              {false, true, false, true, true},
              {false, false, true, false, true}};
  }
  return {};
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

SyntheticDataset generate_synthetic_detailed(const SyntheticScenario& s) {
  require(s.n_clusters >= 1 && s.n_samples >= 2 && s.dims_per_view >= 1,
          ErrorKind::kConfig, "invalid scenario dimensions");
  require(s.n_samples % s.n_clusters == 0, ErrorKind::kConfig,
          "n_samples must be divisible by n_clusters");
  require(s.extra_noise_views >= 0, ErrorKind::kConfig, "negative extra noise views");
  const auto pattern = separation_pattern(s);
  for (const auto& row : pattern)
    require(static_cast<int>(row.size()) == s.n_clusters, ErrorKind::kConfig,
            "scenario cluster count does not match its separation pattern");

  std::mt19937_64 rng(s.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<int> degree_dist(2, 4);
  std::uniform_int_distribution<int> coeff_dist(1, 5);

  const int n = s.n_samples;
  const int p = s.dims_per_view;
  const int per_cluster = n / s.n_clusters;
  const int block = (p + 2) / 3;

  SyntheticDataset out;
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = i / per_cluster;

  for (std::size_t m = 0; m < pattern.size(); ++m) {
    Polynomial h;
    const int degree = degree_dist(rng);
    for (int k = 0; k <= degree; ++k) h.coeffs.push_back(coeff_dist(rng));

    Eigen::MatrixXd means = Eigen::MatrixXd::Zero(s.n_clusters, p);
    for (int c = 0; c < s.n_clusters; ++c)
      if (pattern[m][static_cast<std::size_t>(c)])
        means.row(c).head(block).setConstant(s.separation);

    Eigen::MatrixXd x(n, p);
    for (int i = 0; i < n; ++i) {
      const int c = labels[static_cast<std::size_t>(i)];
      for (int j = 0; j < p; ++j) {
        const double signal = means(c, j) + gauss(rng);
        const double noise = gauss(rng);
        x(i, j) = h(signal + noise);
      }
    }
    out.data.views.push_back(std::move(x));
    out.data.names.push_back("view" + std::to_string(m + 1));
    out.polynomials.push_back(std::move(h));
    out.cluster_means.push_back(std::move(means));
  }
  out.data.labels = std::move(labels);
  out.data.validate();
  return out;
}

MultiViewDataset generate_synthetic(const SyntheticScenario& scenario) {
  return generate_synthetic_detailed(scenario).data;
}

MultiViewDataset balance_subset(const MultiViewDataset& ds,
                                const std::map<int, int>& per_cluster,
                                std::uint64_t seed) {
  ds.validate();
  require(ds.labels.has_value(), ErrorKind::kConfig, "balance_subset requires labels");
  std::map<int, std::vector<Eigen::Index>> members;
  for (std::size_t i = 0; i < ds.labels->size(); ++i)
    members[(*ds.labels)[i]].push_back(static_cast<Eigen::Index>(i));

  std::mt19937_64 rng(seed);
  std::vector<Eigen::Index> keep;
  for (auto& [cluster, rows] : members) {
    auto it = per_cluster.find(cluster);
    if (it == per_cluster.end()) {
      keep.insert(keep.end(), rows.begin(), rows.end());
      continue;
    }
    const int want = it->second;
    require(want >= 0, ErrorKind::kConfig, "negative per-cluster count");
    require(want <= static_cast<int>(rows.size()), ErrorKind::kCapacity,
            "requested " + std::to_string(want) + " samples from cluster " +
                std::to_string(cluster) + " which has only " +
                std::to_string(rows.size()));
    std::vector<Eigen::Index> chosen;
    std::sample(rows.begin(), rows.end(), std::back_inserter(chosen), want, rng);
    keep.insert(keep.end(), chosen.begin(), chosen.end());
  }
  for (const auto& [cluster, count] : per_cluster) {
    require(members.count(cluster) > 0 || count == 0, ErrorKind::kCapacity,
            "cluster " + std::to_string(cluster) + " is not present");
  }
  std::sort(keep.begin(), keep.end());
  return ds.select_rows(keep);
}

}  // namespace mvm
