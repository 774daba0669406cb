// tests/dataset_test.cpp

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

#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "mvmanifold/csv.hpp"
#include "mvmanifold/dataset.hpp"
#include "mvmanifold/error.hpp"

namespace fs = std::filesystem;
using namespace mvm;

namespace {

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("mvm_test_" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

void write_text(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no exception";
  return ErrorKind::kConfig;
}

}  // namespace

TEST(Csv, LoadsAlignedViewsAndLabels) {
  TempDir dir;
  write_text(dir.path() / "a.csv", "1,2\n3,4\n5,6\n7,8\n");
  write_text(dir.path() / "b.csv", "1,0\n0,1\n1,1\n0,0\n");
  write_text(dir.path() / "labels.csv", "0\n0\n1\n1\n");
  const std::vector<fs::path> views{dir.path() / "a.csv", dir.path() / "b.csv"};
  const auto ds = load_multiview(views, dir.path() / "labels.csv");
  EXPECT_EQ(ds.n_samples(), 4);
  EXPECT_EQ(ds.n_views(), 2u);
  ASSERT_TRUE(ds.labels);
  EXPECT_EQ(ds.labels->size(), 4u);
  EXPECT_EQ(ds.views[0](3, 1), 8.0);
}

TEST(Csv, RowMismatchIsAlignmentError) {
  TempDir dir;
  write_text(dir.path() / "a.csv", "1\n2\n3\n4\n");
  write_text(dir.path() / "b.csv", "1\n2\n3\n4\n5\n");
  const std::vector<fs::path> views{dir.path() / "a.csv", dir.path() / "b.csv"};
  EXPECT_EQ(kind_of([&] { load_multiview(views, std::nullopt); }), ErrorKind::kAlignment);
}

TEST(Csv, BadCellReportsLocation) {
  TempDir dir;
  write_text(dir.path() / "a.csv", "1,2\n3,oops\n");
  try {
    csv::read_matrix(dir.path() / "a.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParse);
    const std::string msg = e.what();
    EXPECT_NE(msg.find("row 2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("column 2"), std::string::npos) << msg;
  }
}

TEST(Csv, RaggedRowsRejected) {
  TempDir dir;
  write_text(dir.path() / "a.csv", "1,2\n3\n");
  EXPECT_EQ(kind_of([&] { csv::read_matrix(dir.path() / "a.csv"); }), ErrorKind::kParse);
}

TEST(Csv, HeaderSkipped) {
  TempDir dir;
  write_text(dir.path() / "a.csv", "x,y\n1,2\n");
  const auto m = csv::read_matrix(dir.path() / "a.csv", {.header = true});
  EXPECT_EQ(m.rows(), 1);
  EXPECT_EQ(m(0, 1), 2.0);
}

TEST(Csv, MatrixRoundTripIsExact) {
  TempDir dir;
  const Eigen::MatrixXd m = Eigen::MatrixXd::Random(7, 3) * 1e3;
  csv::write_matrix(dir.path() / "m.csv", m);
  EXPECT_EQ(csv::read_matrix(dir.path() / "m.csv"), m);
}

TEST(Dataset, SaveAndLoadDirectory) {
  TempDir dir;
  const auto ds = generate_synthetic(SyntheticScenario::mmds(3));
  save_multiview(ds, dir.path());
  const auto back = load_multiview_dir(dir.path());
  ASSERT_EQ(back.n_views(), 3u);
  for (std::size_t m = 0; m < 3; ++m) EXPECT_EQ(back.views[m], ds.views[m]);
  EXPECT_EQ(back.labels, ds.labels);
}

TEST(Dataset, ValidateRejectsBadShapes) {
  MultiViewDataset ds;
  EXPECT_EQ(kind_of([&] { ds.validate(); }), ErrorKind::kConfig);
  ds.views = {Eigen::MatrixXd::Zero(3, 2), Eigen::MatrixXd::Zero(4, 2)};
  EXPECT_EQ(kind_of([&] { ds.validate(); }), ErrorKind::kAlignment);
  ds.views.pop_back();
  ds.labels = std::vector<int>{0, 1};
  EXPECT_EQ(kind_of([&] { ds.validate(); }), ErrorKind::kAlignment);
  ds.labels.reset();
  ds.views = {Eigen::MatrixXd::Zero(1, 2)};
  EXPECT_EQ(kind_of([&] { ds.validate(); }), ErrorKind::kConfig);
}

TEST(Dataset, SelectRowsAndViews) {
  auto ds = generate_synthetic(SyntheticScenario::nds(1));
  const std::vector<Eigen::Index> rows{5, 0, 299};
  const auto sub = ds.select_rows(rows);
  EXPECT_EQ(sub.n_samples(), 3);
  EXPECT_EQ(sub.views[2].row(0), ds.views[2].row(5));
  EXPECT_EQ((*sub.labels)[2], (*ds.labels)[299]);
  const std::vector<std::size_t> views{3, 1};
  const auto two = ds.select_views(views);
  EXPECT_EQ(two.n_views(), 2u);
  EXPECT_EQ(two.views[0], ds.views[3]);
  EXPECT_EQ(ds.concatenated().cols(), 400);
}

TEST(Synthetic, ShapesFollowTheScenarioTable) {
  struct Row {
    SyntheticScenario s;
    int n, m, k, p;
  };
  for (const Row& r : {Row{SyntheticScenario::mmds(0), 300, 3, 3, 300},
                       Row{SyntheticScenario::nds(0), 300, 4, 3, 100},
                       Row{SyntheticScenario::mcs(0), 500, 3, 5, 100},
                       Row{SyntheticScenario::nds_extra_noise(2, 0), 300, 6, 3, 100}}) {
    const auto ds = generate_synthetic(r.s);
    EXPECT_EQ(ds.n_samples(), r.n) << r.s.name();
    EXPECT_EQ(static_cast<int>(ds.n_views()), r.m) << r.s.name();
    for (const auto& v : ds.views) EXPECT_EQ(v.cols(), r.p);
    std::vector<int> sizes(static_cast<std::size_t>(r.k));
    for (int l : *ds.labels) ++sizes.at(static_cast<std::size_t>(l));
    for (int c : sizes) EXPECT_EQ(c, r.n / r.k);
  }
}

TEST(Synthetic, NoiseViewsShareOneMean) {
  const auto det = generate_synthetic_detailed(SyntheticScenario::nds_extra_noise(1, 4));
  ASSERT_EQ(det.cluster_means.size(), 5u);
  for (std::size_t m = 3; m < 5; ++m)
    for (Eigen::Index c = 1; c < 3; ++c)
      EXPECT_EQ(det.cluster_means[m].row(c), det.cluster_means[m].row(0));
  // Informative views separate exactly their designated cluster.
  const auto pattern = separation_pattern(SyntheticScenario::nds(4));
  for (std::size_t m = 0; m < 3; ++m) {
    for (int c = 0; c < 3; ++c) {
      const bool moved = det.cluster_means[m].row(c).cwiseAbs().maxCoeff() > 0;
      EXPECT_EQ(moved, pattern[m][static_cast<std::size_t>(c)]);
    }
  }
}

TEST(Synthetic, EveryMcsClusterPairIsSeparatedSomewhere) {
  const auto pattern = separation_pattern(SyntheticScenario::mcs(0));
  for (int a = 0; a < 5; ++a) {
    for (int b = a + 1; b < 5; ++b) {
      bool split = false;
      for (const auto& view : pattern)
        split |= view[static_cast<std::size_t>(a)] != view[static_cast<std::size_t>(b)];
      EXPECT_TRUE(split) << a << " vs " << b;
    }
  }
}

TEST(Synthetic, SameSeedIsBitIdentical) {
  const auto a = generate_synthetic(SyntheticScenario::mcs(11));
  const auto b = generate_synthetic(SyntheticScenario::mcs(11));
  const auto c = generate_synthetic(SyntheticScenario::mcs(12));
  for (std::size_t m = 0; m < a.n_views(); ++m) {
    EXPECT_EQ(0, std::memcmp(a.views[m].data(), b.views[m].data(),
                             sizeof(double) * static_cast<std::size_t>(a.views[m].size())));
  }
  EXPECT_NE(a.views[0], c.views[0]);
}

TEST(Synthetic, PolynomialsInTheDocumentedFamily) {
  const auto det = generate_synthetic_detailed(SyntheticScenario::mmds(9));
  for (const auto& h : det.polynomials) {
    EXPECT_GE(h.coeffs.size(), 3u);
    EXPECT_LE(h.coeffs.size(), 5u);
    for (double c : h.coeffs) {
      EXPECT_GE(c, 1.0);
      EXPECT_LE(c, 5.0);
      EXPECT_EQ(c, std::round(c));
    }
  }
  Polynomial h{{5, 0, 3, 0, 1}};  // x^4 + 3x^2 + 5
  EXPECT_EQ(h(2.0), 33.0);
}

TEST(Synthetic, ParseNames) {
  EXPECT_EQ(SyntheticScenario::parse("nds", 0)->kind, ScenarioKind::kNDS);
  const auto extra = SyntheticScenario::parse("NDS+3", 0);
  ASSERT_TRUE(extra);
  EXPECT_EQ(extra->n_views(), 7);
  EXPECT_FALSE(SyntheticScenario::parse("XYZ", 0));
}

TEST(BalanceSubset, SamplesRequestedCounts) {
  const auto ds = generate_synthetic(SyntheticScenario::mcs(2));
  const auto sub = balance_subset(ds, {{0, 50}, {3, 10}}, 7);
  EXPECT_EQ(sub.n_samples(), 500 - 50 - 90);
  std::map<int, int> counts;
  for (int l : *sub.labels) ++counts[l];
  EXPECT_EQ(counts[0], 50);
  EXPECT_EQ(counts[1], 100);
  EXPECT_EQ(counts[3], 10);
  EXPECT_TRUE(std::is_sorted(sub.labels->begin(), sub.labels->end()));
}

TEST(BalanceSubset, FullSizesGiveIdentity) {
  const auto ds = generate_synthetic(SyntheticScenario::nds(2));
  const auto sub = balance_subset(ds, {{0, 100}, {1, 100}, {2, 100}}, 1);
  EXPECT_EQ(sub.views[1], ds.views[1]);
}

TEST(BalanceSubset, OverdrawIsCapacityError) {
  MultiViewDataset ds;
  ds.views.push_back(Eigen::MatrixXd::Zero(5, 1));
  ds.labels = std::vector<int>(5, 0);
  EXPECT_EQ(kind_of([&] { balance_subset(ds, {{0, 10}}, 0); }), ErrorKind::kCapacity);
}
