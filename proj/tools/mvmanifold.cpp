// tools/mvmanifold.cpp

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

// mvmanifold: multi-view manifold learning benchmark driver.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mvmanifold/dataset.hpp"
#include "mvmanifold/error.hpp"
#include "mvmanifold/harness.hpp"
#include "mvmanifold/random.hpp"

namespace fs = std::filesystem;
using namespace mvm;

namespace {

struct Options {
  std::string data;
  std::string method = "multisne";
  std::string param = "sweep";
  std::string grid;
  std::string pretrain = "auto";
  double pca_var = 0.8;
  int components = 0;
  std::string cluster = "kmeans";
  int k = 0;
  double eps = 0.0;
  int min_pts = 5;
  int restarts = 10;
  int repeats = 10;
  std::uint64_t seed = 0;
  std::string out = "mvm_out";
  std::string weights = "uniform";
  int iters = 1000;
  double tol = 0.0;
  int view = 1;
  int dim = 2;
  bool header = false;
  bool literal_eigen = false;
  std::string select = "nmi";
  int workers = 1;
};

void add_run_options(CLI::App& app, Options& o) {
  app.add_option("--data", o.data, "Directory with view*.csv [labels.csv], or MMDS/NDS/MCS/NDS+<c>")
      ->required();
  app.add_option("--method", o.method, "tsne, tsne-concat, msne, multisne, lle, lle-concat, mlle, "
                                       "multille, isomap, isomap-concat, misomap, multiisomap");
  app.add_option("--param", o.param, "Perplexity / neighbour count, or 'sweep'");
  app.add_option("--grid", o.grid, "Comma-separated sweep grid (default 2,10,20,50,80,100,200)");
  app.add_option("--pretrain", o.pretrain, "auto, none, pca or multicca");
  app.add_option("--pca-var", o.pca_var, "Variance fraction kept by PCA");
  app.add_option("--components", o.components, "Fixed PCA / multi-CCA component count");
  app.add_option("--cluster", o.cluster, "kmeans or dbscan");
  app.add_option("--k", o.k, "Cluster count (default: number of labels)");
  app.add_option("--eps", o.eps, "DBSCAN radius (default: k-distance elbow)");
  app.add_option("--min-pts", o.min_pts, "DBSCAN min_pts");
  app.add_option("--restarts", o.restarts, "K-means restarts per clustering");
  app.add_option("--repeats", o.repeats, "Repeats per grid value");
  app.add_option("--seed", o.seed, "Master seed");
  app.add_option("--out", o.out, "Output directory");
  app.add_option("--weights", o.weights, "uniform, auto or csv:<path>");
  app.add_option("--iters", o.iters, "SNE iterations");
  app.add_option("--tol", o.tol, "SNE relative cost-change stop (0 = run all iterations)");
  app.add_option("--view", o.view, "View used by single-view methods (1-based)");
  app.add_option("--dim", o.dim, "Embedding dimension");
  app.add_flag("--header", o.header, "CSV files have a header line");
  app.add_flag("--literal-eigen", o.literal_eigen, "ISOMAP: eigendecompose D_G directly");
  app.add_option("--select", o.select, "Metric used to pick the optimum: acc, nmi, ri, ari, silhouette");
  app.add_option("--workers", o.workers, "Worker threads for sweeps (0 = all cores)");
}

MultiViewDataset load_data(const Options& o) {
  if (fs::is_directory(o.data)) return load_multiview_dir(o.data, {.header = o.header});
  if (auto s = SyntheticScenario::parse(o.data, o.seed)) return generate_synthetic(*s);
  throw Error(ErrorKind::kIo, "'" + o.data + "' is neither a directory nor a known scenario");
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> g;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      g.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw Error(ErrorKind::kConfig, "bad grid value '" + item + "'");
    }
  }
  require(!g.empty(), ErrorKind::kConfig, "empty grid");
  return g;
}

harness::SweepSpec make_spec(const Options& o) {
  harness::SweepSpec spec;
  auto& m = spec.method;
  m.method = o.method;
  harness::method_info(o.method);
  if (o.pretrain != "auto") {
    auto mode = pretrain::parse_mode(o.pretrain);
    require(mode.has_value(), ErrorKind::kConfig, "unknown pretrain mode '" + o.pretrain + "'");
    pretrain::PretrainConfig p;
    p.mode = *mode;
    p.variance_threshold = o.pca_var;
    if (o.components > 0) p.n_components = o.components;
    m.pretrain = p;
  } else if (o.pca_var != 0.8 || o.components > 0) {
    if (harness::method_info(o.method).family == harness::Family::kSne) {
      pretrain::PretrainConfig p;
      p.variance_threshold = o.pca_var;
      if (o.components > 0) p.n_components = o.components;
      m.pretrain = p;
    }
  }
  m.weights = harness::WeightChoice::parse(o.weights);
  m.output_dim = o.dim;
  m.n_iter = o.iters;
  m.cost_tolerance = o.tol;
  require(o.view >= 1, ErrorKind::kConfig, "--view is 1-based");
  m.view = static_cast<std::size_t>(o.view - 1);
  m.literal_eigen = o.literal_eigen;

  if (o.param == "sweep") {
    spec.grid = o.grid.empty() ? harness::default_grid() : parse_grid(o.grid);
  } else {
    spec.grid = parse_grid(o.param);
    require(spec.grid.size() == 1, ErrorKind::kConfig, "--param takes one value or 'sweep'");
  }
  spec.repeats = o.repeats;
  spec.seed = o.seed;
  spec.workers = o.workers;
  if (o.cluster == "dbscan") {
    spec.cluster.algo = harness::ClusterAlgo::kDbscan;
    if (o.eps > 0.0) spec.cluster.eps = o.eps;
  } else {
    require(o.cluster == "kmeans", ErrorKind::kConfig, "--cluster must be kmeans or dbscan");
  }
  spec.cluster.k = o.k;
  spec.cluster.restarts = o.restarts;
  spec.cluster.min_pts = o.min_pts;
  auto metric = harness::parse_metric(o.select);
  require(metric.has_value(), ErrorKind::kConfig, "unknown metric '" + o.select + "'");
  spec.select = *metric;
  return spec;
}

void print_summary(const harness::SweepReport& r) {
  std::printf("%-10s %5s %8s %8s %8s %8s %10s\n", "param", "ok", "acc", "nmi", "ri", "ari",
              "silhouette");
  for (const auto& s : r.summaries)
    std::printf("%-10g %5d %8.4f %8.4f %8.4f %8.4f %10.4f%s\n", s.param, s.n_ok, s.mean.acc,
                s.mean.nmi, s.mean.ri, s.mean.ari, s.mean.silhouette,
                r.optimum && *r.optimum == s.param ? "  *" : "");
  for (const auto& row : r.rows)
    if (!row.ok) std::fprintf(stderr, "param %g repeat %d failed: %s\n", row.param, row.repeat,
                              row.error.c_str());
}

void write_embedding_outputs(const MultiViewDataset& ds, harness::MethodConfig cfg,
                             const fs::path& out) {
  const harness::MethodOutput res = harness::run_method(ds, cfg);
  harness::emit_embedding(res.embedding, ds.labels, out / "embedding.csv");
  const std::string title = std::string(harness::method_info(cfg.method).display) + " [" +
                            std::string(harness::parameter_name(harness::method_info(cfg.method).family)) +
                            "=" + std::to_string(static_cast<long long>(cfg.param)) + "]";
  for (const auto& w : harness::emit_scatter(res.embedding, ds.labels, out / "scatter.svg", title))
    std::fprintf(stderr, "warning: %s\n", w.c_str());
  for (const auto& w : res.embedding.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  if (!res.weight_history.empty()) harness::write_weights_csv(out / "weights.csv", res.weight_history);
}

int cmd_run(const Options& o) {
  const MultiViewDataset ds = load_data(o);
  harness::SweepSpec spec = make_spec(o);
  const fs::path out = o.out;
  fs::create_directories(out);

  if (!ds.has_labels()) {
    require(spec.grid.size() == 1, ErrorKind::kConfig, "a sweep needs labels.csv");
    harness::MethodConfig cfg = spec.method;
    cfg.param = spec.grid.front();
    cfg.seed = o.seed;
    write_embedding_outputs(ds, cfg, out);
    std::printf("wrote %s\n", (out / "embedding.csv").c_str());
    return 0;
  }

  const harness::SweepReport report = harness::run_sweep(ds, spec);
  harness::write_sweep_csv(out / "sweep.csv", report);
  harness::write_summary_csv(out / "summary.csv", report);
  print_summary(report);
  require(report.optimum.has_value(), ErrorKind::kNumerical, "every sweep cell failed");

  harness::MethodConfig cfg = spec.method;
  cfg.param = *report.optimum;
  cfg.seed = derive_seed(o.seed, 0xE3BEDull);
  write_embedding_outputs(ds, cfg, out);
  std::printf("optimum %s=%g; outputs in %s\n",
              std::string(harness::parameter_name(harness::method_info(cfg.method).family)).c_str(),
              *report.optimum, out.c_str());
  return 0;
}

int cmd_ablation(const Options& o) {
  const MultiViewDataset ds = load_data(o);
  const harness::SweepSpec spec = make_spec(o);
  const fs::path out = o.out;
  fs::create_directories(out);
  const auto rows = harness::view_ablation(ds, spec);
  harness::write_ablation_csv(out / "ablation.csv", rows);
  std::printf("%-12s %10s %8s %8s\n", "views", "param", "acc", "nmi");
  for (const auto& r : rows) {
    std::string views;
    for (auto m : r.views) views += (views.empty() ? "" : "+") + std::to_string(m + 1);
    if (const auto* b = r.report.best())
      std::printf("%-12s %10g %8.4f %8.4f\n", views.c_str(), b->param, b->mean.acc, b->mean.nmi);
    else
      std::printf("%-12s %10s\n", views.c_str(), "failed");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-view manifold learning (multi-SNE, multi-LLE, multi-ISOMAP) benchmark"};
  app.require_subcommand(1);

  Options run_opts;
  auto* run = app.add_subcommand("run", "Embed, cluster and evaluate over a parameter grid");
  add_run_options(*run, run_opts);

  Options abl_opts;
  auto* abl = app.add_subcommand("ablation", "Repeat a sweep on every subset of views");
  add_run_options(*abl, abl_opts);

  std::string scenario = "NDS";
  std::uint64_t gen_seed = 0;
  std::string gen_out = "data";
  int gen_n = 0;
  auto* gen = app.add_subcommand("generate", "Write a synthetic multi-view dataset as CSV");
  gen->add_option("--scenario", scenario, "MMDS, NDS, MCS or NDS+<c>");
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--n", gen_n, "Override the sample count");
  gen->add_option("--out", gen_out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ErrorKind::kConfig);
  }

  try {
    if (*run) return cmd_run(run_opts);
    if (*abl) return cmd_ablation(abl_opts);
    if (*gen) {
      auto s = SyntheticScenario::parse(scenario, gen_seed);
      require(s.has_value(), ErrorKind::kConfig, "unknown scenario '" + scenario + "'");
      if (gen_n > 0) s->n_samples = gen_n;
      save_multiview(generate_synthetic(*s), gen_out);
      std::printf("wrote %s (%d views) to %s\n", s->name().c_str(), s->n_views(), gen_out.c_str());
      return 0;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s: %s\n", std::string(to_string(e.kind())).c_str(), e.what());
    return e.exit_code();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
