// core/src/harness.cpp

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

#include "mvmanifold/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <thread>

#include "mvmanifold/csv.hpp"
#include "mvmanifold/error.hpp"
#include "mvmanifold/isomap.hpp"
#include "mvmanifold/lle.hpp"
#include "mvmanifold/random.hpp"
#include "mvmanifold/sne.hpp"

namespace mvm::harness {

namespace {

constexpr std::array<MethodInfo, 12> kMethods{{
    {"tsne", "t-SNE", Family::kSne, Variant::kSingle},
    {"tsne-concat", "SNE_concat", Family::kSne, Variant::kConcat},
    {"msne", "m-SNE", Family::kSne, Variant::kAverage},
    {"multisne", "multi-SNE", Family::kSne, Variant::kMulti},
    {"lle", "LLE", Family::kLle, Variant::kSingle},
    {"lle-concat", "LLE_concat", Family::kLle, Variant::kConcat},
    {"mlle", "m-LLE", Family::kLle, Variant::kAverage},
    {"multille", "multi-LLE", Family::kLle, Variant::kMulti},
    {"isomap", "ISOMAP", Family::kIsomap, Variant::kSingle},
    {"isomap-concat", "ISOMAP_concat", Family::kIsomap, Variant::kConcat},
    {"misomap", "m-ISOMAP", Family::kIsomap, Variant::kAverage},
    {"multiisomap", "multi-ISOMAP", Family::kIsomap, Variant::kMulti},
}};

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::span<const MethodInfo> method_table() { return kMethods; }

const MethodInfo& method_info(std::string_view id) {
  for (const auto& m : kMethods)
    if (m.id == id) return m;
  std::string known;
  for (const auto& m : kMethods) known += (known.empty() ? "" : ", ") + std::string(m.id);
  throw Error(ErrorKind::kConfig, "unknown method '" + std::string(id) + "' (known: " + known + ")");
}

std::string_view parameter_name(Family f) { return f == Family::kSne ? "perplexity" : "nn"; }

WeightChoice WeightChoice::parse(std::string_view s) {
  WeightChoice w;
  if (s == "uniform") return w;
  if (s == "auto") {
    w.kind = WeightKind::kAuto;
    return w;
  }
  if (s.starts_with("csv:")) {
    const Eigen::MatrixXd m = csv::read_matrix(std::filesystem::path(std::string(s.substr(4))));
    w.kind = WeightKind::kFixed;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) w.fixed.push_back(m(i, j));
    ViewWeights check(w.fixed);  // validates sum and sign
    return w;
  }
  throw Error(ErrorKind::kConfig,
              "weights must be 'uniform', 'auto' or 'csv:<path>', got '" + std::string(s) + "'");
}

std::string WeightChoice::to_string() const {
  switch (kind) {
    case WeightKind::kUniform: return "uniform";
    case WeightKind::kAuto: return "auto";
    case WeightKind::kFixed: return ViewWeights(fixed).to_string();
  }
  return "?";
}

namespace {

ViewWeights fixed_or_uniform(const WeightChoice& w, std::size_t m_views, std::string_view method) {
  switch (w.kind) {
    case WeightKind::kUniform:
      return ViewWeights::uniform(m_views);
    case WeightKind::kFixed:
      require(w.fixed.size() == m_views, ErrorKind::kConfig,
              std::string(method) + ": got " + std::to_string(w.fixed.size()) +
                  " weights for " + std::to_string(m_views) + " views");
      return ViewWeights(w.fixed);
    case WeightKind::kAuto:
      break;
  }
  throw Error(ErrorKind::kConfig,
              "automatic weights are only available for multi-SNE, not " + std::string(method));
}

int neighbour_count(double param) {
  require(param >= 1.0 && param == std::floor(param), ErrorKind::kConfig,
          "neighbour count must be a positive integer, got " + format_number(param));
  return static_cast<int>(param);
}

pretrain::PretrainConfig effective_pretrain(const MethodConfig& cfg, Family family) {
  if (cfg.pretrain) return *cfg.pretrain;
  pretrain::PretrainConfig p;
  p.mode = family == Family::kSne ? pretrain::Mode::kPCA : pretrain::Mode::kNone;
  return p;
}

}  // namespace

MultiViewDataset prepare_input(const MultiViewDataset& ds, const MethodConfig& cfg) {
  ds.validate();
  const MethodInfo& info = method_info(cfg.method);
  MultiViewDataset input;
  switch (info.variant) {
    case Variant::kSingle: {
      require(cfg.view < ds.n_views(), ErrorKind::kConfig,
              "view " + std::to_string(cfg.view + 1) + " requested but the dataset has " +
                  std::to_string(ds.n_views()));
      const std::array<std::size_t, 1> one{cfg.view};
      input = ds.select_views(one);
      break;
    }
    case Variant::kConcat:
      input.views.push_back(ds.concatenated());
      input.labels = ds.labels;
      break;
    case Variant::kAverage:
    case Variant::kMulti:
      input = ds;
      break;
  }
  return pretrain::apply(input, effective_pretrain(cfg, info.family));
}

MethodOutput run_prepared(const MultiViewDataset& input, const MethodConfig& cfg) {
  const MethodInfo& info = method_info(cfg.method);
  MethodOutput out;
  const std::size_t m_views = input.n_views();

  switch (info.family) {
    case Family::kSne: {
      sne::SneConfig s;
      s.perplexity = cfg.param;
      s.n_iter = cfg.n_iter;
      s.seed = cfg.seed;
      s.output_dim = cfg.output_dim;
      s.cost_tolerance = cfg.cost_tolerance;
      sne::SneResult r;
      switch (info.variant) {
        case Variant::kSingle:
        case Variant::kConcat:
          r = sne::run_tsne(input.views.front(), s);
          break;
        case Variant::kAverage:
          r = sne::run_msne(input, s, fixed_or_uniform(cfg.weights, m_views, info.display));
          break;
        case Variant::kMulti:
          if (cfg.weights.kind == WeightKind::kAuto)
            r = sne::run_multisne(input, s, sne::AutoWeights{});
          else
            r = sne::run_multisne(input, s, fixed_or_uniform(cfg.weights, m_views, info.display));
          break;
      }
      out.embedding = std::move(r.embedding);
      out.cost = std::move(r.cost);
      out.weight_history = std::move(r.weight_history);
      break;
    }
    case Family::kLle: {
      lle::LleConfig l;
      l.n_neighbors = neighbour_count(cfg.param);
      l.output_dim = cfg.output_dim;
      switch (info.variant) {
        case Variant::kSingle:
        case Variant::kConcat:
          out.embedding = lle::run_lle(input.views.front(), l);
          break;
        case Variant::kAverage:
          out.embedding = lle::run_mlle(input, l, fixed_or_uniform(cfg.weights, m_views, info.display));
          break;
        case Variant::kMulti:
          out.embedding =
              lle::run_multille(input, l, fixed_or_uniform(cfg.weights, m_views, info.display));
          break;
      }
      break;
    }
    case Family::kIsomap: {
      isomap::IsomapConfig c;
      c.n_neighbors = neighbour_count(cfg.param);
      c.output_dim = cfg.output_dim;
      c.literal_eigen = cfg.literal_eigen;
      switch (info.variant) {
        case Variant::kSingle:
        case Variant::kConcat:
          out.embedding = isomap::run_isomap(input.views.front(), c);
          break;
        case Variant::kAverage:
          out.embedding =
              isomap::run_misomap(input, c, fixed_or_uniform(cfg.weights, m_views, info.display));
          break;
        case Variant::kMulti:
          out.embedding =
              isomap::run_multiisomap(input, c, fixed_or_uniform(cfg.weights, m_views, info.display));
          break;
      }
      break;
    }
  }
  out.embedding.method = std::string(info.id);
  out.embedding.config[std::string(parameter_name(info.family))] = format_number(cfg.param);
  if (info.variant == Variant::kSingle) out.embedding.config["view"] = std::to_string(cfg.view + 1);
  return out;
}

MethodOutput run_method(const MultiViewDataset& ds, const MethodConfig& cfg) {
  MethodOutput out = run_prepared(prepare_input(ds, cfg), cfg);
  const auto p = effective_pretrain(cfg, method_info(cfg.method).family);
  out.embedding.config["pretrain"] = std::string(pretrain::to_string(p.mode));
  return out;
}

std::vector<int> embedded_labels(const Embedding& e, std::span<const int> labels) {
  if (e.samples.empty()) {
    require(static_cast<Eigen::Index>(labels.size()) == e.n_points(), ErrorKind::kAlignment,
            "label count does not match embedding rows");
    return {labels.begin(), labels.end()};
  }
  std::vector<int> out;
  out.reserve(e.samples.size());
  for (Eigen::Index s : e.samples) {
    require(s >= 0 && static_cast<std::size_t>(s) < labels.size(), ErrorKind::kAlignment,
            "embedding sample index out of range");
    out.push_back(labels[static_cast<std::size_t>(s)]);
  }
  return out;
}

cluster::Scores cluster_and_score(const Embedding& e, std::span<const int> labels,
                                  const ClusterSpec& spec, std::uint64_t seed,
                                  std::vector<int>* assignment) {
  const std::vector<int> truth = embedded_labels(e, labels);
  cluster::ClusteringResult res;
  if (spec.algo == ClusterAlgo::kKMeans) {
    int k = spec.k;
    if (k <= 0) {
      std::vector<int> distinct(labels.begin(), labels.end());
      std::sort(distinct.begin(), distinct.end());
      k = static_cast<int>(std::unique(distinct.begin(), distinct.end()) - distinct.begin());
    }
    res = cluster::kmeans(e.coords, {.k = k, .restarts = spec.restarts, .max_iter = 300, .seed = seed});
  } else {
    const double eps = spec.eps ? *spec.eps : cluster::estimate_eps(e.coords, spec.min_pts);
    res = cluster::dbscan(e.coords, eps, spec.min_pts);
  }
  if (assignment) *assignment = res.labels;
  return cluster::evaluate(e.coords, res.labels, truth);
}

std::optional<Metric> parse_metric(std::string_view s) {
  if (s == "acc") return Metric::kAcc;
  if (s == "nmi") return Metric::kNmi;
  if (s == "ri") return Metric::kRi;
  if (s == "ari") return Metric::kAri;
  if (s == "silhouette") return Metric::kSilhouette;
  return std::nullopt;
}

double metric_value(const cluster::Scores& s, Metric m) {
  switch (m) {
    case Metric::kAcc: return s.acc;
    case Metric::kNmi: return s.nmi;
    case Metric::kRi: return s.ri;
    case Metric::kAri: return s.ari;
    case Metric::kSilhouette: return s.silhouette;
  }
  return 0.0;
}

std::vector<double> default_grid() { return {2, 10, 20, 50, 80, 100, 200}; }

std::vector<double> usable_grid(std::span<const double> grid, Eigen::Index n_samples) {
  std::vector<double> out;
  for (double v : grid)
    if (v < static_cast<double>(n_samples)) out.push_back(v);
  return out;
}

const SweepSummary* SweepReport::best() const {
  if (!optimum) return nullptr;
  for (const auto& s : summaries)
    if (s.param == *optimum) return &s;
  return nullptr;
}

namespace {

constexpr std::array<Metric, 5> kAllMetrics{Metric::kAcc, Metric::kNmi, Metric::kRi, Metric::kAri,
                                            Metric::kSilhouette};

double& metric_ref(cluster::Scores& s, Metric m) {
  switch (m) {
    case Metric::kAcc: return s.acc;
    case Metric::kNmi: return s.nmi;
    case Metric::kRi: return s.ri;
    case Metric::kAri: return s.ari;
    case Metric::kSilhouette: break;
  }
  return s.silhouette;
}

SweepSummary summarize(double param, std::span<const SweepRow> rows) {
  SweepSummary out;
  out.param = param;
  for (const auto& r : rows) out.n_ok += r.ok ? 1 : 0;
  for (Metric m : kAllMetrics) {
    std::vector<double> v;
    for (const auto& r : rows)
      if (r.ok && std::isfinite(metric_value(r.scores, m))) v.push_back(metric_value(r.scores, m));
    if (v.empty()) {
      metric_ref(out.mean, m) = std::numeric_limits<double>::quiet_NaN();
      metric_ref(out.sd, m) = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    metric_ref(out.mean, m) = mean;
    metric_ref(out.sd, m) = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
  }
  return out;
}

template <typename Task>
void run_pool(std::size_t n_tasks, int workers, Task&& task) {
  std::size_t n_threads = workers > 0 ? static_cast<std::size_t>(workers)
                                      : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min(n_threads, n_tasks);
  if (n_threads <= 1) {
    for (std::size_t t = 0; t < n_tasks; ++t) task(t);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < n_threads; ++w)
    pool.emplace_back([&]() {
      for (std::size_t t = next++; t < n_tasks; t = next++) task(t);
    });
  for (auto& th : pool) th.join();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

SweepReport run_sweep(const MultiViewDataset& ds, const SweepSpec& spec) {
  ds.validate();
  require(ds.has_labels(), ErrorKind::kConfig, "a sweep needs labelled data");
  require(spec.repeats >= 1, ErrorKind::kConfig, "repeats must be >= 1");
  const MethodInfo& info = method_info(spec.method.method);
  const std::vector<double> grid = usable_grid(spec.grid, ds.n_samples());
  require(!grid.empty(), ErrorKind::kConfig,
          "no grid value is below N=" + std::to_string(ds.n_samples()));

  // Pre-training does not depend on the swept parameter.
  const MultiViewDataset input = prepare_input(ds, spec.method);
  const std::vector<int>& labels = *ds.labels;
  const std::size_t reps = static_cast<std::size_t>(spec.repeats);
  const bool stochastic = info.family == Family::kSne;

  SweepReport report;
  report.select = spec.select;
  report.rows.resize(grid.size() * reps);
  for (std::size_t g = 0; g < grid.size(); ++g)
    for (std::size_t r = 0; r < reps; ++r) {
      SweepRow& row = report.rows[g * reps + r];
      row.method = std::string(info.id);
      row.param = grid[g];
      row.repeat = static_cast<int>(r);
    }

  auto score_into = [&](SweepRow& row, const Embedding& e, std::uint64_t cell_seed, double embed_time) {
    const auto start = std::chrono::steady_clock::now();
    try {
      row.scores = cluster_and_score(e, labels, spec.cluster, derive_seed(cell_seed, 1));
      row.n_embedded = e.n_points();
      row.ok = true;
    } catch (const std::exception& ex) {
      row.error = ex.what();
    }
    row.wall_seconds = embed_time + seconds_since(start);
  };

  const std::size_t n_tasks = stochastic ? grid.size() * reps : grid.size();
  run_pool(n_tasks, spec.workers, [&](std::size_t task) {
    const std::size_t g = stochastic ? task / reps : task;
    const std::size_t first_rep = stochastic ? task % reps : 0;
    const std::size_t last_rep = stochastic ? first_rep + 1 : reps;
    const std::size_t cell0 = g * reps + first_rep;

    MethodConfig cfg = spec.method;
    cfg.param = grid[g];
    cfg.seed = derive_seed(derive_seed(spec.seed, cell0), 0);
    const auto start = std::chrono::steady_clock::now();
    MethodOutput out;
    try {
      out = run_prepared(input, cfg);
    } catch (const std::exception& ex) {
      for (std::size_t r = first_rep; r < last_rep; ++r) report.rows[g * reps + r].error = ex.what();
      return;
    }
    const double embed_time = seconds_since(start);
    for (std::size_t r = first_rep; r < last_rep; ++r) {
      const std::size_t cell = g * reps + r;
      score_into(report.rows[cell], out.embedding, derive_seed(spec.seed, cell),
                 stochastic ? embed_time : embed_time / static_cast<double>(reps));
    }
  });

  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < grid.size(); ++g) {
    report.summaries.push_back(
        summarize(grid[g], std::span<const SweepRow>(report.rows).subspan(g * reps, reps)));
    const double v = metric_value(report.summaries.back().mean, spec.select);
    if (report.summaries.back().n_ok > 0 && std::isfinite(v) && v > best) {
      best = v;
      report.optimum = grid[g];
    }
  }
  return report;
}

std::vector<AblationRow> view_ablation(const MultiViewDataset& ds, const SweepSpec& spec) {
  ds.validate();
  const std::size_t m_views = ds.n_views();
  require(m_views >= 2, ErrorKind::kConfig, "view ablation needs at least two views");
  require(m_views <= 16, ErrorKind::kCapacity, "view ablation supports at most 16 views");

  std::vector<std::vector<std::size_t>> subsets;
  for (std::size_t size = 1; size <= m_views; ++size) {
    std::vector<bool> pick(m_views, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
      std::vector<std::size_t> s;
      for (std::size_t m = 0; m < m_views; ++m)
        if (pick[m]) s.push_back(m);
      subsets.push_back(std::move(s));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }

  std::vector<AblationRow> out;
  for (const auto& s : subsets) {
    SweepSpec sub = spec;
    if (spec.method.weights.kind == WeightKind::kFixed) {
      std::vector<double> w;
      for (std::size_t m : s) w.push_back(spec.method.weights.fixed.at(m));
      sub.method.weights.fixed.assign(ViewWeights::normalized(w).values().begin(),
                                      ViewWeights::normalized(w).values().end());
    }
    out.push_back({s, run_sweep(ds.select_views(s), sub)});
  }
  return out;
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream f(path);
  require(f.good(), ErrorKind::kIo, "cannot write " + path.string());
  f.precision(10);
  return f;
}

void put_scores(std::ostream& f, const cluster::Scores& s) {
  f << s.acc << ',' << s.nmi << ',' << s.ri << ',' << s.ari << ',' << s.silhouette;
}

std::string csv_escape(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_sweep_csv(const std::filesystem::path& path, const SweepReport& report) {
  auto f = open_output(path);
  f << "method,param,repeat,ok,acc,nmi,ri,ari,silhouette,n_embedded,wall_seconds,error\n";
  for (const auto& r : report.rows) {
    f << r.method << ',' << r.param << ',' << r.repeat << ',' << (r.ok ? 1 : 0) << ',';
    put_scores(f, r.scores);
    f << ',' << r.n_embedded << ',' << r.wall_seconds << ',' << csv_escape(r.error) << '\n';
  }
  require(f.good(), ErrorKind::kIo, "failed writing " + path.string());
}

void write_summary_csv(const std::filesystem::path& path, const SweepReport& report) {
  auto f = open_output(path);
  f << "param,n_ok,acc_mean,nmi_mean,ri_mean,ari_mean,silhouette_mean,"
       "acc_sd,nmi_sd,ri_sd,ari_sd,silhouette_sd,optimum\n";
  for (const auto& s : report.summaries) {
    f << s.param << ',' << s.n_ok << ',';
    put_scores(f, s.mean);
    f << ',';
    put_scores(f, s.sd);
    f << ',' << (report.optimum && *report.optimum == s.param ? 1 : 0) << '\n';
  }
  require(f.good(), ErrorKind::kIo, "failed writing " + path.string());
}

void write_ablation_csv(const std::filesystem::path& path, std::span<const AblationRow> rows) {
  auto f = open_output(path);
  f << "views,param,n_ok,acc_mean,nmi_mean,ri_mean,ari_mean,silhouette_mean\n";
  for (const auto& row : rows) {
    std::string views;
    for (std::size_t m : row.views) views += (views.empty() ? "" : "+") + std::to_string(m + 1);
    const SweepSummary* b = row.report.best();
    if (!b) {
      f << views << ",,0,,,,,\n";
      continue;
    }
    f << views << ',' << b->param << ',' << b->n_ok << ',';
    put_scores(f, b->mean);
    f << '\n';
  }
  require(f.good(), ErrorKind::kIo, "failed writing " + path.string());
}

void write_weights_csv(const std::filesystem::path& path,
                       const std::vector<std::vector<double>>& history) {
  auto f = open_output(path);
  f.precision(17);
  const std::size_t m = history.empty() ? 0 : history.front().size();
  f << "iteration";
  for (std::size_t v = 0; v < m; ++v) f << ",w" << v + 1;
  f << '\n';
  for (std::size_t t = 0; t < history.size(); ++t) {
    f << t + 1;
    for (double w : history[t]) f << ',' << w;
    f << '\n';
  }
  require(f.good(), ErrorKind::kIo, "failed writing " + path.string());
}

}  // namespace mvm::harness
