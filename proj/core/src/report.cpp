// core/src/report.cpp

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

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <map>

#include "mvmanifold/csv.hpp"
#include "mvmanifold/error.hpp"
#include "mvmanifold/harness.hpp"

namespace mvm::harness {

void emit_embedding(const Embedding& e, const std::optional<std::vector<int>>& labels,
                    const std::filesystem::path& path) {
  if (labels) {
    const std::vector<int> lab = embedded_labels(e, *labels);
    csv::write_matrix(path, e.coords, lab);
  } else {
    csv::write_matrix(path, e.coords);
  }
}

namespace {

// Categorical palette, cycled past ten labels.
constexpr std::array<const char*, 10> kPalette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                               "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                               "#bcbd22", "#17becf"};

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> emit_scatter(const Embedding& e,
                                      const std::optional<std::vector<int>>& labels,
                                      const std::filesystem::path& path, std::string_view title) {
  std::vector<std::string> warnings;
  const Eigen::Index n = e.n_points();
  require(n > 0 && e.dim() >= 1, ErrorKind::kConfig, "nothing to plot");
  if (e.dim() > 2)
    warnings.push_back("embedding has " + std::to_string(e.dim()) +
                       " dimensions; plotting the first two");
  if (e.dim() == 1) warnings.push_back("one-dimensional embedding plotted on a line");

  const Eigen::VectorXd x = e.coords.col(0);
  const Eigen::VectorXd y = e.dim() > 1 ? Eigen::VectorXd(e.coords.col(1)) : Eigen::VectorXd::Zero(n);
  std::vector<int> lab = labels ? embedded_labels(e, *labels) : std::vector<int>(static_cast<std::size_t>(n), 0);

  constexpr double kSize = 600.0, kMargin = 30.0, kLegend = 110.0;
  auto span = [](const Eigen::VectorXd& v) {
    const double lo = v.minCoeff(), hi = v.maxCoeff();
    return std::pair{lo, hi > lo ? hi - lo : 1.0};
  };
  const auto [x0, xr] = span(x);
  const auto [y0, yr] = span(y);
  const double plot = kSize - 2 * kMargin;

  std::map<int, std::vector<Eigen::Index>> groups;
  for (Eigen::Index i = 0; i < n; ++i) groups[lab[static_cast<std::size_t>(i)]].push_back(i);

  std::ofstream f(path);
  require(f.good(), ErrorKind::kIo, "cannot write " + path.string());
  f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize + kLegend << "\" height=\""
    << kSize << "\" viewBox=\"0 0 " << kSize + kLegend << ' ' << kSize << "\">\n";
  f << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty())
    f << "<text x=\"" << kMargin << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">"
      << xml_escape(title) << "</text>\n";

  char buf[96];
  std::size_t colour = 0;
  for (const auto& [label, members] : groups) {
    const char* fill = kPalette[colour % kPalette.size()];
    f << "<g class=\"label\" data-label=\"" << label << "\" fill=\"" << fill
      << "\" fill-opacity=\"0.8\">\n";
    for (Eigen::Index i : members) {
      const double px = kMargin + (x(i) - x0) / xr * plot;
      const double py = kSize - kMargin - (y(i) - y0) / yr * plot;
      std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\"/>\n", px, py);
      f << buf;
    }
    f << "</g>\n";
    const double ly = kMargin + 18.0 * static_cast<double>(colour);
    f << "<rect x=\"" << kSize + 10 << "\" y=\"" << ly << "\" width=\"10\" height=\"10\" fill=\""
      << fill << "\"/>";
    f << "<text x=\"" << kSize + 26 << "\" y=\"" << ly + 9
      << "\" font-family=\"sans-serif\" font-size=\"11\">"
      << (labels ? std::to_string(label) : std::string("samples")) << "</text>\n";
    ++colour;
  }
  f << "</svg>\n";
  require(f.good(), ErrorKind::kIo, "failed writing " + path.string());
  return warnings;
}

}  // namespace mvm::harness
