// core/src/csv.cpp

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

#include "mvmanifold/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <string>
#include <string_view>

#include "mvmanifold/error.hpp"

namespace mvm::csv {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

double parse_cell(std::string_view cell, const std::filesystem::path& path,
                  std::size_t row, std::size_t col) {
  cell = trim(cell);
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw Error(ErrorKind::kParse,
                path.string() + ": non-numeric cell '" + std::string(cell) +
                    "' at row " + std::to_string(row) + ", column " +
                    std::to_string(col));
  }
  return value;
}

std::vector<std::vector<double>> read_rows(const std::filesystem::path& path,
                                           const ReadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t data_row = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (opts.header && line_no == 1) continue;
    if (trim(line).empty()) continue;
    ++data_row;
    std::vector<double> row;
    std::string_view rest(line);
    std::size_t col = 0;
    while (true) {
      ++col;
      auto pos = rest.find(opts.delimiter);
      row.push_back(parse_cell(rest.substr(0, pos), path, data_row, col));
      if (pos == std::string_view::npos) break;
      rest.remove_prefix(pos + 1);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorKind::kParse,
                  path.string() + ": row " + std::to_string(data_row) + " has " +
                      std::to_string(row.size()) + " columns, expected " +
                      std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  return out;
}

void put_double(std::ostream& os, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v,
                                 std::chars_format::general, 17);
  os.write(buf, ptr - buf);
}

}  // namespace

Eigen::MatrixXd read_matrix(const std::filesystem::path& path,
                            const ReadOptions& opts) {
  auto rows = read_rows(path, opts);
  if (rows.empty()) throw Error(ErrorKind::kParse, path.string() + ": no data rows");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  return m;
}

std::vector<int> read_labels(const std::filesystem::path& path,
                             const ReadOptions& opts) {
  auto rows = read_rows(path, opts);
  std::vector<int> labels;
  labels.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double v = rows[i].front();
    if (v != static_cast<double>(static_cast<int>(v))) {
      throw Error(ErrorKind::kParse, path.string() + ": label at row " +
                                         std::to_string(i + 1) +
                                         " is not an integer");
    }
    labels.push_back(static_cast<int>(v));
  }
  return labels;
}

void write_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
  write_matrix(path, m, {});
}

void write_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m,
                  std::span<const int> trailing_labels) {
  require(trailing_labels.empty() ||
              trailing_labels.size() == static_cast<std::size_t>(m.rows()),
          ErrorKind::kAlignment, "label count does not match row count");
  auto out = open_out(path);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      put_double(out, m(i, j));
    }
    if (!trailing_labels.empty()) out << ',' << trailing_labels[i];
    out << '\n';
  }
  if (!out) throw Error(ErrorKind::kIo, "write failed: " + path.string());
}

void write_labels(const std::filesystem::path& path, std::span<const int> labels) {
  auto out = open_out(path);
  for (int l : labels) out << l << '\n';
  if (!out) throw Error(ErrorKind::kIo, "write failed: " + path.string());
}

}  // namespace mvm::csv
