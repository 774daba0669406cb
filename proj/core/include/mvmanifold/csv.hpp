// core/include/mvmanifold/csv.hpp

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

#include <filesystem>
#include <span>
#include <vector>

namespace mvm::csv {

struct ReadOptions {
  bool header = false;  // skip the first line
  char delimiter = ',';
};

/// Reads a rectangular numeric CSV. Non-numeric cells throw kParse with the
/// 1-based row/column of the offending cell; ragged rows also throw kParse.
Eigen::MatrixXd read_matrix(const std::filesystem::path& path,
                            const ReadOptions& opts = {});

/// One integer per line (first column if the file has several).
std::vector<int> read_labels(const std::filesystem::path& path,
                             const ReadOptions& opts = {});

/// Writes with 17 significant digits so values round-trip exactly.
void write_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m);
void write_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m,
                  std::span<const int> trailing_labels);
void write_labels(const std::filesystem::path& path, std::span<const int> labels);

}  // namespace mvm::csv
