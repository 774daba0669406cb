// core/src/embedding.cpp

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

#include "mvmanifold/embedding.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "mvmanifold/error.hpp"

namespace mvm {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kConfig: return "configuration error";
    case ErrorKind::kIo: return "i/o error";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kAlignment: return "alignment error";
    case ErrorKind::kCapacity: return "capacity error";
    case ErrorKind::kDegenerateInput: return "degenerate input";
    case ErrorKind::kCalibration: return "calibration error";
    case ErrorKind::kOptimization: return "optimization error";
    case ErrorKind::kNumerical: return "numerical error";
    case ErrorKind::kUndefinedInput: return "undefined input";
    case ErrorKind::kDomain: return "domain error";
  }
  return "error";
}

ViewWeights::ViewWeights(std::vector<double> w) : w_(std::move(w)) {
  require(!w_.empty(), ErrorKind::kConfig, "view weights must be non-empty");
  double sum = 0.0;
  for (double v : w_) {
    require(std::isfinite(v) && v >= 0.0, ErrorKind::kConfig,
            "view weights must be finite and nonnegative");
    sum += v;
  }
  require(std::abs(sum - 1.0) <= kSumTolerance, ErrorKind::kConfig,
          "view weights must sum to 1 (got " + std::to_string(sum) + ")");
}

ViewWeights ViewWeights::uniform(std::size_t n_views) {
  require(n_views > 0, ErrorKind::kConfig, "need at least one view");
  ViewWeights out;
  out.w_.assign(n_views, 1.0 / static_cast<double>(n_views));
  return out;
}

ViewWeights ViewWeights::normalized(std::vector<double> raw) {
  require(!raw.empty(), ErrorKind::kConfig, "view weights must be non-empty");
  double sum = 0.0;
  for (double v : raw) {
    require(std::isfinite(v) && v >= 0.0, ErrorKind::kConfig,
            "view weights must be finite and nonnegative");
    sum += v;
  }
  if (sum <= 0.0) return uniform(raw.size());
  for (double& v : raw) v /= sum;
  ViewWeights out;
  out.w_ = std::move(raw);
  return out;
}

ViewWeights ViewWeights::single(std::size_t n_views, std::size_t view) {
  require(view < n_views, ErrorKind::kConfig, "view index out of range");
  ViewWeights out;
  out.w_.assign(n_views, 0.0);
  out.w_[view] = 1.0;
  return out;
}

std::string ViewWeights::to_string() const {
  std::ostringstream os;
  for (std::size_t m = 0; m < w_.size(); ++m) {
    if (m) os << ';';
    os << w_[m];
  }
  return os.str();
}

}  // namespace mvm
