// Copyright 2026 The srecrit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef SRECRIT_FIT_HPP_
#define SRECRIT_FIT_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "srecrit/common.hpp"

namespace srecrit {

enum class FitModel { linear, linear_inverse, log_slope };

std::string to_string(FitModel m);

/// One data point; std_error is used only by weighted fits.
struct FitPoint {
  double x = 0.0;
  double y = 0.0;
  double std_error = 0.0;
};

struct FitResult {
  FitModel model = FitModel::linear;
  std::vector<std::string> names;
  std::vector<double> params;
  std::vector<double> std_errors;
  double rss = 0.0;
  /// Points actually fitted (sorted by x) and their residuals y - model.
  std::vector<FitPoint> window;
  std::vector<double> residuals;
  bool weighted = false;

  double param(const std::string& name) const;
  double std_error(const std::string& name) const;
};

struct FitOptions {
  /// Inverse-variance weights from the points' std_error.
  bool weighted = false;
};

/// Least squares for M = m L - c (+ r / L) over points (L, M).
/// Parameters: "m", "c" and, with the correction, "r".
FitResult fit_sre_scaling(std::vector<FitPoint> points, bool with_inverse_correction, const FitOptions& options = {});

struct LogSlopeOptions : FitOptions {
  /// Inclusive l range; default [L/4, 3L/4]. Use {1, L-1} for every point.
  std::optional<std::pair<double, double>> window;
};

/// Least squares for value = a ln l_c + b over points (l, value), with
/// l_c = (L / pi) sin(pi l / L). Parameters: "slope", "intercept".
FitResult fit_log_slope(std::vector<FitPoint> points, double num_sites, const LogSlopeOptions& options = {});

}  // namespace srecrit

#endif  // SRECRIT_FIT_HPP_
