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
#include "srecrit/fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>

#include "srecrit/bcft.hpp"

namespace srecrit {

std::string to_string(FitModel m) {
  switch (m) {
    case FitModel::linear:
      return "linear";
    case FitModel::linear_inverse:
      return "linear+1/L";
    case FitModel::log_slope:
      return "log-slope";
  }
  return "?";
}

namespace {

std::size_t index_of(const FitResult& r, const std::string& name) {
  const auto it = std::find(r.names.begin(), r.names.end(), name);
  if (it == r.names.end()) throw Error("FitResult: no parameter named " + name);
  return static_cast<std::size_t>(it - r.names.begin());
}

void sort_by_x(std::vector<FitPoint>& points) {
  std::sort(points.begin(), points.end(), [](const FitPoint& a, const FitPoint& b) { return a.x < b.x; });
}

// Column j of the design is basis[j] evaluated at each x. Callers sort the
// points so the result does not depend on input order.
FitResult least_squares(std::vector<FitPoint> points, const std::vector<double (*)(double)>& basis,
                        std::vector<std::string> names, FitModel model, const FitOptions& options) {
  const auto n = static_cast<Eigen::Index>(points.size());
  const auto p = static_cast<Eigen::Index>(basis.size());
  for (const auto& pt : points) {
    require(std::isfinite(pt.x) && std::isfinite(pt.y), "fit: non-finite data point");
    if (options.weighted) require(pt.std_error > 0.0, "fit: weighted fit needs positive std errors");
  }
  Eigen::MatrixXd a(n, p);
  Eigen::VectorXd y(n), w = Eigen::VectorXd::Ones(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& pt = points[static_cast<std::size_t>(i)];
    if (options.weighted) w(i) = 1.0 / pt.std_error;
    for (Eigen::Index j = 0; j < p; ++j) a(i, j) = basis[static_cast<std::size_t>(j)](pt.x) * w(i);
    y(i) = pt.y * w(i);
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < p) throw Error("fit: rank-deficient design (" + to_string(model) + ")");
  const Eigen::VectorXd beta = qr.solve(y);
  const Eigen::VectorXd res_w = y - a * beta;

  FitResult r;
  r.model = model;
  r.names = std::move(names);
  r.weighted = options.weighted;
  r.params.assign(beta.data(), beta.data() + p);
  r.rss = res_w.squaredNorm();
  r.window = points;
  for (Eigen::Index i = 0; i < n; ++i) r.residuals.push_back(res_w(i) / w(i));

  // (A^T A)^{-1} from the triangular factor: A P = Q R.
  const Eigen::MatrixXd rr = qr.matrixR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd rinv = rr.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
  const Eigen::MatrixXd cov_perm = rinv * rinv.transpose();
  const Eigen::MatrixXd cov = qr.colsPermutation() * cov_perm * qr.colsPermutation().transpose();
  // Unweighted: scale by the residual variance. Weighted: the weights carry it.
  const double dof = static_cast<double>(n - p);
  const double s2 = options.weighted ? 1.0 : (dof > 0 ? r.rss / dof : 0.0);
  for (Eigen::Index j = 0; j < p; ++j) r.std_errors.push_back(std::sqrt(std::max(0.0, cov(j, j) * s2)));
  return r;
}

void require_distinct_x(const std::vector<FitPoint>& points, const char* what) {
  std::set<double> xs;
  for (const auto& pt : points) xs.insert(pt.x);
  if (xs.size() != points.size()) throw Error(std::string(what) + ": repeated abscissa");
}

}  // namespace

double FitResult::param(const std::string& name) const { return params[index_of(*this, name)]; }
double FitResult::std_error(const std::string& name) const { return std_errors[index_of(*this, name)]; }

FitResult fit_sre_scaling(std::vector<FitPoint> points, bool with_inverse_correction, const FitOptions& options) {
  const std::size_t need = with_inverse_correction ? 4 : 3;
  require(points.size() >= need, "fit_sre_scaling: need at least " + std::to_string(need) + " points");
  require_distinct_x(points, "fit_sre_scaling");
  sort_by_x(points);
  for (const auto& pt : points) require(pt.x > 0.0, "fit_sre_scaling: L must be positive");
  std::vector<double (*)(double)> basis = {[](double x) { return x; }, [](double) { return -1.0; }};
  std::vector<std::string> names = {"m", "c"};
  if (with_inverse_correction) {
    basis.push_back([](double x) { return 1.0 / x; });
    names.push_back("r");
  }
  return least_squares(std::move(points), basis, std::move(names),
                       with_inverse_correction ? FitModel::linear_inverse : FitModel::linear, options);
}

FitResult fit_log_slope(std::vector<FitPoint> points, double num_sites, const LogSlopeOptions& options) {
  require(num_sites >= 2.0, "fit_log_slope: need L >= 2");
  const auto [lo, hi] = options.window.value_or(std::pair{num_sites / 4.0, 3.0 * num_sites / 4.0});
  std::vector<FitPoint> kept;
  for (const auto& pt : points) {
    require(pt.x >= 1.0 && pt.x <= num_sites - 1.0, "fit_log_slope: l outside [1, L-1]");
    if (pt.x < lo || pt.x > hi) continue;
    kept.push_back(pt);
  }
  require(kept.size() >= 3, "fit_log_slope: need at least 3 points inside the window");
  require_distinct_x(kept, "fit_log_slope");
  sort_by_x(kept);
  std::vector<FitPoint> mapped = kept;
  for (auto& pt : mapped) pt.x = std::log(chord_length(pt.x, num_sites));
  std::vector<double (*)(double)> basis = {[](double x) { return x; }, [](double) { return 1.0; }};
  FitResult r = least_squares(std::move(mapped), basis, {"slope", "intercept"}, FitModel::log_slope, options);
  // Report the window in terms of l rather than ln l_c.
  r.window = std::move(kept);
  return r;
}

}  // namespace srecrit
