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

#ifndef SRECRIT_LANCZOS_HPP_
#define SRECRIT_LANCZOS_HPP_

#include <Eigen/Eigenvalues>

#include <cmath>
#include <vector>

#include "srecrit/common.hpp"

namespace srecrit {

struct LanczosOptions {
  int max_iterations = 300;
  /// Converged when the residual norm ||H v - E v|| drops below this.
  double residual_tolerance = 1e-10;
  /// Restart the Krylov space after this many vectors (thick restart with the
  /// current Ritz vector).
  int max_basis = 120;
};

struct LanczosResult {
  double eigenvalue = 0.0;
  Eigen::VectorXd eigenvector;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Lowest eigenpair of a real symmetric operator given as a matvec.
///
/// `apply(in, out)` computes out = H in; `project(v)` maps a vector onto the
/// invariant subspace to search in (identity for the full space). Full
/// reorthogonalization, restarted from the Ritz vector when the basis fills.
template <typename Apply, typename Project>
LanczosResult lanczos_lowest(Apply&& apply, Project&& project, Eigen::VectorXd start,
                             const LanczosOptions& opt = {}) {
  using Eigen::VectorXd;
  LanczosResult res;
  const Index dim = start.size();
  project(start);
  double nrm = start.norm();
  require(nrm > 0.0, "lanczos_lowest: start vector vanishes in the requested subspace");
  VectorXd ritz = start / nrm;

  VectorXd w(dim);
  int total = 0;
  while (total < opt.max_iterations) {
    std::vector<VectorXd> basis;
    std::vector<double> alpha;
    std::vector<double> beta;
    basis.push_back(ritz);
    bool breakdown = false;
    Eigen::VectorXd coeffs;
    for (;;) {
      const VectorXd& v = basis.back();
      apply(v, w);
      project(w);
      ++total;
      const double a = v.dot(w);
      alpha.push_back(a);
      // Two passes of Gram-Schmidt against the whole basis.
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : basis) w -= q.dot(w) * q;
      }
      const double b = w.norm();

      const int m = static_cast<int>(alpha.size());
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
      for (int i = 0; i < m; ++i) {
        t(i, i) = alpha[i];
        if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
      res.eigenvalue = es.eigenvalues()(0);
      coeffs = es.eigenvectors().col(0);
      res.residual = std::abs(b * coeffs(m - 1));
      // Breakdown threshold relative to the spectral scale seen so far.
      const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
      breakdown = b <= 1e-14 * scale;
      if (res.residual < opt.residual_tolerance || breakdown || m >= opt.max_basis ||
          m >= dim || total >= opt.max_iterations) {
        break;
      }
      beta.push_back(b);
      basis.push_back(w / b);
    }
    ritz.setZero(dim);
    for (Index i = 0; i < coeffs.size(); ++i) ritz += coeffs(i) * basis[static_cast<std::size_t>(i)];
    ritz.normalize();
    if (res.residual < opt.residual_tolerance || breakdown ||
        static_cast<Index>(basis.size()) >= dim) {
      res.converged = true;
      break;
    }
  }
  res.iterations = total;
  // Recompute the true residual from scratch.
  apply(ritz, w);
  project(w);
  res.eigenvalue = ritz.dot(w);
  res.residual = (w - res.eigenvalue * ritz).norm();
  res.converged = res.converged || res.residual < opt.residual_tolerance;
  res.eigenvector = std::move(ritz);
  return res;
}

}  // namespace srecrit

#endif  // SRECRIT_LANCZOS_HPP_
