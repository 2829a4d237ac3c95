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

#ifndef SRECRIT_MPS_HPP_
#define SRECRIT_MPS_HPP_

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "srecrit/common.hpp"
#include "srecrit/dense_state.hpp"
#include "srecrit/pauli.hpp"

namespace srecrit {

template <typename Scalar>
struct SvdFactors {
  MatrixX<Scalar> u;
  Eigen::VectorXd s;
  MatrixX<Scalar> v;
};

/// Thin SVD. BDCSVD can return factors that are orthonormal but do not
/// reproduce the input when singular values cluster; the reconstruction is
/// checked and JacobiSVD used instead in that case.
template <typename Derived>
SvdFactors<typename Derived::Scalar> thin_svd(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using Matrix = MatrixX<Scalar>;
  SvdFactors<Scalar> out;
  {
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    out.u = svd.matrixU();
    out.s = svd.singularValues();
    out.v = svd.matrixV();
  }
  const double scale = m.norm();
  if (scale == 0.0) return out;
  const double err = (m - out.u * out.s.asDiagonal() * out.v.adjoint()).norm();
  if (err <= 1e-13 * scale * std::sqrt(static_cast<double>(std::min(m.rows(), m.cols())))) return out;
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  out.u = svd.matrixU();
  out.s = svd.singularValues();
  out.v = svd.matrixV();
  return out;
}

template <typename Scalar>
struct TruncatedSvd {
  MatrixX<Scalar> u;
  Eigen::VectorXd s;
  MatrixX<Scalar> vh;
  /// Discarded sum of squared singular values relative to the total.
  double discarded = 0.0;
};

/// Number of singular values to keep: the fewest whose discarded relative
/// weight is <= cutoff, at least 1 and at most max_bond.
inline Index truncation_rank(const Eigen::VectorXd& s, double cutoff, Index max_bond) {
  const double total = s.squaredNorm();
  if (total <= 0.0) return 1;
  Index keep = s.size();
  double tail = 0.0;
  while (keep > 1) {
    const double w = s(keep - 1) * s(keep - 1);
    if ((tail + w) / total > cutoff) break;
    tail += w;
    --keep;
  }
  return std::min(keep, std::max<Index>(max_bond, 1));
}

template <typename Derived>
auto truncated_svd(const Eigen::MatrixBase<Derived>& m, double cutoff,
                   Index max_bond = std::numeric_limits<Index>::max()) {
  using Scalar = typename Derived::Scalar;
  const auto svd = thin_svd(m);
  TruncatedSvd<Scalar> out;
  const Eigen::VectorXd& s = svd.s;
  const Index k = truncation_rank(s, cutoff, max_bond);
  const double total = s.squaredNorm();
  out.u = svd.u.leftCols(k);
  out.s = s.head(k);
  out.vh = svd.v.leftCols(k).adjoint();
  out.discarded = total > 0.0 ? std::max(0.0, 1.0 - out.s.squaredNorm() / total) : 0.0;
  return out;
}

/// Sigma[s] = sum_t pauli(s, t) A[t] for one site. With a real scalar Y acts
/// as iY; see pauli_matrix.
template <typename Scalar>
std::array<MatrixX<Scalar>, 2> apply_site_pauli(const std::array<MatrixX<Scalar>, 2>& a,
                                                Pauli p) {
  switch (p) {
    case Pauli::I:
      return a;
    case Pauli::X:
      return {a[1], a[0]};
    case Pauli::Z:
      return {a[0], -a[1]};
    case Pauli::Y:
      if constexpr (is_complex_v<Scalar>) {
        return {Scalar(0, -1) * a[1], Scalar(0, 1) * a[0]};
      } else {
        return {a[1], -a[0]};
      }
  }
  return a;
}

/// Factor converting an expectation computed with pauli_matrix<Scalar> back to
/// the true Pauli expectation, given the number of Y sites involved.
template <typename Scalar>
double y_phase_correction(std::size_t num_y) {
  if constexpr (is_complex_v<Scalar>) {
    return 1.0;
  } else {
    // <Y..> = (-i)^{#Y} <(iY)..>; odd counts are purely imaginary, i.e. zero.
    if (num_y % 2) return 0.0;
    return (num_y % 4) ? -1.0 : 1.0;
  }
}

/// Open-boundary matrix product state. Site j (0-based) holds two matrices
/// A_j[s] of shape chi_{j} x chi_{j+1}; chi_0 = chi_L = 1.
template <typename Scalar>
class MatrixProductState {
 public:
  using Matrix = MatrixX<Scalar>;
  using SiteTensor = std::array<Matrix, 2>;

  MatrixProductState(std::vector<SiteTensor> tensors, std::size_t center)
      : tensors_(std::move(tensors)), center_(center) {
    require(!tensors_.empty(), "MatrixProductState: no sites");
    require(center_ < tensors_.size(), "MatrixProductState: center out of range");
    require(tensors_.front()[0].rows() == 1 && tensors_.back()[0].cols() == 1,
            "MatrixProductState: boundary bonds must have dimension 1");
    for (std::size_t j = 0; j < tensors_.size(); ++j) {
      const auto& t = tensors_[j];
      require(t[0].rows() == t[1].rows() && t[0].cols() == t[1].cols(),
              "MatrixProductState: physical slices differ in shape");
      if (j + 1 < tensors_.size()) {
        require(t[0].cols() == tensors_[j + 1][0].rows(),
                "MatrixProductState: bond dimensions do not chain");
      }
    }
  }

  /// Computational basis product state; bit j of `bits` is site j.
  static MatrixProductState product_state(std::size_t num_sites, std::uint64_t bits = 0) {
    std::vector<SiteTensor> t(num_sites);
    for (std::size_t j = 0; j < num_sites; ++j) {
      t[j] = {Matrix::Zero(1, 1), Matrix::Zero(1, 1)};
      t[j][(bits >> j) & 1u](0, 0) = Scalar(1);
    }
    return MatrixProductState(std::move(t), 0);
  }

  std::size_t num_sites() const { return tensors_.size(); }
  std::size_t center() const { return center_; }
  const SiteTensor& site(std::size_t j) const { return tensors_[j]; }
  const std::vector<SiteTensor>& tensors() const { return tensors_; }

  /// Dimension of the link between sites j and j+1.
  Index bond_dim(std::size_t j) const { return tensors_[j][0].cols(); }
  std::vector<Index> bond_dims() const {
    std::vector<Index> d;
    for (std::size_t j = 0; j + 1 < tensors_.size(); ++j) d.push_back(bond_dim(j));
    return d;
  }
  Index max_bond_dim() const {
    Index m = 1;
    for (std::size_t j = 0; j + 1 < tensors_.size(); ++j) m = std::max(m, bond_dim(j));
    return m;
  }

  /// Accumulated relative discarded weight from the construction.
  double discarded_weight() const { return discarded_; }
  void set_discarded_weight(double w) { discarded_ = w; }

  /// Shifts the orthogonality center by QR sweeps.
  void move_center(std::size_t target) {
    require(target < tensors_.size(), "move_center: target out of range");
    while (center_ < target) shift_right();
    while (center_ > target) shift_left();
  }

  /// ||sum_s A[s]^dagger A[s] - I||_F for site j.
  double left_isometry_residual(std::size_t j) const {
    const auto& a = tensors_[j];
    Matrix g = a[0].adjoint() * a[0] + a[1].adjoint() * a[1];
    return (g - Matrix::Identity(g.rows(), g.cols())).norm();
  }
  /// ||sum_s A[s] A[s]^dagger - I||_F for site j.
  double right_isometry_residual(std::size_t j) const {
    const auto& a = tensors_[j];
    Matrix g = a[0] * a[0].adjoint() + a[1] * a[1].adjoint();
    return (g - Matrix::Identity(g.rows(), g.cols())).norm();
  }
  /// Largest isometry defect over all non-center sites.
  double canonical_residual() const {
    double r = 0.0;
    for (std::size_t j = 0; j < center_; ++j) r = std::max(r, left_isometry_residual(j));
    for (std::size_t j = center_ + 1; j < tensors_.size(); ++j) {
      r = std::max(r, right_isometry_residual(j));
    }
    return r;
  }

  /// Norm, read off the center tensor (valid in canonical form).
  double norm() const {
    const auto& c = tensors_[center_];
    return std::sqrt(c[0].squaredNorm() + c[1].squaredNorm());
  }
  void normalize() {
    const double n = norm();
    require(n > 0.0, "MatrixProductState::normalize: zero state");
    tensors_[center_][0] /= n;
    tensors_[center_][1] /= n;
  }

  /// psi(b) for a basis index (bit j = site j).
  Scalar amplitude(std::uint64_t b) const {
    Matrix v = tensors_[0][b & 1u];
    for (std::size_t j = 1; j < tensors_.size(); ++j) v = v * tensors_[j][(b >> j) & 1u];
    return v(0, 0);
  }

  /// Full contraction to a 2^L vector; limited to L <= 24.
  VectorX<Scalar> to_vector() const {
    if (tensors_.size() > 24) throw BudgetExceeded("to_vector: more than 24 sites");
    Matrix c = Matrix::Ones(1, 1);
    for (const auto& t : tensors_) {
      Matrix n(2 * c.rows(), t[0].cols());
      n.topRows(c.rows()) = c * t[0];
      n.bottomRows(c.rows()) = c * t[1];
      c = std::move(n);
    }
    return Eigen::Map<const VectorX<Scalar>>(c.data(), c.rows());
  }
  DenseState<Scalar> to_dense() const {
    return DenseState<Scalar>::normalized(tensors_.size(), to_vector());
  }

  /// Mutable access for algorithms that rebuild tensors in place; callers
  /// restore the canonical form themselves.
  SiteTensor& mutable_site(std::size_t j) { return tensors_[j]; }
  void set_center_unchecked(std::size_t c) { center_ = c; }

 private:
  void shift_right() {
    auto& a = tensors_[center_];
    const Index rl = a[0].rows();
    Matrix m(2 * rl, a[0].cols());
    m << a[0], a[1];
    Eigen::HouseholderQR<Matrix> qr(m);
    const Index k = std::min(m.rows(), m.cols());
    Matrix q = qr.householderQ() * Matrix::Identity(m.rows(), k);
    Matrix r = qr.matrixQR().topRows(k).template triangularView<Eigen::Upper>();
    a[0] = q.topRows(rl);
    a[1] = q.bottomRows(rl);
    auto& b = tensors_[center_ + 1];
    b[0] = r * b[0];
    b[1] = r * b[1];
    ++center_;
  }
  void shift_left() {
    auto& a = tensors_[center_];
    const Index cr = a[0].cols();
    Matrix m(a[0].rows(), 2 * cr);
    m << a[0], a[1];
    Matrix mt = m.adjoint();
    Eigen::HouseholderQR<Matrix> qr(mt);
    const Index k = std::min(mt.rows(), mt.cols());
    Matrix q = qr.householderQ() * Matrix::Identity(mt.rows(), k);
    Matrix r = qr.matrixQR().topRows(k).template triangularView<Eigen::Upper>();
    Matrix qh = q.adjoint();
    a[0] = qh.leftCols(cr);
    a[1] = qh.rightCols(cr);
    Matrix rh = r.adjoint();
    auto& b = tensors_[center_ - 1];
    b[0] = b[0] * rh;
    b[1] = b[1] * rh;
    --center_;
  }

  std::vector<SiteTensor> tensors_;
  std::size_t center_;
  double discarded_ = 0.0;
};

using RealMps = MatrixProductState<double>;
using ComplexMps = MatrixProductState<cplx>;

/// Right-to-left sequential SVD. Each bond keeps the fewest singular values
/// whose discarded relative weight is <= svd_cutoff. The result has its
/// center at site 0, every other site a right isometry, and unit norm.
template <typename Scalar>
MatrixProductState<Scalar> mps_from_dense(const DenseState<Scalar>& state, double svd_cutoff,
                                          Index max_bond = std::numeric_limits<Index>::max()) {
  using Matrix = MatrixX<Scalar>;
  require(svd_cutoff >= 0.0, "mps_from_dense: negative cutoff");
  const std::size_t n = state.num_sites();
  std::vector<typename MatrixProductState<Scalar>::SiteTensor> t(n);
  // c(lo, s + 2 r): lo runs over sites 0..j-1, s is site j, r the right bond.
  Matrix c = Eigen::Map<const Matrix>(state.amplitudes().data(), state.dim() / 2, 2);
  double kept = 1.0;
  for (std::size_t j = n - 1; j > 0; --j) {
    auto svd = truncated_svd(c, svd_cutoff, max_bond);
    kept *= 1.0 - svd.discarded;
    const Index k = svd.s.size();
    const Index chi_r = svd.vh.cols() / 2;
    auto& a = t[j];
    a[0].resize(k, chi_r);
    a[1].resize(k, chi_r);
    for (Index r = 0; r < chi_r; ++r) {
      a[0].col(r) = svd.vh.col(2 * r);
      a[1].col(r) = svd.vh.col(2 * r + 1);
    }
    const Matrix us = svd.u * svd.s.asDiagonal();
    // Split lo = lo' + 2^{j-1} s into rows lo' and column s + 2 a.
    const Index half = us.rows() / 2;
    c.resize(half, 2 * k);
    for (Index col = 0; col < k; ++col) {
      c.col(2 * col) = us.col(col).head(half);
      c.col(2 * col + 1) = us.col(col).tail(half);
    }
  }
  auto& a0 = t[0];
  const Index chi_r = c.cols() / 2;
  a0[0].resize(1, chi_r);
  a0[1].resize(1, chi_r);
  for (Index r = 0; r < chi_r; ++r) {
    a0[0](0, r) = c(0, 2 * r);
    a0[1](0, r) = c(0, 2 * r + 1);
  }
  MatrixProductState<Scalar> mps(std::move(t), 0);
  mps.normalize();
  mps.set_discarded_weight(1.0 - kept);
  return mps;
}

/// <a|b>.
template <typename Scalar>
Scalar overlap(const MatrixProductState<Scalar>& a, const MatrixProductState<Scalar>& b) {
  require(a.num_sites() == b.num_sites(), "overlap: site counts differ");
  MatrixX<Scalar> e = MatrixX<Scalar>::Ones(1, 1);
  for (std::size_t j = 0; j < a.num_sites(); ++j) {
    const auto& x = a.site(j);
    const auto& y = b.site(j);
    e = x[0].adjoint() * e * y[0] + x[1].adjoint() * e * y[1];
  }
  return e(0, 0);
}

/// One step of a left transfer: sum_s A[s]^dagger E B[s] with B = pauli A.
template <typename Scalar>
MatrixX<Scalar> left_transfer(const MatrixX<Scalar>& e,
                              const std::array<MatrixX<Scalar>, 2>& a, Pauli p) {
  const auto b = apply_site_pauli(a, p);
  return a[0].adjoint() * e * b[0] + a[1].adjoint() * e * b[1];
}

/// One step of a right transfer: sum_s conj(A[s]) F B[s]^T.
template <typename Scalar>
MatrixX<Scalar> right_transfer(const MatrixX<Scalar>& f,
                               const std::array<MatrixX<Scalar>, 2>& a, Pauli p) {
  const auto b = apply_site_pauli(a, p);
  return a[0].conjugate() * f * b[0].transpose() + a[1].conjugate() * f * b[1].transpose();
}

/// <psi|sigma^p|psi> by a single left-to-right transfer sweep.
template <typename Scalar>
double mps_expectation(const MatrixProductState<Scalar>& mps, const PauliString& p) {
  require(p.length() == mps.num_sites(), "mps_expectation: Pauli length does not match MPS");
  const double phase = y_phase_correction<Scalar>(p.count_y());
  if (phase == 0.0) return 0.0;
  MatrixX<Scalar> e = MatrixX<Scalar>::Ones(1, 1);
  for (std::size_t j = 0; j < mps.num_sites(); ++j) e = left_transfer(e, mps.site(j), p[j]);
  return phase * real_part(e(0, 0));
}

}  // namespace srecrit

#endif  // SRECRIT_MPS_HPP_
