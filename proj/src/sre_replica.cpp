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

#include "srecrit/sre_replica.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace srecrit {
namespace {

template <typename Scalar>
using Matrix = MatrixX<Scalar>;

template <typename Scalar>
using Site4 = std::array<Matrix<Scalar>, 4>;

/// Truncated factorization T = U diag(s) V^T given tt = T^T (D x k rows).
/// Returns U (rows of T x kept) and W = (diag(s) V^T)^T (D x kept).
template <typename Scalar>
struct RowSplit {
  Matrix<Scalar> u;
  Matrix<Scalar> w;
  double discarded = 0.0;
};

template <typename Scalar>
RowSplit<Scalar> split_rows(const Matrix<Scalar>& tt, double cutoff, Index cap) {
  RowSplit<Scalar> out;
  Matrix<Scalar> left;
  Matrix<Scalar> right;
  Eigen::VectorXd s;
  auto factor = [&](const Matrix<Scalar>& m) {
    auto svd = thin_svd(m);
    s = std::move(svd.s);
    left = std::move(svd.u);
    right = std::move(svd.v);
  };
  if (tt.rows() > 2 * tt.cols()) {
    // Wide T: reduce to a square core first.
    Eigen::HouseholderQR<Matrix<Scalar>> qr(tt);
    const Index k = tt.cols();
    const Matrix<Scalar> r = qr.matrixQR().topRows(k).template triangularView<Eigen::Upper>();
    factor(r);
    Matrix<Scalar> padded = Matrix<Scalar>::Zero(tt.rows(), left.cols());
    padded.topRows(k) = left;
    left = qr.householderQ() * padded;
  } else {
    factor(tt);
  }
  const Index keep = truncation_rank(s, cutoff, cap);
  const double total = s.squaredNorm();
  out.discarded = total > 0.0 ? std::max(0.0, 1.0 - s.head(keep).squaredNorm() / total) : 0.0;
  out.u = right.leftCols(keep).conjugate();
  out.w = left.leftCols(keep) * s.head(keep).asDiagonal();
  return out;
}

/// Left-to-right zip. `step(j, m, x)` maps a running block x (rows of the
/// carried matrix, reshaped) to the block after site j with label m; `shape`
/// gives the next block's dimensions.
template <typename Scalar, typename Step, typename Shape>
std::vector<Site4<Scalar>> zip_up(std::size_t n, Step step, Shape shape, double cutoff, Index cap,
                                  double& kept) {
  std::vector<Site4<Scalar>> sites(n);
  std::vector<Matrix<Scalar>> carry{Matrix<Scalar>::Ones(1, 1)};
  for (std::size_t j = 0; j < n; ++j) {
    const auto [ra, rb] = shape(j);
    const Index r = static_cast<Index>(carry.size());
    const double bytes = static_cast<double>(ra) * rb * 4 * r * sizeof(Scalar);
    if (bytes > kReplicaStepBytes) {
      throw BudgetExceeded("replica zip step needs " + std::to_string(static_cast<long>(bytes / (1 << 20))) +
                           " MiB at site " + std::to_string(j) + "; lower the bond cap");
    }
    Matrix<Scalar> tt(ra * rb, 4 * r);
    for (int m = 0; m < 4; ++m) {
      for (Index i = 0; i < r; ++i) {
        const Matrix<Scalar> y = step(j, m, carry[i]);
        tt.col(m * r + i) = Eigen::Map<const VectorX<Scalar>>(y.data(), y.size());
      }
    }
    if (j + 1 == n) {
      for (int m = 0; m < 4; ++m) sites[j][m] = tt.middleCols(m * r, r).transpose();
      break;
    }
    auto sp = split_rows<Scalar>(tt, cutoff, cap);
    kept *= 1.0 - sp.discarded;
    const Index k = sp.u.cols();
    for (int m = 0; m < 4; ++m) sites[j][m] = sp.u.middleRows(m * r, r);
    carry.assign(k, Matrix<Scalar>());
    for (Index i = 0; i < k; ++i) carry[i] = Eigen::Map<const Matrix<Scalar>>(sp.w.col(i).data(), ra, rb);
  }
  return sites;
}

/// Right-to-left truncation sweep; leaves sites 1.. right-isometric.
template <typename Scalar>
void sweep_left(std::vector<Site4<Scalar>>& sites, double cutoff, Index cap, double& kept) {
  for (std::size_t j = sites.size(); j-- > 1;) {
    auto& a = sites[j];
    const Index rl = a[0].rows();
    const Index rr = a[0].cols();
    Matrix<Scalar> h(rl, 4 * rr);
    for (int m = 0; m < 4; ++m) h.middleCols(m * rr, rr) = a[m];
    auto svd = truncated_svd(h, cutoff, cap);
    kept *= 1.0 - svd.discarded;
    for (int m = 0; m < 4; ++m) a[m] = svd.vh.middleCols(m * rr, rr);
    const Matrix<Scalar> us = svd.u * svd.s.asDiagonal();
    for (int m = 0; m < 4; ++m) sites[j - 1][m] = sites[j - 1][m] * us;
  }
}

}  // namespace

template <typename Scalar>
std::vector<Index> PauliBasisMps<Scalar>::bond_dims() const {
  std::vector<Index> out;
  for (std::size_t j = 0; j + 1 < sites.size(); ++j) out.push_back(sites[j][0].cols());
  return out;
}

template <typename Scalar>
Index PauliBasisMps<Scalar>::max_bond_dim() const {
  Index best = 1;
  for (Index b : bond_dims()) best = std::max(best, b);
  return best;
}

template <typename Scalar>
double PauliBasisMps<Scalar>::norm_squared() const {
  // Full contraction; singular vectors of near-zero singular values are not
  // reliably orthonormal, so the canonical shortcut is not used.
  Matrix<Scalar> e = Matrix<Scalar>::Ones(1, 1);
  for (const auto& site : sites) {
    Matrix<Scalar> next = Matrix<Scalar>::Zero(site[0].cols(), site[0].cols());
    for (int m = 0; m < 4; ++m) next.noalias() += site[m].adjoint() * e * site[m];
    e = std::move(next);
  }
  return real_part(e(0, 0));
}

template <typename Scalar>
double PauliBasisMps<Scalar>::entry(const PauliString& m) const {
  require(m.length() == num_sites(), "PauliBasisMps::entry: label length does not match");
  const double phase = std::pow(y_phase_correction<Scalar>(m.count_y()), power);
  if (phase == 0.0) return 0.0;
  Matrix<Scalar> e = Matrix<Scalar>::Ones(1, 1);
  for (std::size_t j = 0; j < num_sites(); ++j) e = e * sites[j][static_cast<int>(m[j])];
  return phase * real_part(e(0, 0));
}

template <typename Scalar>
PauliBasisMps<Scalar> build_pauli_mps(const MatrixProductState<Scalar>& mps, Index bond_cap, double cutoff) {
  require(bond_cap >= 1, "build_pauli_mps: bond cap must be >= 1");
  MatrixProductState<Scalar> m = mps;
  m.move_center(0);
  m.normalize();
  const std::size_t n = m.num_sites();
  std::vector<std::array<std::array<Matrix<Scalar>, 2>, 4>> applied(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (int p = 0; p < 4; ++p) applied[j][p] = apply_site_pauli(m.site(j), static_cast<Pauli>(p));
  }
  const double scale = std::numbers::sqrt2 / 2.0;
  auto step = [&](std::size_t j, int p, const Matrix<Scalar>& x) {
    const auto& a = m.site(j);
    const auto& b = applied[j][p];
    Matrix<Scalar> y = a[0].adjoint() * x * b[0];
    y.noalias() += a[1].adjoint() * x * b[1];
    return Matrix<Scalar>(scale * y);
  };
  auto shape = [&](std::size_t j) { return std::pair<Index, Index>(m.site(j)[0].cols(), m.site(j)[0].cols()); };
  double kept = 1.0;
  PauliBasisMps<Scalar> out;
  out.sites = zip_up<Scalar>(n, step, shape, cutoff, bond_cap, kept);
  sweep_left(out.sites, cutoff, bond_cap, kept);
  out.power = 1;
  out.bond_cap = bond_cap;
  out.discarded = 1.0 - kept;
  return out;
}

template <typename Scalar>
PauliBasisMps<Scalar> hadamard_product(const PauliBasisMps<Scalar>& a, const PauliBasisMps<Scalar>& b,
                                       Index bond_cap, double cutoff) {
  require(a.num_sites() == b.num_sites() && a.num_sites() > 0, "hadamard_product: site counts differ");
  require(bond_cap >= 1, "hadamard_product: bond cap must be >= 1");
  auto step = [&](std::size_t j, int p, const Matrix<Scalar>& x) {
    return Matrix<Scalar>(a.sites[j][p].transpose() * x * b.sites[j][p]);
  };
  auto shape = [&](std::size_t j) {
    return std::pair<Index, Index>(a.sites[j][0].cols(), b.sites[j][0].cols());
  };
  double kept = (1.0 - a.discarded) * (1.0 - b.discarded);
  PauliBasisMps<Scalar> out;
  out.sites = zip_up<Scalar>(a.num_sites(), step, shape, cutoff, bond_cap, kept);
  sweep_left(out.sites, cutoff, bond_cap, kept);
  out.power = a.power + b.power;
  out.bond_cap = bond_cap;
  out.discarded = 1.0 - kept;
  return out;
}

template <typename Scalar>
PauliBasisMps<Scalar> hadamard_power(const PauliBasisMps<Scalar>& p, int n, Index bond_cap, double cutoff) {
  require(n >= 2, "hadamard_power: n must be >= 2");
  require(p.power == 1, "hadamard_power: input must be a first power");
  PauliBasisMps<Scalar> out = hadamard_product(p, p, bond_cap, cutoff);
  for (int k = 2; k < n; ++k) out = hadamard_product(out, p, bond_cap, cutoff);
  return out;
}

template <typename Scalar>
SreEstimate sre_from_replica(const PauliBasisMps<Scalar>& p_n, int n) {
  require(n >= 2, "sre_from_replica: n must be >= 2");
  require(p_n.power == n, "sre_from_replica: power does not match n");
  const double norm2 = p_n.norm_squared();
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
    throw Error("sre_from_replica: non-positive inner product; truncation too aggressive");
  }
  SreEstimate e;
  const std::size_t l = p_n.num_sites();
  e.value = std::log(norm2) / (1.0 - n) - static_cast<double>(l) * std::numbers::ln2;
  e.alpha = n;
  e.method = "replica";
  e.num_sites = l;
  e.diagnostics["chi_p"] = static_cast<double>(p_n.max_bond_dim());
  e.diagnostics["discarded_weight"] = p_n.discarded;
  // The norm moves by at most the discarded fraction (to first order).
  e.diagnostics["bias_bound"] = p_n.discarded < 1.0 ? -std::log1p(-p_n.discarded) / (n - 1.0) : INFINITY;
  return e;
}

template <typename Scalar>
SreEstimate sre_replica(const MatrixProductState<Scalar>& mps, int n, Index bond_cap, double cutoff,
                        ReplicaTruncation truncation) {
  const auto p = build_pauli_mps(mps, bond_cap, cutoff);
  const Index power_cap =
      truncation == ReplicaTruncation::every_application ? bond_cap : std::numeric_limits<Index>::max();
  auto e = sre_from_replica(hadamard_power(p, n, power_cap, cutoff), n);
  if (bond_cap != std::numeric_limits<Index>::max()) e.diagnostics["bond_cap"] = static_cast<double>(bond_cap);
  return e;
}

template <typename Scalar>
SreEstimate sre_replica_converged(const MatrixProductState<Scalar>& mps, int n, const ReplicaOptions& options) {
  require(options.convergence > 0.0, "sre_replica_converged: convergence must be > 0");
  Index cap = options.bond_cap > 0 ? options.bond_cap : 4 * mps.max_bond_dim();
  require(cap >= 1 && cap <= options.max_bond_cap, "sre_replica_converged: bad initial bond cap");
  SreEstimate prev = sre_replica(mps, n, cap, options.cutoff, options.truncation);
  while (true) {
    const Index next = 2 * cap;
    if (next > options.max_bond_cap) {
      prev.flags.push_back("not_converged");
      return prev;
    }
    SreEstimate cur;
    try {
      cur = sre_replica(mps, n, next, options.cutoff, options.truncation);
    } catch (const BudgetExceeded&) {
      prev.flags.push_back("not_converged");
      return prev;
    }
    const double delta = std::abs(cur.value - prev.value);
    cur.diagnostics["delta"] = delta;
    cur.diagnostics["bond_cap"] = static_cast<double>(next);
    if (delta < options.convergence) return cur;
    // Once the cap no longer binds, doubling changes nothing.
    if (cur.diagnostics["chi_p"] < static_cast<double>(next) && prev.diagnostics["chi_p"] < static_cast<double>(cap)) {
      return cur;
    }
    prev = std::move(cur);
    cap = next;
  }
}

#define SRECRIT_INSTANTIATE(S)                                                                              \
  template struct PauliBasisMps<S>;                                                                         \
  template PauliBasisMps<S> build_pauli_mps(const MatrixProductState<S>&, Index, double);                   \
  template PauliBasisMps<S> hadamard_product(const PauliBasisMps<S>&, const PauliBasisMps<S>&, Index, double); \
  template PauliBasisMps<S> hadamard_power(const PauliBasisMps<S>&, int, Index, double);                    \
  template SreEstimate sre_from_replica(const PauliBasisMps<S>&, int);                                      \
  template SreEstimate sre_replica(const MatrixProductState<S>&, int, Index, double, ReplicaTruncation);    \
  template SreEstimate sre_replica_converged(const MatrixProductState<S>&, int, const ReplicaOptions&);

SRECRIT_INSTANTIATE(double)
SRECRIT_INSTANTIATE(cplx)

#undef SRECRIT_INSTANTIATE

}  // namespace srecrit
