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

#include "srecrit/dmrg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "srecrit/lanczos.hpp"

namespace srecrit {

void DmrgParams::validate() const {
  require(max_bond >= 2, "DmrgParams: max_bond must be >= 2");
  require(svd_cutoff > 0.0 && svd_cutoff <= 1e-4, "DmrgParams: svd_cutoff must lie in (0, 1e-4]");
  require(energy_tolerance > 0.0, "DmrgParams: energy_tolerance must be > 0");
  require(max_sweeps >= 1, "DmrgParams: max_sweeps must be >= 1");
  require(local_iterations >= 2, "DmrgParams: local_iterations must be >= 2");
}

namespace {

using Eigen::MatrixXd;
using Site = std::array<MatrixXd, 2>;
using Env = std::vector<MatrixXd>;

struct OpEntry {
  int from;
  int to;
  Eigen::Matrix2d op;
};

struct SiteMpo {
  std::vector<OpEntry> entries;
};

// Hamiltonian in the rotated frame: -sum_j (X_j X_{j+1} + lambda Z_j).
// Automaton states: 0 = nothing placed, 1 = X placed, waiting for its
// neighbour, 2 = complete, 3 = wrap-bond X placed on site 0, waiting for site L-1.
std::vector<SiteMpo> build_mpo(const TfimSpec& spec, int& width) {
  const std::size_t n = spec.num_sites;
  const bool periodic = spec.boundary == Boundary::periodic;
  width = periodic ? 4 : 3;
  const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
  Eigen::Matrix2d x;
  x << 0, 1, 1, 0;
  Eigen::Matrix2d z;
  z << 1, 0, 0, -1;
  const double lam = spec.coupling;
  std::vector<SiteMpo> w(n);
  for (std::size_t j = 0; j < n; ++j) {
    auto& e = w[j].entries;
    const bool first = j == 0;
    const bool last = j + 1 == n;
    if (!last) {
      e.push_back({0, 0, id});
      e.push_back({0, 1, -x});
    }
    e.push_back({0, 2, -lam * z});
    if (!first) {
      e.push_back({1, 2, x});
      e.push_back({2, 2, id});
    }
    if (periodic) {
      if (first) e.push_back({0, 3, x});
      if (!first && !last) e.push_back({3, 3, id});
      if (last) e.push_back({3, 2, -x});
    }
  }
  return w;
}

Env grow_left(const Env& le, const Site& a, const SiteMpo& w, int width) {
  Env out(width, MatrixXd::Zero(a[0].cols(), a[0].cols()));
  for (int from = 0; from < width; ++from) {
    if (le[from].size() == 0 || le[from].isZero(0.0)) continue;
    const std::array<MatrixXd, 2> tmp = {le[from] * a[0], le[from] * a[1]};
    for (const auto& e : w.entries) {
      if (e.from != from) continue;
      for (int s = 0; s < 2; ++s) {
        for (int t = 0; t < 2; ++t) {
          if (e.op(s, t) != 0.0) out[e.to].noalias() += e.op(s, t) * (a[s].transpose() * tmp[t]);
        }
      }
    }
  }
  return out;
}

// Right environments are indexed (ket, bra).
Env grow_right(const Env& re, const Site& a, const SiteMpo& w, int width) {
  Env out(width, MatrixXd::Zero(a[0].rows(), a[0].rows()));
  for (int to = 0; to < width; ++to) {
    if (re[to].size() == 0 || re[to].isZero(0.0)) continue;
    const std::array<MatrixXd, 2> tmp = {re[to] * a[0].transpose(), re[to] * a[1].transpose()};
    for (const auto& e : w.entries) {
      if (e.to != to) continue;
      for (int s = 0; s < 2; ++s) {
        for (int t = 0; t < 2; ++t) {
          if (e.op(s, t) != 0.0) out[e.from].noalias() += e.op(s, t) * (a[t] * tmp[s]);
        }
      }
    }
  }
  return out;
}

// Two-site wavefunction: four blocks theta[2*s1 + s2], each chi_l x chi_r.
struct TwoSite {
  Index chi_l = 0;
  Index chi_r = 0;
  Index block() const { return chi_l * chi_r; }
};

void apply_heff(const Env& le, const SiteMpo& w1, const SiteMpo& w2, const Env& re, int width,
                const TwoSite& shape, const Eigen::VectorXd& in, Eigen::VectorXd& out) {
  const Index cl = shape.chi_l;
  const Index cr = shape.chi_r;
  const Index blk = shape.block();
  auto theta = [&](int k) { return Eigen::Map<const MatrixXd>(in.data() + k * blk, cl, cr); };
  // x[from][k] = le[from] * theta[k]
  std::vector<std::array<MatrixXd, 4>> x(width);
  for (int from = 0; from < width; ++from) {
    if (le[from].isZero(0.0)) continue;
    for (int k = 0; k < 4; ++k) x[from][k] = le[from] * theta(k);
  }
  std::vector<std::array<MatrixXd, 4>> y(width);
  for (const auto& e1 : w1.entries) {
    if (x[e1.from][0].size() == 0) continue;
    for (const auto& e2 : w2.entries) {
      if (e2.from != e1.to || re[e2.to].isZero(0.0)) continue;
      for (int s1 = 0; s1 < 2; ++s1) {
        for (int t1 = 0; t1 < 2; ++t1) {
          const double c1 = e1.op(s1, t1);
          if (c1 == 0.0) continue;
          for (int s2 = 0; s2 < 2; ++s2) {
            for (int t2 = 0; t2 < 2; ++t2) {
              const double c = c1 * e2.op(s2, t2);
              if (c == 0.0) continue;
              auto& dst = y[e2.to][2 * s1 + s2];
              if (dst.size() == 0) dst = MatrixXd::Zero(cl, cr);
              dst.noalias() += c * x[e1.from][2 * t1 + t2];
            }
          }
        }
      }
    }
  }
  out.setZero(4 * blk);
  for (int to = 0; to < width; ++to) {
    for (int k = 0; k < 4; ++k) {
      if (y[to][k].size() == 0) continue;
      Eigen::Map<MatrixXd>(out.data() + k * blk, cl, cr).noalias() += y[to][k] * re[to];
    }
  }
}

struct Split {
  Site left;
  Site right;
  std::vector<int> labels;
  double discarded = 0.0;
};

// SVD of the two-site block, done per parity block of the middle bond.
// `move_right` leaves the singular values on the right tensor.
Split split_two_site(const Eigen::VectorXd& theta, const TwoSite& shape,
                     const std::vector<int>& pl, const std::vector<int>& pr, double cutoff,
                     Index max_bond, bool move_right) {
  const Index cl = shape.chi_l;
  const Index cr = shape.chi_r;
  const Index blk = shape.block();
  // m(s1 * cl + a, s2 * cr + r) = theta[2 s1 + s2](a, r)
  MatrixXd m(2 * cl, 2 * cr);
  for (int s1 = 0; s1 < 2; ++s1) {
    for (int s2 = 0; s2 < 2; ++s2) {
      m.block(s1 * cl, s2 * cr, cl, cr) =
          Eigen::Map<const MatrixXd>(theta.data() + (2 * s1 + s2) * blk, cl, cr);
    }
  }
  struct Block {
    std::vector<Index> rows;
    std::vector<Index> cols;
    MatrixXd u;
    Eigen::VectorXd s;
    MatrixXd v;
  };
  std::array<Block, 2> blocks;
  for (Index i = 0; i < 2 * cl; ++i) blocks[(pl[i % cl] + i / cl) % 2].rows.push_back(i);
  for (Index i = 0; i < 2 * cr; ++i) blocks[(pr[i % cr] + i / cr) % 2].cols.push_back(i);
  struct Value {
    double s;
    int parity;
    Index idx;
  };
  std::vector<Value> values;
  for (int p = 0; p < 2; ++p) {
    auto& b = blocks[p];
    if (b.rows.empty() || b.cols.empty()) continue;
    MatrixXd sub = m(b.rows, b.cols);
    auto svd = thin_svd(sub);
    b.u = std::move(svd.u);
    b.s = std::move(svd.s);
    b.v = std::move(svd.v);
    for (Index k = 0; k < b.s.size(); ++k) values.push_back({b.s(k), p, k});
  }
  std::stable_sort(values.begin(), values.end(),
                   [](const Value& a, const Value& b) { return a.s > b.s; });
  Eigen::VectorXd all(static_cast<Index>(values.size()));
  for (std::size_t k = 0; k < values.size(); ++k) all(static_cast<Index>(k)) = values[k].s;
  // Keep whole degenerate multiplets where possible: never cut between
  // singular values equal to 1e-12 relative precision.
  Index keep = truncation_rank(all, cutoff, max_bond);
  while (keep < all.size() && keep < max_bond && all(keep) > 0.0 &&
         std::abs(all(keep) - all(keep - 1)) <= 1e-12 * all(0)) {
    ++keep;
  }
  // Drop exact zeros; they carry no weight and would leave null bond vectors.
  while (keep > 1 && all(keep - 1) <= 1e-300) --keep;

  const double total = all.squaredNorm();
  const double kept_norm = all.head(keep).norm();
  Split out;
  out.discarded = total > 0.0 ? std::max(0.0, 1.0 - kept_norm * kept_norm / total) : 0.0;
  MatrixXd u = MatrixXd::Zero(2 * cl, keep);
  MatrixXd vt = MatrixXd::Zero(keep, 2 * cr);
  out.labels.resize(static_cast<std::size_t>(keep));
  for (Index k = 0; k < keep; ++k) {
    const auto& val = values[static_cast<std::size_t>(k)];
    const auto& b = blocks[val.parity];
    const double sv = val.s / kept_norm;
    for (std::size_t r = 0; r < b.rows.size(); ++r) u(b.rows[r], k) = b.u(static_cast<Index>(r), val.idx);
    for (std::size_t c = 0; c < b.cols.size(); ++c) vt(k, b.cols[c]) = b.v(static_cast<Index>(c), val.idx);
    if (move_right) {
      vt.row(k) *= sv;
    } else {
      u.col(k) *= sv;
    }
    out.labels[static_cast<std::size_t>(k)] = val.parity;
  }
  out.left = {u.topRows(cl), u.bottomRows(cl)};
  out.right = {vt.leftCols(cr), vt.rightCols(cr)};
  return out;
}

}  // namespace

DmrgResult dmrg_ground(const TfimSpec& spec, const DmrgParams& params) {
  spec.validate();
  params.validate();
  const std::size_t n = spec.num_sites;
  int width = 0;
  const std::vector<SiteMpo> mpo = build_mpo(spec, width);

  // Rotated-frame |0...0>: every bond has dimension 1 and parity label 0.
  std::vector<Site> a(n, Site{MatrixXd::Zero(1, 1), MatrixXd::Zero(1, 1)});
  for (auto& t : a) t[0](0, 0) = 1.0;
  std::vector<std::vector<int>> labels(n + 1, std::vector<int>{0});

  std::vector<Env> le(n + 1);
  std::vector<Env> re(n + 1);
  le[0] = Env(width, MatrixXd::Zero(1, 1));
  le[0][0](0, 0) = 1.0;
  re[n] = Env(width, MatrixXd::Zero(1, 1));
  re[n][2](0, 0) = 1.0;
  for (std::size_t j = n - 1; j >= 2; --j) re[j] = grow_right(re[j + 1], a[j], mpo[j], width);

  LanczosOptions local;
  local.max_iterations = params.local_iterations;
  local.max_basis = params.local_iterations;
  local.residual_tolerance = 1e-11;

  DmrgResult result;
  double energy = 0.0;
  double sweep_discarded = 0.0;

  auto optimize = [&](std::size_t i, bool move_right) {
    TwoSite shape{a[i][0].rows(), a[i + 1][0].cols()};
    const Index blk = shape.block();
    Eigen::VectorXd theta(4 * blk);
    Eigen::VectorXd mask(4 * blk);
    const auto& pl = labels[i];
    const auto& pr = labels[i + 2];
    for (int s1 = 0; s1 < 2; ++s1) {
      for (int s2 = 0; s2 < 2; ++s2) {
        Eigen::Map<MatrixXd>(theta.data() + (2 * s1 + s2) * blk, shape.chi_l, shape.chi_r) =
            a[i][s1] * a[i + 1][s2];
        Eigen::Map<MatrixXd> mk(mask.data() + (2 * s1 + s2) * blk, shape.chi_l, shape.chi_r);
        for (Index r = 0; r < shape.chi_r; ++r) {
          for (Index l = 0; l < shape.chi_l; ++l) {
            mk(l, r) = ((pl[l] + s1 + s2 + pr[r]) % 2 == 0) ? 1.0 : 0.0;
          }
        }
      }
    }
    auto apply = [&](const Eigen::VectorXd& in, Eigen::VectorXd& out) {
      apply_heff(le[i], mpo[i], mpo[i + 1], re[i + 2], width, shape, in, out);
    };
    auto project = [&](Eigen::VectorXd& v) { v.array() *= mask.array(); };
    LanczosResult lr = lanczos_lowest(apply, project, theta, local);
    energy = lr.eigenvalue;
    Split sp = split_two_site(lr.eigenvector, shape, pl, pr, params.svd_cutoff, params.max_bond,
                              move_right);
    sweep_discarded = std::max(sweep_discarded, sp.discarded);
    a[i] = std::move(sp.left);
    a[i + 1] = std::move(sp.right);
    labels[i + 1] = std::move(sp.labels);
    if (move_right) {
      le[i + 1] = grow_left(le[i], a[i], mpo[i], width);
    } else {
      re[i + 1] = grow_right(re[i + 2], a[i + 1], mpo[i + 1], width);
    }
  };

  double previous = std::numeric_limits<double>::infinity();
  for (int sweep = 0; sweep < params.max_sweeps; ++sweep) {
    sweep_discarded = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) optimize(i, true);
    for (std::size_t i = n - 1; i-- > 0;) optimize(i, false);
    result.sweep_energies.push_back(energy);
    result.max_discarded = sweep_discarded;
    if (sweep + 1 >= params.min_sweeps && std::abs(previous - energy) < params.energy_tolerance) {
      result.converged = true;
      break;
    }
    previous = energy;
  }

  // Back to the original frame: apply a Hadamard on every site.
  const double h = 1.0 / std::sqrt(2.0);
  std::vector<RealMps::SiteTensor> rotated(n);
  for (std::size_t j = 0; j < n; ++j) {
    rotated[j] = {h * (a[j][0] + a[j][1]), h * (a[j][0] - a[j][1])};
  }
  RealMps mps(std::move(rotated), 0);
  mps.normalize();
  mps.set_discarded_weight(result.max_discarded);
  result.mps = std::move(mps);
  result.energy = energy;
  return result;
}

}  // namespace srecrit
