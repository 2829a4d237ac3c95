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

#ifndef SRECRIT_SRE_EXACT_HPP_
#define SRECRIT_SRE_EXACT_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "srecrit/common.hpp"
#include "srecrit/dense_state.hpp"
#include "srecrit/estimate.hpp"
#include "srecrit/parallel.hpp"
#include "srecrit/pauli.hpp"

namespace srecrit {

/// Largest site count enumerated by the exact pipeline (4^L strings).
inline constexpr std::size_t kMaxEnumerationSites = 14;
/// Squared expectations below this are treated as exact zeros.
inline constexpr double kZeroSquare = 1e-26;

/// In-place unnormalized Walsh-Hadamard transform:
/// v(z) <- sum_b (-1)^{popcount(b & z)} v(b).
template <typename Derived>
void walsh_hadamard(Eigen::MatrixBase<Derived>& v) {
  const Index n = v.size();
  for (Index h = 1; h < n; h <<= 1) {
    for (Index i = 0; i < n; i += 2 * h) {
      for (Index j = i; j < i + h; ++j) {
        const auto a = v(j);
        const auto b = v(j + h);
        v(j) = a + b;
        v(j + h) = a - b;
      }
    }
  }
}

/// |e|^{2 alpha} for e2 = e^2 >= 0, with a multiplication fast path when
/// 2 alpha is a small integer.
inline double even_power(double e2, double alpha) {
  const double k = 2.0 * alpha;
  if (k == std::floor(k) && k <= 16.0) {
    const int ki = static_cast<int>(k);
    double base = (ki % 2) ? std::sqrt(e2) : 1.0;
    double r = base;
    for (int i = 0; i < ki / 2; ++i) r *= e2;
    return r;
  }
  return std::pow(e2, alpha);
}

/// Power sums of the squared Pauli spectrum {e_m^2 = |Tr[sigma^m rho]|^2}.
struct PauliPowerSums {
  std::size_t num_sites = 0;
  std::vector<double> alphas;
  /// sum_m |e_m|^{2 alpha} per requested alpha (alpha = 1 gives the purity sum).
  std::vector<double> power;
  /// sum_m e_m^2 ln e_m^2.
  double entropy_term = 0.0;
  /// sum_m e_m^2 = 2^l Tr[rho^2].
  double square_sum = 0.0;
};

/// Enumerates all 4^l Pauli strings of an l-qubit operator given by its pair
/// function: fill(x, f) must set f(b) = rho(b, b ^ x) for every b. For each x
/// mask one Walsh-Hadamard transform over b yields the traces for all z masks.
/// Work is split into fixed blocks of x masks and combined in block order.
template <typename Scalar, typename Fill>
PauliPowerSums pauli_power_sums(std::size_t num_sites, std::span<const double> alphas, Fill&& fill) {
  if (num_sites > kMaxEnumerationSites) {
    throw BudgetExceeded("exact enumeration limited to " + std::to_string(kMaxEnumerationSites) +
                         " sites, got " + std::to_string(num_sites));
  }
  const Index dim = Index{1} << num_sites;
  const std::size_t na = alphas.size();
  const std::size_t num_blocks = static_cast<std::size_t>(std::min<Index>(dim, 64));
  struct Partial {
    std::vector<CompensatedSum> power;
    CompensatedSum entropy;
    CompensatedSum squares;
  };
  std::vector<Partial> parts(num_blocks, Partial{std::vector<CompensatedSum>(na), {}, {}});
  parallel_for_blocks(num_blocks, [&](std::size_t blk) {
    Partial& part = parts[blk];
    VectorX<Scalar> f(dim);
    const Index lo = dim * static_cast<Index>(blk) / static_cast<Index>(num_blocks);
    const Index hi = dim * static_cast<Index>(blk + 1) / static_cast<Index>(num_blocks);
    for (Index x = lo; x < hi; ++x) {
      fill(static_cast<std::uint64_t>(x), f);
      walsh_hadamard(f);
      for (Index z = 0; z < dim; ++z) {
        const double e2 = abs2(f(z));
        if (e2 < kZeroSquare) continue;
        part.squares.add(e2);
        part.entropy.add(e2 * std::log(e2));
        for (std::size_t k = 0; k < na; ++k) part.power[k].add(even_power(e2, alphas[k]));
      }
    }
  });
  CompensatedSum squares;
  CompensatedSum entropy;
  std::vector<CompensatedSum> power(na);
  for (const auto& part : parts) {
    squares.add(part.squares);
    entropy.add(part.entropy);
    for (std::size_t k = 0; k < na; ++k) power[k].add(part.power[k]);
  }
  PauliPowerSums out;
  out.num_sites = num_sites;
  out.alphas.assign(alphas.begin(), alphas.end());
  out.square_sum = squares.value();
  out.entropy_term = entropy.value();
  for (const auto& p : power) out.power.push_back(p.value());
  return out;
}

/// Pure-state power sums: f(b) = psi(b) conj(psi(b ^ x)).
template <typename Scalar>
PauliPowerSums pauli_power_sums(const DenseState<Scalar>& s, std::span<const double> alphas) {
  const auto& psi = s.amplitudes();
  return pauli_power_sums<Scalar>(s.num_sites(), alphas, [&](std::uint64_t x, VectorX<Scalar>& f) {
    for (Index b = 0; b < f.size(); ++b) {
      f(b) = psi(b) * conj(psi(static_cast<Index>(static_cast<std::uint64_t>(b) ^ x)));
    }
  });
}

/// Density-matrix power sums: f(b) = rho(b, b ^ x).
template <typename Scalar>
PauliPowerSums pauli_power_sums(const MatrixX<Scalar>& rho, std::size_t num_sites,
                                std::span<const double> alphas) {
  require(rho.rows() == (Index{1} << num_sites) && rho.cols() == rho.rows(),
          "pauli_power_sums: density matrix shape does not match site count");
  return pauli_power_sums<Scalar>(num_sites, alphas, [&](std::uint64_t x, VectorX<Scalar>& f) {
    for (Index b = 0; b < f.size(); ++b) {
      f(b) = rho(b, static_cast<Index>(static_cast<std::uint64_t>(b) ^ x));
    }
  });
}

/// M_alpha from power sums, normalized by 2^l. alpha = 1 is only defined for
/// pure operators (sum e^2 = 2^l) and throws otherwise.
double sre_from_sums(const PauliPowerSums& sums, std::size_t k);

template <typename Scalar>
std::vector<SreEstimate> sre_full_exact(const DenseState<Scalar>& s, std::span<const double> alphas) {
  for (double a : alphas) require(a > 0.0 && std::isfinite(a), "sre_full_exact: alpha must be > 0");
  const PauliPowerSums sums = pauli_power_sums(s, alphas);
  std::vector<SreEstimate> out;
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    SreEstimate e;
    e.value = sre_from_sums(sums, k);
    e.alpha = alphas[k];
    e.method = "exact";
    e.quantity = "M";
    e.num_sites = s.num_sites();
    out.push_back(std::move(e));
  }
  return out;
}

template <typename Scalar>
SreEstimate sre_full_exact(const DenseState<Scalar>& s, double alpha) {
  const double a[] = {alpha};
  return sre_full_exact(s, std::span<const double>(a)).front();
}

/// rho_A = Tr_B |psi><psi| for a contiguous region A; basis bit k of rho_A is
/// site region.begin + k.
template <typename Scalar>
MatrixX<Scalar> reduced_density_matrix(const DenseState<Scalar>& s, const RegionSpec& region) {
  region.validate(s.num_sites());
  const std::size_t n = s.num_sites();
  const std::size_t l = region.length;
  const Index da = Index{1} << l;
  const Index db = Index{1} << (n - l);
  // psi as a da x db matrix: row = bits in A, column = remaining bits.
  MatrixX<Scalar> m(da, db);
  const std::uint64_t low_mask = (std::uint64_t{1} << region.begin) - 1;
  for (Index b = 0; b < s.dim(); ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    const std::uint64_t a = (ub >> region.begin) & static_cast<std::uint64_t>(da - 1);
    const std::uint64_t rest = (ub & low_mask) | ((ub >> region.end()) << region.begin);
    m(static_cast<Index>(a), static_cast<Index>(rest)) = s(b);
  }
  return m * m.adjoint();
}

/// M_alpha(rho_A) with normalization 2^l, from the reduced density matrix.
template <typename Scalar>
std::vector<SreEstimate> sre_subsystem_exact(const DenseState<Scalar>& s, const RegionSpec& region,
                                             std::span<const double> alphas) {
  for (double a : alphas) require(a > 0.0 && std::isfinite(a), "sre_subsystem_exact: alpha must be > 0");
  region.validate(s.num_sites());
  if (region.length > kMaxEnumerationSites) {
    throw BudgetExceeded("sre_subsystem_exact: region larger than the enumeration budget");
  }
  const MatrixX<Scalar> rho = reduced_density_matrix(s, region);
  const PauliPowerSums sums = pauli_power_sums(rho, region.length, alphas);
  std::vector<SreEstimate> out;
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    SreEstimate e;
    e.value = sre_from_sums(sums, k);
    e.alpha = alphas[k];
    e.method = "exact";
    e.quantity = "M_sub";
    e.num_sites = s.num_sites();
    e.region = region;
    out.push_back(std::move(e));
  }
  return out;
}

template <typename Scalar>
SreEstimate sre_subsystem_exact(const DenseState<Scalar>& s, const RegionSpec& region, double alpha) {
  const double a[] = {alpha};
  return sre_subsystem_exact(s, region, std::span<const double>(a)).front();
}

/// The same subsystem SRE from Born weights of identity-padded strings on the
/// full doubled state:
///   M = ((alpha L - l) ln 2 + ln sum_{m_A} p(m_A x I_B)^alpha) / (1 - alpha),
/// with p = 2^{-L} <sigma>^2. Enumerates strings one by one (slow; tests only).
template <typename Scalar>
double sre_subsystem_doubled(const DenseState<Scalar>& s, const RegionSpec& region, double alpha) {
  region.validate(s.num_sites());
  require(alpha > 0.0 && alpha != 1.0, "sre_subsystem_doubled: alpha must be > 0 and != 1");
  if (region.length > 8) throw BudgetExceeded("sre_subsystem_doubled: region over 8 sites");
  const std::size_t n = s.num_sites();
  const std::size_t l = region.length;
  CompensatedSum sum;
  const std::uint64_t count = std::uint64_t{1} << (2 * l);
  for (std::uint64_t code = 0; code < count; ++code) {
    PauliString p(n);
    for (std::size_t k = 0; k < l; ++k) p.set(region.begin + k, static_cast<Pauli>((code >> (2 * k)) & 3u));
    const double w = born_probability(p, s);
    if (w > 0.0) sum.add(std::pow(w, alpha));
  }
  const double ln2 = std::numbers::ln2;
  return ((alpha * static_cast<double>(n) - static_cast<double>(l)) * ln2 + std::log(sum.value())) /
         (1.0 - alpha);
}

/// S_2(rho_A) = -ln Tr[rho_A^2] from the reduced density matrix.
template <typename Scalar>
double renyi2_subsystem(const DenseState<Scalar>& s, const RegionSpec& region) {
  const MatrixX<Scalar> rho = reduced_density_matrix(s, region);
  return -std::log(rho.squaredNorm());
}

/// S_2(rho_A) from the Pauli identity Tr[rho_A^2] = 2^{-l} sum_m Tr^2[sigma^m rho_A].
template <typename Scalar>
double renyi2_subsystem_pauli(const DenseState<Scalar>& s, const RegionSpec& region) {
  const MatrixX<Scalar> rho = reduced_density_matrix(s, region);
  const PauliPowerSums sums = pauli_power_sums(rho, region.length, std::span<const double>());
  return -std::log(std::ldexp(sums.square_sum, -static_cast<int>(region.length)));
}

/// W_alpha(A:B) = M(rho_A) + M(rho_B) - M(psi) for A = 1..l of a pure state.
template <typename Scalar>
double mutual_sre_exact(const DenseState<Scalar>& s, std::size_t l, double alpha) {
  const std::size_t n = s.num_sites();
  const RegionSpec a = RegionSpec::prefix(l);
  a.validate_bipartition(n);
  const RegionSpec b{l, n - l};
  return sre_subsystem_exact(s, a, alpha).value + sre_subsystem_exact(s, b, alpha).value -
         sre_full_exact(s, alpha).value;
}

/// I_2(A:B) = S_2(A) + S_2(B) for a pure state (S_2(AB) = 0), density-matrix route.
template <typename Scalar>
double mutual_info2_exact(const DenseState<Scalar>& s, std::size_t l) {
  const std::size_t n = s.num_sites();
  const RegionSpec a = RegionSpec::prefix(l);
  a.validate_bipartition(n);
  return renyi2_subsystem(s, a) + renyi2_subsystem(s, RegionSpec{l, n - l});
}

/// I_2(A:B) through the Pauli-sum identity on each side.
template <typename Scalar>
double mutual_info2_pauli(const DenseState<Scalar>& s, std::size_t l) {
  const std::size_t n = s.num_sites();
  const RegionSpec a = RegionSpec::prefix(l);
  a.validate_bipartition(n);
  return renyi2_subsystem_pauli(s, a) + renyi2_subsystem_pauli(s, RegionSpec{l, n - l});
}

}  // namespace srecrit

#endif  // SRECRIT_SRE_EXACT_HPP_
