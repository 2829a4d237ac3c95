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

#ifndef SRECRIT_DENSE_STATE_HPP_
#define SRECRIT_DENSE_STATE_HPP_

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "srecrit/common.hpp"
#include "srecrit/pauli.hpp"

namespace srecrit {

/// Normalized pure state on L qubits. Basis index b carries site j in bit
/// j-1; bit value 1 is the Z = -1 eigenstate.
template <typename Scalar>
class DenseState {
 public:
  using Vector = VectorX<Scalar>;
  static constexpr double kNormTolerance = 1e-12;
  static constexpr std::size_t kMaxSites = 30;

  DenseState(std::size_t num_sites, Vector amplitudes)
      : num_sites_(num_sites), amplitudes_(std::move(amplitudes)) {
    require(num_sites >= 1 && num_sites <= kMaxSites, "DenseState: site count out of range");
    require(amplitudes_.size() == (Index{1} << num_sites),
            "DenseState: amplitude count must be 2^L");
    require(std::abs(amplitudes_.norm() - 1.0) <= kNormTolerance,
            "DenseState: amplitudes are not normalized");
  }

  /// Rescales to unit norm before validating.
  static DenseState normalized(std::size_t num_sites, Vector amplitudes) {
    const double n = amplitudes.norm();
    require(n > 0.0, "DenseState: zero vector");
    amplitudes /= n;
    return DenseState(num_sites, std::move(amplitudes));
  }

  static DenseState basis_state(std::size_t num_sites, std::uint64_t index) {
    Vector v = Vector::Zero(Index{1} << num_sites);
    v(static_cast<Index>(index)) = Scalar(1);
    return DenseState(num_sites, std::move(v));
  }

  std::size_t num_sites() const { return num_sites_; }
  Index dim() const { return amplitudes_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }
  Scalar operator()(Index b) const { return amplitudes_(b); }

  /// psi ⊗ phi with psi on the first (low) sites.
  template <typename Other>
  friend auto tensor_product(const DenseState& a, const DenseState<Other>& b) {
    using R = decltype(Scalar() * Other());
    VectorX<R> v(a.dim() * b.dim());
    for (Index hi = 0; hi < b.dim(); ++hi) {
      for (Index lo = 0; lo < a.dim(); ++lo) v(lo + a.dim() * hi) = a(lo) * b(hi);
    }
    return DenseState<R>::normalized(a.num_sites() + b.num_sites(), std::move(v));
  }

 private:
  std::size_t num_sites_;
  Vector amplitudes_;
};

using RealState = DenseState<double>;
using ComplexState = DenseState<cplx>;

/// <s|sigma^p|s>, evaluated in one pass over the amplitudes. sigma^p maps
/// |b> to i^{#Y} (-1)^{|b & z|} |b ^ x>.
template <typename Scalar>
double expectation(const PauliString& p, const DenseState<Scalar>& s) {
  require(p.length() == s.num_sites(), "expectation: Pauli length does not match state");
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  const std::size_t num_y = p.count_y();
  const auto& psi = s.amplitudes();
  // Hermitian operator: the result is real, and for odd #Y it is the real part
  // of i times a real number when the state is real.
  if constexpr (!is_complex_v<Scalar>) {
    if (num_y % 2) return 0.0;
  }
  CompensatedSum re;
  CompensatedSum im;
  for (Index b = 0; b < s.dim(); ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    const Scalar term = conj(psi(static_cast<Index>(ub ^ x))) * psi(b);
    const double sign = (std::popcount(ub & z) & 1) ? -1.0 : 1.0;
    if constexpr (is_complex_v<Scalar>) {
      re.add(sign * term.real());
      im.add(sign * term.imag());
    } else {
      re.add(sign * term);
    }
  }
  // Multiply (re + i im) by i^{#Y} and keep the real part.
  switch (num_y % 4) {
    case 0:
      return re.value();
    case 1:
      return -im.value();
    case 2:
      return -re.value();
    default:
      return im.value();
  }
}

/// Bell-measurement Born weight 2^{-L} <sigma^p>^2.
template <typename Scalar>
double born_probability(const PauliString& p, const DenseState<Scalar>& s) {
  const double e = expectation(p, s);
  return std::ldexp(e * e, -static_cast<int>(s.num_sites()));
}

}  // namespace srecrit

#endif  // SRECRIT_DENSE_STATE_HPP_
