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

#ifndef SRECRIT_SRE_REPLICA_HPP_
#define SRECRIT_SRE_REPLICA_HPP_

#include <array>
#include <vector>

#include "srecrit/estimate.hpp"
#include "srecrit/mps.hpp"

namespace srecrit {

/// Default relative weight dropped per bond when no bond cap binds. Entry
/// errors are first order in the dropped amplitude, so an n-th power loses
/// about sqrt(cutoff) in M_n; 1e-22 keeps results exact to ~1e-11.
inline constexpr double kReplicaCutoff = 1e-22;

/// Largest intermediate (bytes) one zip step may allocate.
inline constexpr double kReplicaStepBytes = 768.0 * (1 << 20);

/// The Pauli-basis vector of a state as an MPS over four labels per site,
/// ordered I, X, Z, Y. After k Hadamard powers the entry at label m is
/// <sigma^m>^k / 2^{kL/2}. Sites 1.. are right isometries up to rounding.
template <typename Scalar>
struct PauliBasisMps {
  std::vector<std::array<MatrixX<Scalar>, 4>> sites;
  int power = 1;
  /// Bond cap used when building; max() means none.
  Index bond_cap = std::numeric_limits<Index>::max();
  /// 1 - prod(1 - relative weight dropped) over every truncation so far.
  double discarded = 0.0;

  std::size_t num_sites() const { return sites.size(); }
  std::vector<Index> bond_dims() const;
  Index max_bond_dim() const;
  double norm_squared() const;
  /// Entry at label m with the true Y phase restored.
  double entry(const PauliString& m) const;
};

/// Doubled-layer contraction of each site with the four Pauli matrices,
/// compressed left to right with at most `bond_cap` states per bond.
template <typename Scalar>
PauliBasisMps<Scalar> build_pauli_mps(const MatrixProductState<Scalar>& mps,
                                      Index bond_cap = std::numeric_limits<Index>::max(),
                                      double cutoff = kReplicaCutoff);

/// Element-wise product of two Pauli-basis MPS (zip-up, then a right-to-left
/// truncation sweep). Throws BudgetExceeded when a zip step would exceed
/// kReplicaStepBytes.
template <typename Scalar>
PauliBasisMps<Scalar> hadamard_product(const PauliBasisMps<Scalar>& a, const PauliBasisMps<Scalar>& b,
                                       Index bond_cap = std::numeric_limits<Index>::max(),
                                       double cutoff = kReplicaCutoff);

/// p^{(n)} = W^{n-1} p with W = diag(p). Each application is truncated to
/// `bond_cap`.
template <typename Scalar>
PauliBasisMps<Scalar> hadamard_power(const PauliBasisMps<Scalar>& p, int n,
                                     Index bond_cap = std::numeric_limits<Index>::max(),
                                     double cutoff = kReplicaCutoff);

/// M_n = ln<P^(n)|P^(n)> / (1 - n) - L ln 2. Throws Error when the inner
/// product is not positive.
template <typename Scalar>
SreEstimate sre_from_replica(const PauliBasisMps<Scalar>& p_n, int n);

enum class ReplicaTruncation {
  /// Cap the build and every Hadamard application.
  every_application,
  /// Cap only the build; powers are then formed without a bond cap.
  build_only,
};

struct ReplicaOptions {
  /// Initial bond cap; 0 means 4 times the state's bond dimension.
  Index bond_cap = 0;
  /// Doubling stops once consecutive caps agree within this.
  double convergence = 1e-6;
  Index max_bond_cap = 1024;
  double cutoff = kReplicaCutoff;
  ReplicaTruncation truncation = ReplicaTruncation::every_application;
};

/// One (state, n) job at a fixed bond cap.
template <typename Scalar>
SreEstimate sre_replica(const MatrixProductState<Scalar>& mps, int n, Index bond_cap,
                        double cutoff = kReplicaCutoff,
                        ReplicaTruncation truncation = ReplicaTruncation::every_application);

/// Doubles the bond cap from options.bond_cap until two consecutive values
/// differ by less than options.convergence, or until the cap exceeds
/// max_bond_cap or a step would exceed kReplicaStepBytes (flag "not_converged").
/// Diagnostics carry bond_cap and delta.
template <typename Scalar>
SreEstimate sre_replica_converged(const MatrixProductState<Scalar>& mps, int n, const ReplicaOptions& options = {});

}  // namespace srecrit

#endif  // SRECRIT_SRE_REPLICA_HPP_
