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

#ifndef SRECRIT_DMRG_HPP_
#define SRECRIT_DMRG_HPP_

#include <vector>

#include "srecrit/mps.hpp"
#include "srecrit/tfim.hpp"

namespace srecrit {

struct DmrgParams {
  Index max_bond = 128;
  /// Relative discarded weight allowed per bond.
  double svd_cutoff = 1e-10;
  int max_sweeps = 40;
  /// Stop once a full sweep lowers the energy by less than this.
  double energy_tolerance = 1e-10;
  /// Sweeps always run before convergence is tested (bonds grow from 1).
  int min_sweeps = 4;
  int local_iterations = 60;

  void validate() const;
};

struct DmrgResult {
  double energy = 0.0;
  RealMps mps = RealMps::product_state(1);
  /// Energy after each full (right + left) sweep.
  std::vector<double> sweep_energies;
  /// Largest per-bond discarded weight in the final sweep.
  double max_discarded = 0.0;
  /// False when the sweep limit was hit first; the state is then best-so-far.
  bool converged = false;
};

/// Two-site DMRG for the even spin-flip sector. The sweep runs in the
/// Hadamard-rotated frame, where prod_j X_j becomes prod_j Z_j and every bond
/// index carries a definite parity label; truncation is done block-wise per
/// label, so the final state is exactly even. The wrap bond of a periodic
/// chain is carried by the operator representation. Returns an MPS in the
/// original frame with its center at site 0.
DmrgResult dmrg_ground(const TfimSpec& spec, const DmrgParams& params = {});

}  // namespace srecrit

#endif  // SRECRIT_DMRG_HPP_
