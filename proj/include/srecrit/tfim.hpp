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

#ifndef SRECRIT_TFIM_HPP_
#define SRECRIT_TFIM_HPP_

#include <cstddef>
#include <string>

#include "srecrit/common.hpp"
#include "srecrit/dense_state.hpp"
#include "srecrit/lanczos.hpp"

namespace srecrit {

enum class Boundary { periodic, open };

std::string to_string(Boundary b);
Boundary boundary_from_string(const std::string& s);

/// Transverse-field Ising chain H = -sum_j (Z_j Z_{j+1} + lambda X_j).
/// With periodic boundary the sum over bonds runs j = 1..L including the
/// wrap bond L -> 1, so L = 2 counts its single bond twice.
struct TfimSpec {
  std::size_t num_sites = 2;
  double coupling = 1.0;
  Boundary boundary = Boundary::periodic;

  void validate() const;
  std::size_t num_bonds() const {
    return boundary == Boundary::periodic ? num_sites : num_sites - 1;
  }
};

/// Spin-flip (prod_j X_j) sector to search in.
enum class Sector { even, odd, full };

std::string to_string(Sector s);
Sector sector_from_string(const std::string& s);

/// out = H in, matrix-free. `in` and `out` have length 2^L.
void apply_tfim(const TfimSpec& spec, const Eigen::VectorXd& in, Eigen::VectorXd& out);

/// Dense 2^L x 2^L Hamiltonian (small L only; used by tests and diagnostics).
Eigen::MatrixXd tfim_matrix(const TfimSpec& spec);

/// Projects v onto a spin-flip sector in place: v(b) <- (v(b) +/- v(~b)) / 2.
void project_sector(std::size_t num_sites, Sector sector, Eigen::VectorXd& v);

struct GroundState {
  double energy = 0.0;
  RealState state;
  int iterations = 0;
  double residual = 0.0;
};

inline constexpr std::size_t kMaxDenseSites = 16;

/// Lowest eigenpair of H in a spin-flip sector by Lanczos. Real amplitudes,
/// global sign chosen so the largest-magnitude amplitude is positive.
GroundState lanczos_ground(const TfimSpec& spec, Sector sector = Sector::even,
                           const LanczosOptions& options = {.max_iterations = 2000});

}  // namespace srecrit

#endif  // SRECRIT_TFIM_HPP_
