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

#include "srecrit/tfim.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

#include "srecrit/parallel.hpp"
#include "srecrit/random.hpp"

namespace srecrit {

std::string to_string(Boundary b) { return b == Boundary::periodic ? "periodic" : "open"; }

Boundary boundary_from_string(const std::string& s) {
  if (s == "periodic" || s == "pbc") return Boundary::periodic;
  if (s == "open" || s == "obc") return Boundary::open;
  throw InvalidArgument("unknown boundary '" + s + "'");
}

std::string to_string(Sector s) {
  switch (s) {
    case Sector::even:
      return "even";
    case Sector::odd:
      return "odd";
    case Sector::full:
      return "full";
  }
  return "?";
}

Sector sector_from_string(const std::string& s) {
  if (s == "even") return Sector::even;
  if (s == "odd") return Sector::odd;
  if (s == "full") return Sector::full;
  throw InvalidArgument("unknown parity sector '" + s + "'");
}

void TfimSpec::validate() const {
  require(num_sites >= 2, "TfimSpec: need at least 2 sites");
  require(num_sites <= 64, "TfimSpec: at most 64 sites");
  require(std::isfinite(coupling) && coupling >= 0.0, "TfimSpec: coupling must be >= 0");
}

namespace {

// Number of antiparallel bonds in basis state b.
int domain_walls(const TfimSpec& spec, std::uint64_t b) {
  const auto n = static_cast<unsigned>(spec.num_sites);
  const std::uint64_t mask = (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  if (spec.boundary == Boundary::periodic) {
    const std::uint64_t rot = ((b >> 1) | (b << (n - 1))) & mask;
    return std::popcount((b ^ rot) & mask);
  }
  return std::popcount((b ^ (b >> 1)) & (mask >> 1));
}

}  // namespace

void apply_tfim(const TfimSpec& spec, const Eigen::VectorXd& in, Eigen::VectorXd& out) {
  const std::size_t n = spec.num_sites;
  const Index dim = Index{1} << n;
  require(in.size() == dim, "apply_tfim: vector length must be 2^L");
  out.resize(dim);
  const int bonds = static_cast<int>(spec.num_bonds());
  const double lam = spec.coupling;
  constexpr Index kBlock = Index{1} << 12;
  const std::size_t blocks = static_cast<std::size_t>((dim + kBlock - 1) / kBlock);
  auto body = [&](std::size_t blk) {
    const Index lo = static_cast<Index>(blk) * kBlock;
    const Index hi = std::min(dim, lo + kBlock);
    for (Index b = lo; b < hi; ++b) {
      const auto ub = static_cast<std::uint64_t>(b);
      double acc = -static_cast<double>(bonds - 2 * domain_walls(spec, ub)) * in(b);
      double flip = 0.0;
      for (std::size_t j = 0; j < n; ++j) flip += in(static_cast<Index>(ub ^ (std::uint64_t{1} << j)));
      out(b) = acc - lam * flip;
    }
  };
  if (blocks > 4) {
    parallel_for_blocks(blocks, body);
  } else {
    for (std::size_t blk = 0; blk < blocks; ++blk) body(blk);
  }
}

Eigen::MatrixXd tfim_matrix(const TfimSpec& spec) {
  spec.validate();
  if (spec.num_sites > 12) throw BudgetExceeded("tfim_matrix: dense matrix limited to L <= 12");
  const Index dim = Index{1} << spec.num_sites;
  Eigen::MatrixXd h(dim, dim);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd col(dim);
  for (Index b = 0; b < dim; ++b) {
    e(b) = 1.0;
    apply_tfim(spec, e, col);
    h.col(b) = col;
    e(b) = 0.0;
  }
  return h;
}

void project_sector(std::size_t num_sites, Sector sector, Eigen::VectorXd& v) {
  if (sector == Sector::full) return;
  const Index dim = Index{1} << num_sites;
  const double sign = sector == Sector::even ? 1.0 : -1.0;
  for (Index b = 0; b < dim / 2; ++b) {
    const Index partner = (dim - 1) ^ b;
    const double sym = 0.5 * (v(b) + sign * v(partner));
    v(b) = sym;
    v(partner) = sign * sym;
  }
}

GroundState lanczos_ground(const TfimSpec& spec, Sector sector, const LanczosOptions& options) {
  spec.validate();
  if (spec.num_sites > kMaxDenseSites) {
    throw BudgetExceeded("lanczos_ground: L = " + std::to_string(spec.num_sites) +
                         " exceeds the dense budget of " + std::to_string(kMaxDenseSites));
  }
  const std::size_t n = spec.num_sites;
  const Index dim = Index{1} << n;
  Eigen::VectorXd start(dim);
  CounterRng rng(0x7f1a5eedULL, n);
  for (Index b = 0; b < dim; ++b) start(b) = rng.uniform() - 0.5;

  auto apply = [&](const Eigen::VectorXd& in, Eigen::VectorXd& out) { apply_tfim(spec, in, out); };
  auto project = [&](Eigen::VectorXd& v) { project_sector(n, sector, v); };
  LanczosResult r = lanczos_lowest(apply, project, std::move(start), options);
  if (!r.converged) {
    throw ConvergenceError("lanczos_ground: no convergence after " + std::to_string(r.iterations) +
                           " iterations (residual " + std::to_string(r.residual) + ")");
  }
  Eigen::VectorXd psi = std::move(r.eigenvector);
  Index arg = 0;
  psi.cwiseAbs().maxCoeff(&arg);
  if (psi(arg) < 0) psi = -psi;
  return GroundState{r.eigenvalue, RealState::normalized(n, std::move(psi)), r.iterations,
                     r.residual};
}

}  // namespace srecrit
