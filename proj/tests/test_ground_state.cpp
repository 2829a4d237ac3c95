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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "srecrit/dmrg.hpp"
#include "srecrit/environment_cache.hpp"
#include "srecrit/mps.hpp"
#include "srecrit/tfim.hpp"

namespace srecrit {
namespace {

// Ground energies of the periodic critical chain, even sector, from an
// independent dense diagonalization (numpy eigh of the Kronecker-built H).
constexpr double kEnergyL4 = -5.226251859505506;
constexpr double kEnergyL8 = -10.251661790966034;
constexpr double kEnergyL12 = -15.32259515108076;

TfimSpec critical(std::size_t n, Boundary b = Boundary::periodic) { return TfimSpec{n, 1.0, b}; }

PauliString all_x(std::size_t n) {
  PauliString p(n);
  for (std::size_t j = 0; j < n; ++j) p.set(j, Pauli::X);
  return p;
}

TEST(TfimSpec, Validation) {
  EXPECT_THROW((TfimSpec{1, 1.0}.validate()), InvalidArgument);
  EXPECT_THROW((TfimSpec{4, -0.1}.validate()), InvalidArgument);
  EXPECT_NO_THROW((TfimSpec{2, 0.0}.validate()));
}

TEST(TfimMatrix, MatchesKroneckerAssembly) {
  for (bool periodic : {true, false}) {
    for (std::size_t n : {2u, 3u, 5u}) {
      const TfimSpec spec{n, 0.7, periodic ? Boundary::periodic : Boundary::open};
      EXPECT_LT((tfim_matrix(spec) - oracle::tfim_dense(n, 0.7, periodic)).norm(), 1e-12);
    }
  }
}

TEST(LanczosGround, ClassicalTwoSite) {
  const auto g = lanczos_ground(TfimSpec{2, 0.0}, Sector::even);
  EXPECT_NEAR(g.energy, -2.0, 1e-12);
  EXPECT_NEAR(g.state(0), std::sqrt(0.5), 1e-10);
  EXPECT_NEAR(g.state(3), std::sqrt(0.5), 1e-10);
  EXPECT_NEAR(std::abs(g.state(1)) + std::abs(g.state(2)), 0.0, 1e-10);
}

TEST(LanczosGround, CriticalTwoSite) {
  EXPECT_NEAR(lanczos_ground(TfimSpec{2, 1.0}, Sector::even).energy, -2.0 * std::sqrt(2.0), 1e-12);
}

TEST(LanczosGround, MatchesDenseOracleUpToTenSites) {
  for (std::size_t n = 2; n <= 10; n += 2) {
    for (double lam : {0.5, 1.0, 1.5}) {
      const auto [e, v] = oracle::even_ground_dense(n, lam, true);
      const auto g = lanczos_ground(TfimSpec{n, lam}, Sector::even);
      EXPECT_NEAR(g.energy, e, 1e-10) << n << " " << lam;
      EXPECT_GT(std::abs(v.dot(g.state.amplitudes())), 1.0 - 1e-10);
    }
  }
}

TEST(LanczosGround, FrozenEnergies) {
  EXPECT_NEAR(lanczos_ground(critical(4)).energy, kEnergyL4, 1e-10);
  EXPECT_NEAR(lanczos_ground(critical(8)).energy, kEnergyL8, 1e-10);
  EXPECT_NEAR(lanczos_ground(critical(12)).energy, kEnergyL12, 1e-10);
}

TEST(LanczosGround, SectorsAndConventions) {
  const auto even = lanczos_ground(critical(6), Sector::even);
  const auto odd = lanczos_ground(critical(6), Sector::odd);
  const auto full = lanczos_ground(critical(6), Sector::full);
  EXPECT_LT(even.energy, odd.energy);
  EXPECT_NEAR(full.energy, std::min(even.energy, odd.energy), 1e-10);
  EXPECT_NEAR(expectation(all_x(6), even.state), 1.0, 1e-10);
  EXPECT_NEAR(expectation(all_x(6), odd.state), -1.0, 1e-10);
  Index arg = 0;
  even.state.amplitudes().cwiseAbs().maxCoeff(&arg);
  EXPECT_GT(even.state(arg), 0.0);
}

TEST(LanczosGround, OpenBoundaryMatchesDense) {
  const auto [e, v] = oracle::even_ground_dense(7, 1.0, false);
  EXPECT_NEAR(lanczos_ground(critical(7, Boundary::open)).energy, e, 1e-10);
}

TEST(LanczosGround, RejectsOverBudget) {
  EXPECT_THROW(lanczos_ground(critical(17)), BudgetExceeded);
}

TEST(MpsFromDense, ProductStateHasUnitBonds) {
  const auto mps = mps_from_dense(RealState::basis_state(4, 0), 1e-12);
  for (Index d : mps.bond_dims()) EXPECT_EQ(d, 1);
  EXPECT_EQ(mps.center(), 0u);
}

TEST(MpsFromDense, BellPairHasBondTwo) {
  Eigen::VectorXd bell = Eigen::VectorXd::Zero(4);
  bell(0) = bell(3) = std::sqrt(0.5);
  const auto mps = mps_from_dense(RealState(2, bell), 1e-12);
  EXPECT_EQ(mps.bond_dim(0), 2);
  EXPECT_LT((mps.to_vector() - bell).norm(), 1e-14);
}

TEST(MpsFromDense, CriticalGroundStateReconstructs) {
  const auto g = lanczos_ground(critical(10));
  const auto mps = mps_from_dense(g.state, 1e-12);
  EXPECT_GE(std::abs(mps.to_vector().dot(g.state.amplitudes())), 1.0 - 1e-10);
  EXPECT_LT(mps.canonical_residual(), 1e-10);
  EXPECT_NEAR(mps.norm(), 1.0, 1e-12);
}

TEST(MpsFromDense, ErrorBoundedByCutoff) {
  std::mt19937_64 rng(9);
  for (double cutoff : {1e-2, 1e-3, 1e-5}) {
    const ComplexState s(8, oracle::random_state(8, rng));
    const auto mps = mps_from_dense(s, cutoff);
    const double err = (mps.to_vector() - s.amplitudes()).norm();
    EXPECT_LE(err, std::sqrt(8 * cutoff)) << cutoff;
    EXPECT_LT(mps.canonical_residual(), 1e-10);
  }
}

TEST(MpsCanonical, MovingCenterKeepsStateAndIsometries) {
  std::mt19937_64 rng(10);
  const ComplexState s(7, oracle::random_state(7, rng));
  auto mps = mps_from_dense(s, 0.0);
  for (std::size_t c : {3u, 6u, 0u, 5u}) {
    mps.move_center(c);
    EXPECT_EQ(mps.center(), c);
    EXPECT_LT(mps.canonical_residual(), 1e-10);
    EXPECT_NEAR(mps.norm(), 1.0, 1e-12);
    EXPECT_LT((mps.to_vector() - s.amplitudes()).norm(), 1e-12);
  }
}

TEST(MpsExpectation, MatchesDenseOnRandomStrings) {
  std::mt19937_64 rng(12);
  const ComplexState s(6, oracle::random_state(6, rng));
  const auto mps = mps_from_dense(s, 0.0);
  for (int k = 0; k < 40; ++k) {
    const PauliString p = oracle::random_pauli(6, rng);
    EXPECT_NEAR(mps_expectation(mps, p), expectation(p, s), 1e-12) << p.str();
  }
}

TEST(Dmrg, ParamsValidation) {
  DmrgParams p;
  p.max_bond = 1;
  EXPECT_THROW(p.validate(), InvalidArgument);
  p = DmrgParams{};
  p.svd_cutoff = 1e-3;
  EXPECT_THROW(p.validate(), InvalidArgument);
  p = DmrgParams{};
  p.energy_tolerance = 0.0;
  EXPECT_THROW(p.validate(), InvalidArgument);
}

TEST(Dmrg, ClassicalLimit) {
  const auto r = dmrg_ground(TfimSpec{8, 0.0}, {});
  EXPECT_NEAR(r.energy, -8.0, 1e-10);
  EXPECT_NEAR(mps_expectation(r.mps, all_x(8)), 1.0, 1e-10);
}

TEST(Dmrg, MatchesLanczosAtTwelveSites) {
  DmrgParams p;
  p.svd_cutoff = 1e-12;
  const auto r = dmrg_ground(critical(12), p);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.energy, kEnergyL12, 1e-8);
  const auto g = lanczos_ground(critical(12));
  EXPECT_GE(std::abs(r.mps.to_vector().dot(g.state.amplitudes())), 1.0 - 1e-8);
}

TEST(Dmrg, VariationalBoundAndInvariants) {
  for (std::size_t n : {4u, 6u, 9u, 14u}) {
    for (Boundary b : {Boundary::periodic, Boundary::open}) {
      const TfimSpec spec{n, 1.0, b};
      const auto r = dmrg_ground(spec, {});
      const double exact = lanczos_ground(spec).energy;
      EXPECT_GE(r.energy, exact - 1e-10) << n;
      EXPECT_NEAR(r.energy, exact, 1e-7) << n;
      EXPECT_LT(r.mps.canonical_residual(), 1e-10);
      EXPECT_EQ(r.mps.center(), 0u);
      EXPECT_NEAR(mps_expectation(r.mps, all_x(n)), 1.0, 1e-10);
      std::mt19937_64 rng(n);
      for (int k = 0; k < 20; ++k) {
        PauliString p = oracle::random_pauli(n, rng);
        if (y_parity(p) == Parity::even) p.set(0, p[0] == Pauli::Y ? Pauli::I : Pauli::Y);
        EXPECT_EQ(mps_expectation(r.mps, p), 0.0);
      }
    }
  }
}

TEST(Dmrg, SixteenSitesSweepsAreMonotone) {
  DmrgParams p;
  p.max_bond = 64;
  const auto r = dmrg_ground(critical(16), p);
  ASSERT_GE(r.sweep_energies.size(), 2u);
  for (std::size_t k = 1; k < r.sweep_energies.size(); ++k) {
    EXPECT_LE(r.sweep_energies[k], r.sweep_energies[k - 1] + 1e-10) << "sweep " << k;
  }
  EXPECT_GE(r.energy, lanczos_ground(critical(16)).energy - 1e-10);
  EXPECT_LE(r.mps.max_bond_dim(), 64);
}

class CacheTest : public ::testing::Test {
 protected:
  void SetUp() override {
    ground_ = std::make_unique<GroundState>(lanczos_ground(critical(10)));
    mps_ = std::make_unique<RealMps>(mps_from_dense(ground_->state, 1e-12));
    dense_ = std::make_unique<RealState>(mps_->to_dense());
  }
  std::unique_ptr<GroundState> ground_;
  std::unique_ptr<RealMps> mps_;
  // Reference values come from the MPS's own dense reconstruction.
  std::unique_ptr<RealState> dense_;
};

TEST_F(CacheTest, IdentityIsOne) {
  EnvironmentCache<double> cache(*mps_);
  EXPECT_NEAR(mps_pauli_expectation(*mps_, PauliString::identity(10), cache), 1.0, 1e-10);
}

TEST_F(CacheTest, RandomWalkMatchesDense) {
  EnvironmentCache<double> cache(*mps_);
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<std::size_t> site(0, 9);
  std::uniform_int_distribution<int> code(0, 3);
  PauliString p = PauliString::identity(10);
  for (int k = 0; k < 300; ++k) {
    PauliString q = p;
    q.set(site(rng), static_cast<Pauli>(code(rng)));
    if (k % 3 == 0) q.set(site(rng), static_cast<Pauli>(code(rng)));
    const double v = cache.evaluate(q);
    EXPECT_NEAR(v, expectation(q, *dense_), 1e-8) << q.str();
    if (k % 2 == 0) {
      cache.commit(q);
      p = q;
    }
    EXPECT_NEAR(cache.current_value(), expectation(p, *dense_), 1e-8);
  }
  // Fully random strings through the convenience entry point.
  for (int k = 0; k < 50; ++k) {
    const PauliString q = oracle::random_pauli(10, rng);
    EXPECT_NEAR(mps_pauli_expectation(*mps_, q, cache), expectation(q, *dense_), 1e-8);
  }
}

TEST_F(CacheTest, SingleSiteChangeTouchesOnlyStaleStretch) {
  EnvironmentCache<double> cache(*mps_);
  PauliString p = parse_pauli("XIIIIIIIII");
  mps_pauli_expectation(*mps_, p, cache);
  // Right environments were all valid for the identity; a change at site 0
  // contracts exactly one site.
  EXPECT_EQ(cache.transfer_count(), 1u);
  // Change at site 6: left side stale from 1..6 (6 transfers), right side valid.
  const std::uint64_t before = cache.transfer_count();
  p.set(6, Pauli::Z);
  mps_pauli_expectation(*mps_, p, cache);
  EXPECT_EQ(cache.transfer_count() - before, 6u);
  // Change back near the left: right side stale from site 6 down to 3.
  const std::uint64_t mid = cache.transfer_count();
  p.set(2, Pauli::X);
  mps_pauli_expectation(*mps_, p, cache);
  EXPECT_LE(cache.transfer_count() - mid, 10u - 2u);
  EXPECT_GE(cache.right_valid(), 3u);
}

TEST_F(CacheTest, PaddedPrefixAndSuffixValues) {
  EnvironmentCache<double> cache(*mps_);
  std::mt19937_64 rng(4);
  for (int k = 0; k < 20; ++k) {
    const PauliString q = oracle::random_pauli(10, rng);
    cache.commit(q);
    for (std::size_t l = 1; l < 10; ++l) {
      PauliString a = q;
      PauliString b = q;
      for (std::size_t j = 0; j < 10; ++j) (j < l ? b : a).set(j, Pauli::I);
      EXPECT_NEAR(cache.prefix_value(l), expectation(a, *dense_), 1e-8);
      EXPECT_NEAR(cache.suffix_value(l), expectation(b, *dense_), 1e-8);
    }
  }
}

TEST(CacheComplex, MatchesDenseOnComplexState) {
  std::mt19937_64 rng(30);
  const ComplexState s(6, oracle::random_state(6, rng));
  const auto mps = mps_from_dense(s, 0.0);
  EnvironmentCache<cplx> cache(mps);
  for (int k = 0; k < 60; ++k) {
    const PauliString q = oracle::random_pauli(6, rng);
    EXPECT_NEAR(mps_pauli_expectation(mps, q, cache), expectation(q, s), 1e-10);
    for (std::size_t l = 1; l < 6; ++l) {
      PauliString a = q;
      for (std::size_t j = l; j < 6; ++j) a.set(j, Pauli::I);
      EXPECT_NEAR(cache.prefix_value(l), expectation(a, s), 1e-10);
    }
  }
}

}  // namespace
}  // namespace srecrit
