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
#include <cstdlib>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "srecrit/sre_exact.hpp"
#include "srecrit/tfim.hpp"

namespace srecrit {
namespace {

constexpr double kLn2 = std::numbers::ln2;
const std::vector<double> kAlphaGrid = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0};

// Frozen from the first oracle run (critical periodic chain, even sector).
constexpr double kGoldenM2L4 = 0.891217094322039;
constexpr double kGoldenSubL8 = 1.566574083835758;
constexpr double kGoldenW2L8 = 1.019695593089828;

// Independent values from a separate numpy enumeration, rounded to 1e-6.
// Rows: L = 4, 6, 8, 10, 12; columns: kAlphaGrid.
constexpr double kTable[5][8] = {
    {1.263593, 1.109643, 0.990072, 0.891217, 0.805262, 0.728027, 0.657780, 0.594145},
    {2.188727, 1.890669, 1.673878, 1.501477, 1.355497, 1.226062, 1.108366, 1.000984},
    {3.124205, 2.676390, 2.360430, 2.113453, 1.906939, 1.725230, 1.560163, 1.408968},
    {4.063923, 3.464011, 3.048096, 2.726119, 2.458833, 2.224807, 2.012430, 1.817413},
    {5.005783, 4.252586, 3.736323, 3.339131, 3.010942, 2.724570, 2.464922, 2.226087}};

RealState critical_ground(std::size_t n) { return lanczos_ground(TfimSpec{n, 1.0}).state; }

ComplexState t_state() {
  Eigen::VectorXcd t(2);
  t << 1.0, std::polar(1.0, std::numbers::pi / 4);
  return ComplexState::normalized(1, t);
}

RealState bell_pair() {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(4);
  v(0) = v(3) = std::sqrt(0.5);
  return RealState(2, v);
}

TEST(WalshHadamard, MatchesDefinition) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  Eigen::VectorXd v(16);
  for (auto& x : v) x = g(rng);
  Eigen::VectorXd w = v;
  walsh_hadamard(w);
  for (int z = 0; z < 16; ++z) {
    double s = 0.0;
    for (int b = 0; b < 16; ++b) s += ((std::popcount(unsigned(b & z)) & 1) ? -1.0 : 1.0) * v(b);
    EXPECT_NEAR(w(z), s, 1e-12);
  }
}

TEST(SreFullExact, StabilizerZeroState) {
  for (double a : kAlphaGrid) {
    EXPECT_NEAR(sre_full_exact(RealState::basis_state(5, 0), a).value, 0.0, 1e-14) << a;
  }
}

TEST(SreFullExact, SingleQubitTState) {
  const auto e = sre_full_exact(t_state(), 2.0);
  EXPECT_NEAR(e.value, std::log(4.0 / 3.0), 1e-14);
  EXPECT_EQ(e.std_error, 0.0);
  EXPECT_EQ(e.method, "exact");
}

TEST(SreFullExact, GoldenCriticalFourSites) {
  EXPECT_NEAR(sre_full_exact(critical_ground(4), 2.0).value, kGoldenM2L4, 1e-12);
}

TEST(SreFullExact, MatchesIndependentTable) {
  for (int row = 0; row < 5; ++row) {
    const std::size_t n = 4 + 2 * static_cast<std::size_t>(row);
    const auto r = sre_full_exact(critical_ground(n), std::span<const double>(kAlphaGrid));
    for (int k = 0; k < 8; ++k) EXPECT_NEAR(r[k].value, kTable[row][k], 6e-7) << n << " " << kAlphaGrid[k];
  }
}

TEST(SreFullExact, MatchesBruteForceOnRandomStates) {
  std::mt19937_64 rng(2);
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto psi = oracle::random_state(n, rng);
    for (double a : kAlphaGrid) {
      EXPECT_NEAR(sre_full_exact(ComplexState(n, psi), a).value, oracle::sre_bruteforce(psi, n, a), 1e-10);
    }
  }
}

TEST(SreFullExact, RejectsOverBudgetAndBadAlpha) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(Index{1} << 15);
  v(0) = 1.0;
  EXPECT_THROW(sre_full_exact(RealState(15, v), 2.0), BudgetExceeded);
  EXPECT_THROW(sre_full_exact(RealState::basis_state(2, 0), 0.0), InvalidArgument);
}

TEST(SreFullExact, IndependentOfWorkerCount) {
  const RealState s = critical_ground(10);
  setenv("SRECRIT_THREADS", "1", 1);
  const double one = sre_full_exact(s, 2.5).value;
  setenv("SRECRIT_THREADS", "7", 1);
  const double seven = sre_full_exact(s, 2.5).value;
  unsetenv("SRECRIT_THREADS");
  EXPECT_EQ(one, seven);
}

TEST(SreSubsystemExact, StabilizerMarginalsVanish) {
  const RealState s = RealState::basis_state(5, 0);
  for (double a : {0.5, 2.0, 3.0}) {
    EXPECT_NEAR(sre_subsystem_exact(s, RegionSpec{1, 3}, a).value, 0.0, 1e-14);
  }
  EXPECT_NEAR(sre_subsystem_exact(s, RegionSpec{0, 2}, 1.0).value, 0.0, 1e-14);
}

TEST(SreSubsystemExact, BellPairMarginal) {
  // rho_A = I/2: only the identity has nonzero trace, so sum Tr^4 / 2 = 1/2.
  EXPECT_NEAR(sre_subsystem_exact(bell_pair(), RegionSpec::prefix(1), 2.0).value, kLn2, 1e-14);
  EXPECT_THROW(sre_subsystem_exact(bell_pair(), RegionSpec::prefix(1), 1.0), InvalidArgument);
}

TEST(SreSubsystemExact, GoldenAndDoubledStateForm) {
  const RealState s = critical_ground(8);
  const double v = sre_subsystem_exact(s, RegionSpec::prefix(4), 2.0).value;
  EXPECT_NEAR(v, kGoldenSubL8, 1e-12);
  EXPECT_NEAR(v, sre_subsystem_doubled(s, RegionSpec::prefix(4), 2.0), 1e-10);
  for (double a : {0.5, 1.5, 3.0}) {
    for (const RegionSpec r : {RegionSpec{0, 3}, RegionSpec{2, 4}, RegionSpec{5, 3}}) {
      EXPECT_NEAR(sre_subsystem_exact(s, r, a).value, sre_subsystem_doubled(s, r, a), 1e-10);
    }
  }
}

TEST(SreSubsystemExact, FullRegionEqualsFullState) {
  const RealState s = critical_ground(6);
  EXPECT_NEAR(sre_subsystem_exact(s, RegionSpec::prefix(6), 2.0).value, sre_full_exact(s, 2.0).value,
              1e-12);
}

TEST(RegionSpec, ParsingAndValidation) {
  EXPECT_EQ(RegionSpec::parse("4"), RegionSpec::prefix(4));
  EXPECT_EQ(RegionSpec::parse("3..5"), (RegionSpec{2, 3}));
  EXPECT_EQ(RegionSpec::from_sites({3, 2, 4}), (RegionSpec{1, 3}));
  EXPECT_THROW(RegionSpec::from_sites({1, 3}), InvalidArgument);
  EXPECT_THROW(RegionSpec::parse("x"), InvalidArgument);
  EXPECT_THROW(RegionSpec::prefix(9).validate(8), InvalidArgument);
  EXPECT_THROW(RegionSpec::prefix(8).validate_bipartition(8), InvalidArgument);
  EXPECT_THROW((RegionSpec{1, 2}.validate_bipartition(8)), InvalidArgument);
  EXPECT_EQ((RegionSpec{2, 3}.str()), "3..5");
}

TEST(Renyi2, Examples) {
  EXPECT_NEAR(renyi2_subsystem(RealState::basis_state(4, 5), RegionSpec::prefix(2)), 0.0, 1e-14);
  EXPECT_NEAR(renyi2_subsystem(bell_pair(), RegionSpec::prefix(1)), kLn2, 1e-14);
  const RealState s = critical_ground(10);
  EXPECT_NEAR(renyi2_subsystem(s, RegionSpec::prefix(5)), renyi2_subsystem_pauli(s, RegionSpec::prefix(5)),
              1e-10);
}

TEST(MutualExact, Examples) {
  const RealState zero = RealState::basis_state(6, 0);
  EXPECT_NEAR(mutual_sre_exact(zero, 3, 2.0), 0.0, 1e-14);
  EXPECT_NEAR(mutual_info2_exact(zero, 3), 0.0, 1e-14);
  EXPECT_NEAR(mutual_info2_exact(bell_pair(), 1), 2 * kLn2, 1e-14);
  EXPECT_NEAR(mutual_sre_exact(critical_ground(8), 4, 2.0), kGoldenW2L8, 1e-12);
}

TEST(MutualExact, DensityMatrixAndPauliRoutesAgree) {
  for (std::size_t n = 2; n <= 10; ++n) {
    const RealState s = critical_ground(n);
    for (std::size_t l = 1; l < n; ++l) {
      EXPECT_NEAR(mutual_info2_exact(s, l), mutual_info2_pauli(s, l), 1e-10) << n << " " << l;
    }
  }
}

// ---- properties ---------------------------------------------------------

TEST(SreProperties, FaithfulOnStabilizerFamily) {
  std::mt19937_64 rng(40);
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const auto& psi : oracle::stabilizer_family(n, rng)) {
      for (double a : {0.5, 1.0, 2.0, 3.0}) {
        EXPECT_NEAR(sre_full_exact(ComplexState::normalized(n, psi), a).value, 0.0, 1e-10) << n << " " << a;
      }
    }
  }
}

TEST(SreProperties, CliffordInvariance) {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 20; ++k) {
    const std::size_t n = 2 + static_cast<std::size_t>(k % 5);
    const auto psi = oracle::random_state(n, rng);
    const auto u = oracle::random_clifford(n, 8 * static_cast<int>(n), rng);
    const ComplexState a(n, psi);
    const auto b = ComplexState::normalized(n, u * psi);
    for (double al : {0.5, 1.0, 2.0, 3.0}) {
      EXPECT_LT(std::abs(sre_full_exact(a, al).value - sre_full_exact(b, al).value), 1e-8);
    }
  }
}

TEST(SreProperties, Additivity) {
  std::mt19937_64 rng(42);
  for (std::size_t la = 1; la <= 4; ++la) {
    for (std::size_t lb = 1; la + lb <= 8; ++lb) {
      const ComplexState a(la, oracle::random_state(la, rng));
      const ComplexState b(lb, oracle::random_state(lb, rng));
      const auto ab = tensor_product(a, b);
      for (double al : {0.5, 1.0, 2.0, 3.5}) {
        EXPECT_LT(std::abs(sre_full_exact(ab, al).value - sre_full_exact(a, al).value -
                           sre_full_exact(b, al).value),
                  1e-10);
      }
    }
  }
}

TEST(SreProperties, MonotoneInAlpha) {
  std::mt19937_64 rng(43);
  std::vector<ComplexState> states;
  for (std::size_t n = 1; n <= 6; ++n) states.emplace_back(n, oracle::random_state(n, rng));
  states.emplace_back(t_state());
  for (std::size_t n : {4u, 8u}) states.emplace_back(n, critical_ground(n).amplitudes().cast<cplx>());
  for (const auto& s : states) {
    const auto r = sre_full_exact(s, std::span<const double>(kAlphaGrid));
    for (std::size_t k = 1; k < r.size(); ++k) EXPECT_LE(r[k].value, r[k - 1].value + 1e-10);
  }
}

TEST(SreProperties, BornNormalization) {
  std::mt19937_64 rng(44);
  for (std::size_t n = 1; n <= 6; ++n) {
    const ComplexState s(n, oracle::random_state(n, rng));
    const auto sums = pauli_power_sums(s, std::span<const double>());
    EXPECT_NEAR(std::ldexp(sums.square_sum, -static_cast<int>(n)), 1.0, 1e-10);
  }
}

}  // namespace
}  // namespace srecrit
