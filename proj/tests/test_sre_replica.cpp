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
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "srecrit/sre_exact.hpp"
#include "srecrit/sre_replica.hpp"
#include "srecrit/tfim.hpp"

namespace srecrit {
namespace {

constexpr Index kNoCap = std::numeric_limits<Index>::max();

RealState critical(std::size_t n) { return lanczos_ground(TfimSpec{n, 1.0}).state; }

double dense_expectation(const RealState& s, const PauliString& p) { return expectation(p, s); }

TEST(BuildPauliMps, ZeroState) {
  const auto p = build_pauli_mps(RealMps::product_state(4), 3);
  for (Index b : p.bond_dims()) EXPECT_EQ(b, 1);
  for (std::uint64_t x = 0; x < 16; ++x) {
    for (std::uint64_t z = 0; z < 16; ++z) {
      const auto m = PauliString::from_masks(4, x, z);
      EXPECT_NEAR(p.entry(m), x == 0 ? 0.25 : 0.0, 1e-15) << m.str();
    }
  }
}

TEST(BuildPauliMps, BellPairIsPure) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(4);
  v(0) = v(3) = std::sqrt(0.5);
  const auto p = build_pauli_mps(mps_from_dense(RealState(2, v), 0.0), 4);
  EXPECT_NEAR(p.norm_squared(), 1.0, 1e-12);
  EXPECT_NEAR(p.entry(parse_pauli("YY")), -0.5, 1e-14);
  EXPECT_NEAR(p.entry(parse_pauli("XX")), 0.5, 1e-14);
}

TEST(BuildPauliMps, EntriesMatchDenseAtEightSites) {
  const auto s = critical(8);
  const auto mps = mps_from_dense(s, 0.0);
  const Index chi = mps.max_bond_dim();
  const auto p = build_pauli_mps(mps, chi * chi);
  EXPECT_EQ(p.discarded, 0.0);
  EXPECT_NEAR(p.norm_squared(), 1.0, 1e-10);
  std::mt19937_64 rng(8);
  for (int k = 0; k < 100; ++k) {
    const auto m = oracle::random_pauli(8, rng);
    EXPECT_NEAR(p.entry(m), dense_expectation(s, m) / 16.0, 1e-10) << m.str();
  }
}

TEST(BuildPauliMps, ComplexStatePurity) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 3; ++t) {
    const ComplexState s(5, oracle::random_state(5, rng));
    const auto p = build_pauli_mps(mps_from_dense(s, 0.0));
    EXPECT_NEAR(p.norm_squared(), 1.0, 1e-10);
    for (int k = 0; k < 20; ++k) {
      const auto m = oracle::random_pauli(5, rng);
      EXPECT_NEAR(p.entry(m), expectation(m, s) / std::sqrt(32.0), 1e-12) << m.str();
    }
  }
}

TEST(HadamardPower, StabilizerEntries) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(16);
  v(0) = v(15) = std::sqrt(0.5);
  const RealState ghz(4, v);
  const auto p = build_pauli_mps(mps_from_dense(ghz, 0.0));
  for (int n : {2, 3}) {
    const auto pn = hadamard_power(p, n);
    EXPECT_EQ(pn.power, n);
    for (std::uint64_t x = 0; x < 16; ++x) {
      for (std::uint64_t z = 0; z < 16; ++z) {
        const auto m = PauliString::from_masks(4, x, z);
        const double e = dense_expectation(ghz, m);
        EXPECT_NEAR(pn.entry(m), std::pow(e / 4.0, n), 1e-13) << m.str();
      }
    }
  }
}

TEST(HadamardPower, TStateSquare) {
  Eigen::VectorXcd v(2);
  v << 1.0, std::polar(1.0, std::numbers::pi / 4);
  const auto p = build_pauli_mps(mps_from_dense(ComplexState::normalized(1, v), 0.0));
  const auto p2 = hadamard_power(p, 2);
  EXPECT_NEAR(p2.entry(parse_pauli("I")), 0.5, 1e-14);
  EXPECT_NEAR(p2.entry(parse_pauli("X")), 0.25, 1e-14);
  EXPECT_NEAR(p2.entry(parse_pauli("Y")), 0.25, 1e-14);
  EXPECT_NEAR(p2.entry(parse_pauli("Z")), 0.0, 1e-14);
}

TEST(HadamardPower, SpotEntriesAtSixSites) {
  const auto s = critical(6);
  const auto p2 = hadamard_power(build_pauli_mps(mps_from_dense(s, 0.0)), 2);
  std::mt19937_64 rng(6);
  for (int k = 0; k < 100; ++k) {
    const auto m = oracle::random_pauli(6, rng);
    const double e = dense_expectation(s, m);
    EXPECT_NEAR(p2.entry(m), e * e / 64.0, 1e-10) << m.str();
  }
}

TEST(HadamardPower, RejectsBadInput) {
  const auto p = build_pauli_mps(RealMps::product_state(3));
  EXPECT_THROW(hadamard_power(p, 1), InvalidArgument);
  EXPECT_THROW(hadamard_power(hadamard_power(p, 2), 2), InvalidArgument);
  EXPECT_THROW(sre_from_replica(hadamard_power(p, 2), 3), InvalidArgument);
}

TEST(HadamardPower, StepBudgetIsEnforced) {
  PauliBasisMps<double> p;
  p.sites.resize(2);
  for (int m = 0; m < 4; ++m) {
    p.sites[0][m] = Eigen::MatrixXd::Ones(1, 6000);
    p.sites[1][m] = Eigen::MatrixXd::Ones(6000, 1);
  }
  EXPECT_THROW(hadamard_power(p, 2), BudgetExceeded);
}

TEST(SreFromReplica, ZeroState) {
  const auto p = build_pauli_mps(RealMps::product_state(5));
  EXPECT_NEAR(sre_from_replica(hadamard_power(p, 2), 2).value, 0.0, 1e-12);
}

TEST(SreFromReplica, MatchesEnumerationUntruncated) {
  for (std::size_t n : {4u, 6u, 8u}) {
    const auto s = critical(n);
    const auto mps = mps_from_dense(s, 0.0);
    for (int a : {2, 3}) {
      const auto e = sre_replica(mps, a, kNoCap);
      EXPECT_NEAR(e.value, sre_full_exact(s, a).value, 1e-10) << n << " " << a;
      EXPECT_EQ(e.std_error, 0.0);
      EXPECT_EQ(e.method, "replica");
      EXPECT_LT(e.diagnostics.at("discarded_weight"), 1e-15);
    }
  }
}

TEST(SreFromReplica, ComplexStateMatchesEnumeration) {
  std::mt19937_64 rng(5);
  const ComplexState s(5, oracle::random_state(5, rng));
  for (int a : {2, 3, 4}) {
    EXPECT_NEAR(sre_replica(mps_from_dense(s, 0.0), a, kNoCap).value, sre_full_exact(s, a).value, 1e-10);
  }
}

TEST(SreFromReplica, TruncationScheduleComparison) {
  const auto s = critical(8);
  const auto mps = mps_from_dense(s, 0.0);
  const double exact = sre_full_exact(s, 2).value;
  for (Index cap : {24, 48, 96}) {
    const auto every = sre_replica(mps, 2, cap, kReplicaCutoff, ReplicaTruncation::every_application);
    const auto once = sre_replica(mps, 2, cap, kReplicaCutoff, ReplicaTruncation::build_only);
    EXPECT_LE(every.diagnostics.at("chi_p"), cap);
    // Both schedules approach the exact value as the cap grows.
    EXPECT_LT(std::abs(every.value - exact), 0.05) << cap;
    EXPECT_LT(std::abs(once.value - exact), 0.05) << cap;
    RecordProperty("cap_" + std::to_string(cap),
                   std::to_string(every.value - exact) + " / " + std::to_string(once.value - exact));
  }
  EXPECT_LT(std::abs(sre_replica(mps, 2, 96).value - exact), std::abs(sre_replica(mps, 2, 24).value - exact));
}

TEST(SreFromReplica, CapDoublingConverges) {
  const auto s = critical(8);
  const auto mps = mps_from_dense(s, 1e-12);
  ReplicaOptions opt;
  opt.bond_cap = 16;
  const auto e = sre_replica_converged(mps, 2, opt);
  EXPECT_TRUE(e.flags.empty());
  EXPECT_LT(e.diagnostics.at("delta"), 1e-6);
  EXPECT_NEAR(e.value, sre_full_exact(mps.to_dense(), 2).value, 1e-5);
}

}  // namespace
}  // namespace srecrit
