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
#include <vector>

#include "srecrit/bcft.hpp"

namespace srecrit {
namespace {

// Integer partitions p(0..n) by the coin-change recurrence.
std::vector<double> partition_counts(int n) {
  std::vector<double> p(n + 1, 0.0);
  p[0] = 1.0;
  for (int part = 1; part <= n; ++part) {
    for (int m = part; m <= n; ++m) p[m] += p[m - part];
  }
  return p;
}

// prod_{n=1}^{...} (1 - q^n) through exponent k / 48 <= max_k, built factor by factor.
QSeries euler_product_series(long max_k) {
  QSeries s = QSeries::constant(1.0, max_k);
  for (long n = 1; 48 * n <= max_k; ++n) s = s * (QSeries::constant(1.0, max_k) - QSeries::monomial(1.0, 48 * n, max_k));
  return s;
}

TEST(QSeries, ArithmeticTracksTruncationOrder) {
  const QSeries a = QSeries::monomial(1.0, 0, 100) + QSeries::monomial(2.0, 10, 100);
  const QSeries b = QSeries::monomial(3.0, 5, 60);
  EXPECT_EQ((a + b).max_k(), 60);
  const QSeries ab = a * b;
  EXPECT_EQ(ab.max_k(), 60);  // min(100 + 5, 60 + 0)
  EXPECT_DOUBLE_EQ(ab.coefficient(5), 3.0);
  EXPECT_DOUBLE_EQ(ab.coefficient(15), 6.0);
  EXPECT_THROW(ab.coefficient(61), Error);
  EXPECT_EQ((b * b).max_k(), 65);
  EXPECT_DOUBLE_EQ((2.0 * a).coefficient(10), 4.0);
}

TEST(QSeries, ReciprocalOfShiftedSeries) {
  // q^{-2/48} / (1 - q) = sum q^{(48 m - 2)/48}
  const QSeries a = QSeries::monomial(1.0, 2, 500) - QSeries::monomial(1.0, 50, 500);
  const QSeries r = a.reciprocal();
  EXPECT_EQ(r.max_k(), 496);
  for (long k = -2; k <= r.max_k(); ++k) {
    EXPECT_DOUBLE_EQ(r.coefficient(k), (k + 2) % 48 == 0 ? 1.0 : 0.0) << k;
  }
  const QSeries one = a * r;
  EXPECT_DOUBLE_EQ(one.coefficient(0), 1.0);
  EXPECT_EQ(one.terms().size(), 1u);
}

TEST(QSeries, PowerMatchesRepeatedProduct) {
  const QSeries a = theta3_series(1.0, 300);
  const QSeries cube = a * a * a;
  const QSeries p = a.pow(3);
  EXPECT_EQ(p.max_k(), cube.max_k());
  for (const auto& [k, c] : cube.terms()) EXPECT_DOUBLE_EQ(p.coefficient(k), c);
  const QSeries inv2 = a.pow(-2);
  const QSeries id = inv2 * cube * a.reciprocal();
  EXPECT_NEAR(id.coefficient(0), 1.0, 1e-12);
  for (const auto& [k, c] : id.terms()) {
    if (k != 0) {
      EXPECT_NEAR(c, 0.0, 1e-9) << k;
    }
  }
}

TEST(QSeries, RejectsExponentsOffTheGrid) {
  QSeries s;
  EXPECT_THROW(s.add_power(1.0 / 7.0, 1.0), Error);
  EXPECT_NO_THROW(s.add_power(1.0 / 16.0, 1.0));
  EXPECT_DOUBLE_EQ(s.coefficient(3), 1.0);
  EXPECT_THROW(QSeries().reciprocal(), Error);
}

TEST(QSeries, InverseEtaCountsPartitions) {
  const QSeries inv = eta_series(420).reciprocal();
  const auto p = partition_counts(8);
  for (int n = 0; n <= 8; ++n) EXPECT_DOUBLE_EQ(inv.coefficient(48 * n - 2), p[n]) << n;
}

TEST(QSeries, EtaSumMatchesProductSeries) {
  const QSeries sum = eta_series(400);
  const QSeries prod = QSeries::monomial(1.0, 2, 400) * euler_product_series(400);
  EXPECT_EQ(prod.max_k(), 400);
  for (long k = 0; k <= 400; ++k) EXPECT_DOUBLE_EQ(sum.coefficient(k), prod.coefficient(k)) << k;
}

TEST(QSeries, ThetaSumsMatchProductSeries) {
  const long K = 400;
  QSeries t3 = euler_product_series(K), t4 = t3;
  QSeries t2 = 2.0 * QSeries::monomial(1.0, 6, K) * t3;
  const QSeries one = QSeries::constant(1.0, K);
  for (long n = 1; 48 * n - 24 <= K; ++n) {
    const QSeries h = QSeries::monomial(1.0, 48 * n - 24, K);
    t3 = t3 * (one + h) * (one + h);
    t4 = t4 * (one - h) * (one - h);
  }
  for (long n = 1; 48 * n <= K; ++n) {
    const QSeries h = QSeries::monomial(1.0, 48 * n, K);
    t2 = t2 * (one + h) * (one + h);
  }
  const QSeries s2 = theta2_series(1.0, K), s3 = theta3_series(1.0, K), s4 = theta4_series(1.0, K);
  for (long k = 0; k <= K; ++k) {
    EXPECT_DOUBLE_EQ(s2.coefficient(k), t2.coefficient(k)) << k;
    EXPECT_DOUBLE_EQ(s3.coefficient(k), t3.coefficient(k)) << k;
    EXPECT_DOUBLE_EQ(s4.coefficient(k), t4.coefficient(k)) << k;
  }
}

TEST(QSeries, EvaluationMatchesNumericFunctionsAtSmallNome) {
  const double q = 0.01;
  EXPECT_NEAR(eta_series().evaluate(q), eta(q), 1e-15);
  EXPECT_NEAR(theta2_series().evaluate(q), theta2(q), 1e-15);
  EXPECT_NEAR(theta4_series(2.0).evaluate(q), theta4(q * q), 1e-15);
  EXPECT_NEAR(theta2_series(0.5).evaluate(q), theta2(std::sqrt(q)), 1e-15);
}

TEST(EtaTheta, LeadingBehaviourNearZero) {
  const double q = 1e-12;
  EXPECT_NEAR(eta(q) / std::pow(q, 1.0 / 24.0), 1.0, 1e-11);
  EXPECT_NEAR(theta3(q), 1.0, 1e-5);
  EXPECT_EQ(theta3(0.0), 1.0);
  EXPECT_EQ(theta4(0.0), 1.0);
  EXPECT_EQ(theta2(0.0), 0.0);
  EXPECT_EQ(eta(0.0), 0.0);
}

TEST(EtaTheta, SumAndProductFormsAgree) {
  for (double q : {0.1, 0.3, 0.5}) {
    EXPECT_NEAR(eta_sum(q) / eta(q), 1.0, 1e-12) << q;
    EXPECT_NEAR(theta2_sum(q) / theta2(q), 1.0, 1e-12) << q;
    EXPECT_NEAR(theta3_sum(q) / theta3(q), 1.0, 1e-12) << q;
    EXPECT_NEAR(theta4_sum(q) / theta4(q), 1.0, 1e-12) << q;
  }
}

TEST(EtaTheta, JacobiTripleProductIdentity) {
  for (double q : {0.1, 0.3, 0.5, 0.8}) {
    EXPECT_NEAR(2.0 * std::pow(eta(q), 3) / (theta2(q) * theta3(q) * theta4(q)), 1.0, 1e-12) << q;
  }
}

TEST(EtaTheta, DuplicationIdentities) {
  const double q = 0.5;
  const double t3 = theta3(q), t4 = theta4(q);
  EXPECT_NEAR(theta4(q * q), std::sqrt(t3 * t4), 1e-12);
  EXPECT_NEAR(std::pow(theta3(q * q), 2), 0.5 * (t3 * t3 + t4 * t4), 1e-12);
  EXPECT_NEAR(std::pow(theta2(q * q), 2), 0.5 * (t3 * t3 - t4 * t4), 1e-12);
}

TEST(EtaTheta, RejectsNomeOutsideDisc) {
  EXPECT_THROW(eta(1.0), Error);
  EXPECT_THROW(theta3(-0.1), Error);
  EXPECT_THROW(theta2_sum(1.5), Error);
}

TEST(Modular, SelfDualPointIsExactForEta) {
  const auto r = modular_check(1.0);
  EXPECT_EQ(r.q, r.q_dual);
  EXPECT_EQ(r.eta, 0.0);
  EXPECT_EQ(r.theta3, 0.0);
  EXPECT_LT(r.max_residual(), 1e-14);
}

TEST(Modular, TransformsHoldAwayFromSelfDualPoint) {
  const auto a = modular_check(2.0);
  const auto b = modular_check(0.5);
  EXPECT_LT(a.max_residual(), 1e-10);
  EXPECT_LT(b.max_residual(), 1e-10);
  EXPECT_DOUBLE_EQ(a.q, b.q_dual);
  for (double t : {0.2, 0.7, 3.0, 6.0}) EXPECT_LT(modular_check(t).max_residual(), 1e-10) << t;
}

TEST(Modular, UnswappedThetaTransformFails) {
  // theta2 goes to theta4 under tau -> -1/tau; the unswapped relation is far off.
  const double t = 2.0;
  const double q = std::exp(-2.0 * std::numbers::pi * t), qd = std::exp(-2.0 * std::numbers::pi / t);
  EXPECT_GT(std::abs(theta2(qd) - std::sqrt(t) * theta2(q)), 0.1);
}

TEST(Modular, RejectsOutOfDiscModuli) {
  EXPECT_THROW(modular_check(0.0), Error);
  EXPECT_THROW(modular_check(-1.0), Error);
  EXPECT_THROW(modular_check(1e-3), Error);
  EXPECT_THROW(modular_check(1e3), Error);
}

TEST(GFactors, DirichletValue) {
  EXPECT_NEAR(g_dirichlet(BoundaryParams{2.0, 1.0, 1}), 0.7071068, 5e-8);
}

TEST(GFactors, DirichletNeumannProduct) {
  for (const BoundaryParams p : {BoundaryParams{2.0, 1.0, 1}, BoundaryParams{0.7, 1.9, 3}, BoundaryParams{5.0, 0.4, 6}}) {
    EXPECT_NEAR(g_dirichlet(p) * g_neumann(p), std::pow(2.0, -p.components / 2.0), 1e-14);
  }
}

TEST(GFactors, ReplicaChainGivesSqrtAlpha) {
  for (int a = 1; a <= 5; ++a) EXPECT_NEAR(g_gamma1(a), std::sqrt(static_cast<double>(a)), 1e-14) << a;
  EXPECT_DOUBLE_EQ(g_gamma1(1), 1.0);
  // N = 2: the circle value is sqrt(N/2) with no radius dependence.
  EXPECT_DOUBLE_EQ(g_gamma1_circ(BoundaryParams{3.0, 0.3, 2}), 1.0);
}

TEST(GFactors, RejectsInvalidParams) {
  EXPECT_THROW(g_dirichlet(BoundaryParams{0.0, 1.0, 1}), Error);
  EXPECT_THROW(g_neumann(BoundaryParams{1.0, -1.0, 1}), Error);
  EXPECT_THROW(g_gamma1_circ(BoundaryParams{1.0, 1.0, 0}), Error);
  EXPECT_THROW(g_gamma1(0), Error);
}

TEST(Predictions, UniversalConstants) {
  EXPECT_NEAR(c_alpha(2.0), std::log(std::sqrt(2.0)), 1e-15);
  EXPECT_NEAR(c_alpha(2.0), 0.3465736, 5e-8);
  EXPECT_NEAR(c_alpha(3.0), 0.2746531, 5e-8);
  EXPECT_EQ(c_alpha(1.0), 0.5);
  EXPECT_NEAR(c_alpha(1.0 + 1e-9), 0.5, 1e-9);
  EXPECT_NEAR(c_alpha(0.5), std::log(std::sqrt(0.5)) / -0.5, 1e-15);
  EXPECT_THROW(c_alpha(0.0), Error);
}

TEST(Predictions, ChordLengthAndSlopes) {
  EXPECT_NEAR(chord_length(8, 16), 16 / std::numbers::pi, 1e-14);
  EXPECT_NEAR(chord_length(3, 16), chord_length(13, 16), 1e-13);
  EXPECT_NEAR(predicted_w(2.0, 5, 16), 0.25 * std::log(chord_length(5, 16)), 1e-15);
  EXPECT_NEAR(predicted_w(3.0, 5, 16), 0.125 * std::log(chord_length(5, 16)), 1e-15);
  EXPECT_NEAR(predicted_i2(5, 16), 0.25 * std::log(chord_length(5, 16)), 1e-15);
  EXPECT_THROW(chord_length(0, 16), Error);
  EXPECT_THROW(chord_length(16, 16), Error);
  EXPECT_THROW(predicted_w(1.0, 4, 16), Error);
}

TEST(Characters, DirichletNeumannAmplitude) {
  const auto dec = character_decompose(dirichlet_neumann_amplitude(), 1);
  EXPECT_DOUBLE_EQ(dec.lowest_weight, 1.0 / 16.0);
  EXPECT_DOUBLE_EQ(dec.lowest_weight, kBccoDimension);
  std::size_t expected = 0;
  for (long n = 1; (n - 0.5) * (n - 0.5) / 4.0 <= dec.valid_to; ++n) {
    ++expected;
    EXPECT_NEAR(dec.coefficient((n - 0.5) * (n - 0.5) / 4.0), 1.0, 1e-12) << n;
  }
  EXPECT_GE(expected, 5u);
  EXPECT_EQ(dec.terms.size(), expected);
}

TEST(Characters, TwistedLeadingCoefficient) {
  for (int n : {1, 2, 4}) {
    const auto dec = character_decompose(twisted_amplitude(n), n);
    EXPECT_EQ(dec.lowest_weight, 0.0);
    EXPECT_NEAR(dec.coefficient(0.0), std::pow(2.0, -n / 2.0), 1e-14) << n;
  }
}

TEST(Characters, SelfAmplitudesHaveCardyMultiplicities) {
  const BoundaryParams p{2.0, 1.0, 1};
  // sum_m qt^{2 m^2}: 1 at h = 0, 2 at h = 2 m^2.
  const auto d = character_decompose(dirichlet_self_amplitude(p), 1);
  EXPECT_NEAR(d.coefficient(0.0), 1.0, 1e-12);
  EXPECT_NEAR(d.coefficient(2.0), 2.0, 1e-12);
  EXPECT_NEAR(d.coefficient(8.0), 2.0, 1e-10);
  EXPECT_EQ(d.terms.size(), 3u);
  const auto n = character_decompose(neumann_self_amplitude(p), 1);
  for (const auto& t : n.terms) {
    EXPECT_NEAR(t.coefficient, std::round(t.coefficient), 1e-9);
    EXPECT_GT(t.coefficient, 0.0);
  }
  EXPECT_NEAR(n.coefficient(0.0), 1.0, 1e-12);
  EXPECT_NEAR(n.coefficient(0.5), 2.0, 1e-12);
}

TEST(Characters, DepthBeyondTruncationThrows) {
  const QSeries a = dirichlet_neumann_amplitude(100);
  EXPECT_NO_THROW(character_decompose(a, 1, 1.0));
  EXPECT_THROW(character_decompose(a, 1, 5.0), Error);
  const auto dec = character_decompose(a, 1, 1.0);
  EXPECT_EQ(dec.terms.size(), 2u);  // h = 1/16, 9/16
  EXPECT_THROW(dec.coefficient(2.0), Error);
}

TEST(Characters, ChannelsAgreeNumerically) {
  for (double t : {0.9, 1.0, 1.2}) {
    const double q = std::exp(-2.0 * std::numbers::pi * t), qd = std::exp(-2.0 * std::numbers::pi / t);
    EXPECT_NEAR(dirichlet_neumann_amplitude().evaluate(qd) / dirichlet_neumann_amplitude_direct(q), 1.0, 1e-10);
    for (int n : {1, 2, 4}) {
      EXPECT_NEAR(twisted_amplitude(n).evaluate(qd) / twisted_amplitude_direct(n, q), 1.0, 1e-10) << n;
    }
    for (const BoundaryParams p : {BoundaryParams{2.0, 1.0, 1}, BoundaryParams{0.5, 2.0, 2}}) {
      EXPECT_NEAR(dirichlet_self_amplitude(p).evaluate(qd) / dirichlet_self_amplitude_direct(p, q), 1.0, 1e-10);
      EXPECT_NEAR(neumann_self_amplitude(p).evaluate(qd) / neumann_self_amplitude_direct(p, q), 1.0, 1e-10);
    }
  }
}

TEST(IdentitySuite, AllChecksPass) {
  const auto checks = bcft_identity_suite();
  EXPECT_GT(checks.size(), 40u);
  for (const auto& c : checks) EXPECT_TRUE(c.passed()) << c.name << " residual " << c.residual;
}

}  // namespace
}  // namespace srecrit
