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
#ifndef SRECRIT_BCFT_HPP_
#define SRECRIT_BCFT_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "srecrit/common.hpp"

namespace srecrit {

/// Truncated power series in q^{1/D}: sum_k c_k q^{k/D}, known exactly for
/// k <= max_k. Results of arithmetic carry the order up to which they are
/// still exact, so truncation error never leaks into retained terms.
class QSeries {
 public:
  static constexpr int kDefaultDenominator = 48;
  static constexpr long kDefaultMaxK = 400;

  explicit QSeries(long max_k = kDefaultMaxK, int denominator = kDefaultDenominator);

  static QSeries constant(double c, long max_k = kDefaultMaxK, int denominator = kDefaultDenominator);
  static QSeries monomial(double c, long k, long max_k = kDefaultMaxK, int denominator = kDefaultDenominator);

  int denominator() const { return denom_; }
  long max_k() const { return max_k_; }
  /// Highest exponent known exactly, max_k / D.
  double order() const { return static_cast<double>(max_k_) / denom_; }
  const std::map<long, double>& terms() const { return coeffs_; }
  double coefficient(long k) const;
  /// Smallest k with a nonzero coefficient; nullopt for the zero series.
  std::optional<long> lowest() const;

  /// Adds c q^{k/D}; ignored above max_k.
  void add_term(long k, double c);
  /// Adds c q^{e} with e a rational exponent that must be a multiple of 1/D.
  void add_power(double exponent, double c);

  QSeries operator+(const QSeries& o) const;
  QSeries operator-(const QSeries& o) const;
  QSeries operator*(const QSeries& o) const;
  QSeries operator*(double s) const;
  friend QSeries operator*(double s, const QSeries& a) { return a * s; }

  /// Inverse of a nonzero series c q^{k0} (1 + ...); k0 may be any sign.
  QSeries reciprocal() const;
  QSeries pow(int n) const;
  /// Copy with exponents beyond `max_k` dropped.
  QSeries truncated(long max_k) const;

  /// sum_k c_k q^{k/D} for 0 <= q < 1.
  double evaluate(double q) const;

 private:
  long max_k_;
  int denom_;
  std::map<long, double> coeffs_;
};

// Numeric eta and theta functions of a real nome 0 <= q < 1 with
//   eta    = q^{1/24} prod (1 - q^n)
//   theta2 = sum q^{(n+1/2)^2/2},  theta3 = sum q^{n^2/2},  theta4 = sum (-1)^n q^{n^2/2}.
// The plain names evaluate the product forms.
double eta(double q);
double theta2(double q);
double theta3(double q);
double theta4(double q);
double eta_sum(double q);
double theta2_sum(double q);
double theta3_sum(double q);
double theta4_sum(double q);

/// Nome limit for numeric evaluation and modular checks.
inline constexpr double kMaxNome = 0.95;

// The same functions as series in q, exact through q^{max_k/D}. `scale`
// substitutes q -> q^scale (e.g. 2 for theta4(q^2), 0.5 for theta2(q^{1/2})).
QSeries eta_series(long max_k = QSeries::kDefaultMaxK, int denominator = QSeries::kDefaultDenominator);
QSeries theta2_series(double scale = 1.0, long max_k = QSeries::kDefaultMaxK,
                      int denominator = QSeries::kDefaultDenominator);
QSeries theta3_series(double scale = 1.0, long max_k = QSeries::kDefaultMaxK,
                      int denominator = QSeries::kDefaultDenominator);
QSeries theta4_series(double scale = 1.0, long max_k = QSeries::kDefaultMaxK,
                      int denominator = QSeries::kDefaultDenominator);

/// Residuals (relative) of the S-transform identities at tau = i t:
///   eta(qt) = sqrt(t) eta(q), theta3(qt) = sqrt(t) theta3(q),
///   theta2(qt) = sqrt(t) theta4(q), theta4(qt) = sqrt(t) theta2(q),
/// with q = exp(-2 pi t) and qt = exp(-2 pi / t).
struct ModularReport {
  double t = 1.0;
  double q = 0.0;
  double q_dual = 0.0;
  double eta = 0.0;
  double theta2 = 0.0;
  double theta3 = 0.0;
  double theta4 = 0.0;
  double max_residual() const;
};
ModularReport modular_check(double t);

/// Square compactification lattice R Z^N with coupling kappa.
struct BoundaryParams {
  double kappa = 2.0;
  double radius = 1.0;
  int components = 1;
  void validate() const;
};

double g_dirichlet(const BoundaryParams& p);
double g_neumann(const BoundaryParams& p);
/// g-factor of the mixed boundary state on the circle theory.
double g_gamma1_circ(const BoundaryParams& p);
/// Orbifold g-factor |G|^{-1/2} |G0| g1_circ with |G| = 2^N, |G0| = 2^{N-1}.
double g_gamma1_orbifold(const BoundaryParams& p);
/// Replica boundary: N = 2 alpha, kappa = 2, R = 1. Equals sqrt(alpha).
double g_gamma1(int alpha);

/// Scaling dimension of the boundary-condition-changing operator.
inline constexpr double kBccoDimension = 1.0 / 16.0;

/// ln sqrt(alpha) / (alpha - 1); 1/2 at alpha = 1.
double c_alpha(double alpha);
/// (L / pi) sin(pi l / L) for 0 < l < L.
double chord_length(double l, double num_sites);
/// 4 Delta / (alpha - 1) ln l_c, alpha != 1.
double predicted_w(double alpha, double l, double num_sites);
/// (1/4) ln l_c.
double predicted_i2(double l, double num_sites);

// Amplitudes, as series in the dual nome.
/// sqrt(eta / theta2) after the S transform: theta2(qt^{1/2}) / (2 eta(qt)).
QSeries dirichlet_neumann_amplitude(long max_k = QSeries::kDefaultMaxK);
/// Twisted-sector self amplitude (theta4(qt^2) / (sqrt2 eta(qt)))^N.
QSeries twisted_amplitude(int components, long max_k = QSeries::kDefaultMaxK);
/// Dirichlet self amplitude after Poisson resummation: sum_{R in Lambda} qt^{kappa R^2} / eta(qt)^N.
QSeries dirichlet_self_amplitude(const BoundaryParams& p, long max_k = QSeries::kDefaultMaxK);
/// Neumann self amplitude after Poisson resummation: sum_{K in Lambda*} qt^{K^2/kappa} / eta(qt)^N.
QSeries neumann_self_amplitude(const BoundaryParams& p, long max_k = QSeries::kDefaultMaxK);

// The same amplitudes in the direct channel, evaluated at q = exp(-2 pi t).
double dirichlet_neumann_amplitude_direct(double q);
double twisted_amplitude_direct(int components, double q);
double dirichlet_self_amplitude_direct(const BoundaryParams& p, double q);
double neumann_self_amplitude_direct(const BoundaryParams& p, double q);

struct CharacterTerm {
  long k = 0;  // weight h = k / D
  double h = 0.0;
  double coefficient = 0.0;
};

struct CharacterDecomposition {
  int denominator = QSeries::kDefaultDenominator;
  std::vector<CharacterTerm> terms;  // ascending h, nonzero coefficients only
  double lowest_weight = 0.0;
  /// Weights up to here are exact.
  double valid_to = 0.0;
  double coefficient(double h) const;
};

/// Multiplicities of the N-boson characters qt^h / eta(qt)^N in `amplitude`,
/// for h <= depth (default: everything the truncation order supports).
CharacterDecomposition character_decompose(const QSeries& amplitude, int components,
                                           std::optional<double> depth = std::nullopt);

struct IdentityCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed() const { return residual <= tolerance; }
};

/// Theta/eta identities, modular transforms, character multiplicities and
/// the g-factor chain; used by the CLI self-test and the acceptance suite.
std::vector<IdentityCheck> bcft_identity_suite();

}  // namespace srecrit

#endif  // SRECRIT_BCFT_HPP_
