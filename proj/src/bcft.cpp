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
#include "srecrit/bcft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace srecrit {

namespace {

constexpr double kExponentSlack = 1e-9;
// Product factors and sum terms below this (relative) no longer change a double.
constexpr double kTail = 1e-18;

void require_nome(double q, const char* what) {
  if (!(q >= 0.0 && q < 1.0)) throw Error(std::string(what) + ": nome must satisfy 0 <= q < 1");
}

double relative_residual(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// prod_{n >= 1} (1 - q^n)
double euler_product(double q) {
  double p = 1.0;
  for (double qn = q; qn > kTail; qn *= q) p *= 1.0 - qn;
  return p;
}

// sum_{n in Z} sign^n q^{scale (n + shift)^2}; shift in {0, 1/2}.
double gaussian_sum(double q, double scale, double shift, bool alternate) {
  if (q == 0.0) return shift == 0.0 ? 1.0 : 0.0;
  double s = 0.0;
  for (long n = 0;; ++n) {
    const double sign = alternate && (n % 2) ? -1.0 : 1.0;
    const double term = std::pow(q, scale * (n + shift) * (n + shift));
    const double mult = (n == 0 && shift == 0.0) ? 1.0 : 2.0;
    s += sign * mult * term;
    if (term < kTail * std::max(1.0, std::abs(s)) && n > 0) break;
  }
  return s;
}

// Margin added to intermediate series so that products and reciprocals
// remain exact through the requested order.
long margin(int components, int denominator) { return 4L * components * denominator / 24 + 8; }

QSeries lattice_theta(double exponent_scale, int components, long max_k, int denominator) {
  QSeries one(max_k, denominator);
  for (long n = 0;; ++n) {
    const double e = exponent_scale * static_cast<double>(n * n);
    if (e * denominator > static_cast<double>(max_k) + kExponentSlack) break;
    one.add_power(e, n == 0 ? 1.0 : 2.0);
    if (exponent_scale == 0.0) throw Error("lattice_theta: zero exponent scale");
  }
  return one.pow(components);
}

}  // namespace

// ---------------------------------------------------------------- QSeries

QSeries::QSeries(long max_k, int denominator) : max_k_(max_k), denom_(denominator) {
  require(denominator >= 1, "QSeries: denominator must be positive");
}

QSeries QSeries::constant(double c, long max_k, int denominator) { return monomial(c, 0, max_k, denominator); }

QSeries QSeries::monomial(double c, long k, long max_k, int denominator) {
  QSeries s(max_k, denominator);
  s.add_term(k, c);
  return s;
}

double QSeries::coefficient(long k) const {
  if (k > max_k_) throw Error("QSeries::coefficient: exponent beyond truncation order");
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? 0.0 : it->second;
}

std::optional<long> QSeries::lowest() const {
  for (const auto& [k, c] : coeffs_) {
    if (c != 0.0) return k;
  }
  return std::nullopt;
}

void QSeries::add_term(long k, double c) {
  if (k > max_k_ || c == 0.0) return;
  const double v = (coeffs_[k] += c);
  if (v == 0.0) coeffs_.erase(k);
}

void QSeries::add_power(double exponent, double c) {
  const double x = exponent * denom_;
  const double k = std::round(x);
  if (std::abs(x - k) > kExponentSlack) {
    throw Error("QSeries: exponent " + std::to_string(exponent) + " is not a multiple of 1/" +
                std::to_string(denom_));
  }
  add_term(static_cast<long>(k), c);
}

QSeries QSeries::operator+(const QSeries& o) const {
  require(denom_ == o.denom_, "QSeries: denominators differ");
  QSeries r(std::min(max_k_, o.max_k_), denom_);
  for (const auto& [k, c] : coeffs_) r.add_term(k, c);
  for (const auto& [k, c] : o.coeffs_) r.add_term(k, c);
  return r;
}

QSeries QSeries::operator-(const QSeries& o) const { return *this + o * -1.0; }

QSeries QSeries::operator*(double s) const {
  QSeries r(max_k_, denom_);
  for (const auto& [k, c] : coeffs_) r.add_term(k, c * s);
  return r;
}

QSeries QSeries::operator*(const QSeries& o) const {
  require(denom_ == o.denom_, "QSeries: denominators differ");
  // A zero series is zero through its own order, i.e. its lowest possible
  // nonzero term sits at max_k + 1.
  const long la = lowest().value_or(max_k_ + 1);
  const long lb = o.lowest().value_or(o.max_k_ + 1);
  QSeries r(std::min(max_k_ + lb, o.max_k_ + la), denom_);
  for (const auto& [ka, ca] : coeffs_) {
    if (ka + lb > r.max_k_) break;
    for (const auto& [kb, cb] : o.coeffs_) {
      if (ka + kb > r.max_k_) break;
      r.add_term(ka + kb, ca * cb);
    }
  }
  return r;
}

QSeries QSeries::reciprocal() const {
  const auto low = lowest();
  if (!low) throw Error("QSeries::reciprocal: zero series");
  const long k0 = *low;
  const long span = max_k_ - k0;
  std::vector<double> a(static_cast<std::size_t>(span) + 1, 0.0);
  for (const auto& [k, c] : coeffs_) a[static_cast<std::size_t>(k - k0)] = c;
  std::vector<double> b(a.size(), 0.0);
  b[0] = 1.0 / a[0];
  for (std::size_t j = 1; j < a.size(); ++j) {
    double s = 0.0;
    for (std::size_t i = 1; i <= j; ++i) s += a[i] * b[j - i];
    b[j] = -s / a[0];
  }
  QSeries r(max_k_ - 2 * k0, denom_);
  for (std::size_t j = 0; j < b.size(); ++j) r.add_term(static_cast<long>(j) - k0, b[j]);
  return r;
}

QSeries QSeries::pow(int n) const {
  if (n < 0) return reciprocal().pow(-n);
  if (n == 0) return constant(1.0, max_k_, denom_);
  std::optional<QSeries> result;
  QSeries base = *this;
  while (n > 0) {
    if (n & 1) result = result ? *result * base : base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return *result;
}

QSeries QSeries::truncated(long max_k) const {
  QSeries r(std::min(max_k, max_k_), denom_);
  for (const auto& [k, c] : coeffs_) r.add_term(k, c);
  return r;
}

double QSeries::evaluate(double q) const {
  require_nome(q, "QSeries::evaluate");
  double s = 0.0;
  for (const auto& [k, c] : coeffs_) {
    if (q == 0.0 && k < 0) throw Error("QSeries::evaluate: negative power at q = 0");
    s += c * std::pow(q, static_cast<double>(k) / denom_);
  }
  return s;
}

// --------------------------------------------------------- eta and theta

double eta(double q) {
  require_nome(q, "eta");
  return std::pow(q, 1.0 / 24.0) * euler_product(q);
}

double theta2(double q) {
  require_nome(q, "theta2");
  if (q == 0.0) return 0.0;
  double p = 2.0 * std::pow(q, 0.125);
  for (double qn = q; qn > kTail; qn *= q) p *= (1.0 - qn) * (1.0 + qn) * (1.0 + qn);
  return p;
}

double theta3(double q) {
  require_nome(q, "theta3");
  double p = euler_product(q);
  for (double qh = std::sqrt(q); qh > kTail; qh *= q) p *= (1.0 + qh) * (1.0 + qh);
  return p;
}

double theta4(double q) {
  require_nome(q, "theta4");
  double p = euler_product(q);
  for (double qh = std::sqrt(q); qh > kTail; qh *= q) p *= (1.0 - qh) * (1.0 - qh);
  return p;
}

double eta_sum(double q) {
  require_nome(q, "eta_sum");
  if (q == 0.0) return 0.0;
  // Pentagonal numbers: sum_{n in Z} (-1)^n q^{(6n - 1)^2 / 24}.
  double s = 0.0;
  for (long m = 0;; ++m) {
    const double sign = (m % 2) ? -1.0 : 1.0;
    const double a = std::pow(q, (6.0 * m - 1) * (6.0 * m - 1) / 24.0);
    const double b = m > 0 ? std::pow(q, (6.0 * m + 1) * (6.0 * m + 1) / 24.0) : 0.0;
    s += sign * (a + b);
    if (m > 0 && a < kTail * std::abs(s)) break;
  }
  return s;
}

double theta2_sum(double q) {
  require_nome(q, "theta2_sum");
  return gaussian_sum(q, 0.5, 0.5, false);
}
double theta3_sum(double q) {
  require_nome(q, "theta3_sum");
  return gaussian_sum(q, 0.5, 0.0, false);
}
double theta4_sum(double q) {
  require_nome(q, "theta4_sum");
  return gaussian_sum(q, 0.5, 0.0, true);
}

QSeries eta_series(long max_k, int denominator) {
  QSeries s(max_k, denominator);
  for (long m = 0;; ++m) {
    const double sign = (m % 2) ? -1.0 : 1.0;
    const double ea = (6.0 * m - 1) * (6.0 * m - 1) / 24.0;
    if (ea * denominator > static_cast<double>(max_k) + kExponentSlack) break;
    s.add_power(ea, sign);
    if (m > 0) {
      const double eb = (6.0 * m + 1) * (6.0 * m + 1) / 24.0;
      if (eb * denominator <= static_cast<double>(max_k) + kExponentSlack) s.add_power(eb, sign);
    }
  }
  return s;
}

namespace {

QSeries theta_series(double scale, double shift, bool alternate, long max_k, int denominator) {
  require(scale > 0.0, "theta series: scale must be positive");
  QSeries s(max_k, denominator);
  for (long n = 0;; ++n) {
    const double e = scale * (n + shift) * (n + shift) / 2.0;
    if (e * denominator > static_cast<double>(max_k) + kExponentSlack) break;
    const double sign = alternate && (n % 2) ? -1.0 : 1.0;
    s.add_power(e, (n == 0 && shift == 0.0) ? sign : 2.0 * sign);
  }
  return s;
}

}  // namespace

QSeries theta2_series(double scale, long max_k, int denominator) {
  return theta_series(scale, 0.5, false, max_k, denominator);
}
QSeries theta3_series(double scale, long max_k, int denominator) {
  return theta_series(scale, 0.0, false, max_k, denominator);
}
QSeries theta4_series(double scale, long max_k, int denominator) {
  return theta_series(scale, 0.0, true, max_k, denominator);
}

// ------------------------------------------------------- modular checks

double ModularReport::max_residual() const { return std::max({eta, theta2, theta3, theta4}); }

ModularReport modular_check(double t) {
  require(t > 0.0 && std::isfinite(t), "modular_check: tau must be i t with t > 0");
  ModularReport r;
  r.t = t;
  r.q = std::exp(-2.0 * std::numbers::pi * t);
  r.q_dual = std::exp(-2.0 * std::numbers::pi / t);
  if (r.q > kMaxNome || r.q_dual > kMaxNome) {
    throw Error("modular_check: nome outside the evaluation disc (q <= " + std::to_string(kMaxNome) + ")");
  }
  const double s = std::sqrt(t);
  r.eta = relative_residual(eta(r.q_dual), s * eta(r.q));
  r.theta2 = relative_residual(theta2(r.q_dual), s * theta4(r.q));
  r.theta3 = relative_residual(theta3(r.q_dual), s * theta3(r.q));
  r.theta4 = relative_residual(theta4(r.q_dual), s * theta2(r.q));
  return r;
}

// ------------------------------------------------------------ g-factors

void BoundaryParams::validate() const {
  require(kappa > 0.0 && std::isfinite(kappa), "BoundaryParams: kappa must be > 0");
  require(radius > 0.0 && std::isfinite(radius), "BoundaryParams: radius must be > 0");
  require(components >= 1, "BoundaryParams: need at least one component");
}

double g_dirichlet(const BoundaryParams& p) {
  p.validate();
  const double n = p.components;
  return std::pow(2.0 * p.kappa, -n / 4.0) * std::pow(p.radius, -n / 2.0);
}

double g_neumann(const BoundaryParams& p) {
  p.validate();
  const double n = p.components;
  return std::pow(p.kappa / 2.0, n / 4.0) * std::pow(p.radius, n / 2.0);
}

double g_gamma1_circ(const BoundaryParams& p) {
  p.validate();
  const double n = p.components;
  return std::sqrt(n / 2.0) * std::pow(std::sqrt(2.0 * p.kappa) * p.radius, -n / 2.0 + 1.0);
}

double g_gamma1_orbifold(const BoundaryParams& p) {
  const double n = p.components;
  return std::pow(2.0, -n / 2.0) * std::pow(2.0, n - 1.0) * g_gamma1_circ(p);
}

double g_gamma1(int alpha) {
  require(alpha >= 1, "g_gamma1: replica index must be >= 1");
  return g_gamma1_orbifold(BoundaryParams{2.0, 1.0, 2 * alpha});
}

// ---------------------------------------------------------- predictions

double c_alpha(double alpha) {
  require(alpha > 0.0 && std::isfinite(alpha), "c_alpha: alpha must be > 0");
  const double x = alpha - 1.0;
  if (x == 0.0) return 0.5;
  return 0.5 * std::log1p(x) / x;
}

double chord_length(double l, double num_sites) {
  require(num_sites >= 2.0 && l > 0.0 && l < num_sites, "chord_length: need 0 < l < L");
  return num_sites / std::numbers::pi * std::sin(std::numbers::pi * l / num_sites);
}

double predicted_w(double alpha, double l, double num_sites) {
  require(alpha > 0.0 && alpha != 1.0, "predicted_w: alpha must be > 0 and != 1");
  return 4.0 * kBccoDimension / (alpha - 1.0) * std::log(chord_length(l, num_sites));
}

double predicted_i2(double l, double num_sites) { return 0.25 * std::log(chord_length(l, num_sites)); }

// ----------------------------------------------------------- amplitudes

QSeries dirichlet_neumann_amplitude(long max_k) {
  const int d = QSeries::kDefaultDenominator;
  const long m = max_k + margin(1, d);
  return (theta2_series(0.5, m) * 0.5 * eta_series(m).reciprocal()).truncated(max_k);
}

QSeries twisted_amplitude(int components, long max_k) {
  require(components >= 1, "twisted_amplitude: need at least one component");
  const int d = QSeries::kDefaultDenominator;
  const long m = max_k + margin(components, d);
  const QSeries one = theta4_series(2.0, m) * (1.0 / std::numbers::sqrt2) * eta_series(m).reciprocal();
  return one.pow(components).truncated(max_k);
}

QSeries dirichlet_self_amplitude(const BoundaryParams& p, long max_k) {
  p.validate();
  const int d = QSeries::kDefaultDenominator;
  const long m = max_k + margin(p.components, d);
  const QSeries sum = lattice_theta(p.kappa * p.radius * p.radius, p.components, m, d);
  return (sum * eta_series(m).pow(-p.components)).truncated(max_k);
}

QSeries neumann_self_amplitude(const BoundaryParams& p, long max_k) {
  p.validate();
  const int d = QSeries::kDefaultDenominator;
  const long m = max_k + margin(p.components, d);
  const QSeries sum = lattice_theta(1.0 / (p.kappa * p.radius * p.radius), p.components, m, d);
  return (sum * eta_series(m).pow(-p.components)).truncated(max_k);
}

double dirichlet_neumann_amplitude_direct(double q) {
  require_nome(q, "dirichlet_neumann_amplitude_direct");
  require(q > 0.0, "dirichlet_neumann_amplitude_direct: q must be > 0");
  return std::sqrt(eta(q) / theta2(q));
}

double twisted_amplitude_direct(int components, double q) {
  require_nome(q, "twisted_amplitude_direct");
  require(q > 0.0 && components >= 1, "twisted_amplitude_direct: need q > 0 and N >= 1");
  return std::pow(theta2(std::sqrt(q)) / (2.0 * eta(q)), components);
}

double dirichlet_self_amplitude_direct(const BoundaryParams& p, double q) {
  p.validate();
  require_nome(q, "dirichlet_self_amplitude_direct");
  require(q > 0.0, "dirichlet_self_amplitude_direct: q must be > 0");
  const double g = g_dirichlet(p);
  const double s = gaussian_sum(q, 1.0 / (4.0 * p.kappa * p.radius * p.radius), 0.0, false);
  return g * g * std::pow(s / eta(q), p.components);
}

double neumann_self_amplitude_direct(const BoundaryParams& p, double q) {
  p.validate();
  require_nome(q, "neumann_self_amplitude_direct");
  require(q > 0.0, "neumann_self_amplitude_direct: q must be > 0");
  const double g = g_neumann(p);
  const double s = gaussian_sum(q, p.kappa * p.radius * p.radius / 4.0, 0.0, false);
  return g * g * std::pow(s / eta(q), p.components);
}

// ----------------------------------------------- character decomposition

double CharacterDecomposition::coefficient(double h) const {
  if (h > valid_to + kExponentSlack) throw Error("CharacterDecomposition: weight beyond truncation order");
  const double x = h * denominator;
  const long k = std::lround(x);
  if (std::abs(x - static_cast<double>(k)) > kExponentSlack) return 0.0;
  for (const auto& t : terms) {
    if (t.k == k) return t.coefficient;
  }
  return 0.0;
}

CharacterDecomposition character_decompose(const QSeries& amplitude, int components, std::optional<double> depth) {
  require(components >= 1, "character_decompose: need at least one component");
  const int d = amplitude.denominator();
  require(d % 24 == 0, "character_decompose: denominator must be a multiple of 24");
  const auto low = amplitude.lowest();
  if (!low) throw Error("character_decompose: zero amplitude");
  // eta^N starts at q^{N/24}; build it far enough that the product is exact
  // through amplitude.max_k + N/24.
  const long eta_low = static_cast<long>(components) * d / 24;
  const long need = amplitude.max_k() + eta_low - *low;
  const QSeries chars = amplitude * eta_series(need, d).pow(components);
  CharacterDecomposition out;
  out.denominator = d;
  out.valid_to = chars.order();
  long limit = chars.max_k();
  if (depth) {
    if (*depth > out.valid_to + kExponentSlack) {
      throw Error("character_decompose: depth " + std::to_string(*depth) +
                  " exceeds the truncation order " + std::to_string(out.valid_to));
    }
    limit = static_cast<long>(std::floor(*depth * d + kExponentSlack));
    out.valid_to = static_cast<double>(limit) / d;
  }
  // Cancellation leaves roundoff where the exact coefficient is zero.
  double scale = 0.0;
  for (const auto& [k, c] : chars.terms()) scale = std::max(scale, std::abs(c));
  for (const auto& [k, c] : chars.terms()) {
    if (k > limit) break;
    if (std::abs(c) <= 1e-12 * std::max(1.0, scale)) continue;
    out.terms.push_back(CharacterTerm{k, static_cast<double>(k) / d, c});
  }
  if (out.terms.empty()) throw Error("character_decompose: no characters within the truncation order");
  out.lowest_weight = out.terms.front().h;
  return out;
}

// ------------------------------------------------------- identity suite

std::vector<IdentityCheck> bcft_identity_suite() {
  std::vector<IdentityCheck> out;
  auto add = [&](std::string name, double residual, double tol) {
    out.push_back(IdentityCheck{std::move(name), residual, tol});
  };
  for (double q : {0.1, 0.3, 0.5}) {
    const std::string at = " q=" + std::to_string(q).substr(0, 3);
    add("eta sum=product" + at, relative_residual(eta_sum(q), eta(q)), 1e-12);
    add("theta2 sum=product" + at, relative_residual(theta2_sum(q), theta2(q)), 1e-12);
    add("theta3 sum=product" + at, relative_residual(theta3_sum(q), theta3(q)), 1e-12);
    add("theta4 sum=product" + at, relative_residual(theta4_sum(q), theta4(q)), 1e-12);
    add("2eta^3=theta2 theta3 theta4" + at,
        relative_residual(2.0 * std::pow(eta(q), 3), theta2(q) * theta3(q) * theta4(q)), 1e-12);
    const double t3 = theta3(q), t4 = theta4(q);
    add("theta4(q^2)^2=theta3 theta4" + at, relative_residual(std::pow(theta4(q * q), 2), t3 * t4), 1e-12);
    add("theta3(q^2)^2=(theta3^2+theta4^2)/2" + at,
        relative_residual(std::pow(theta3(q * q), 2), 0.5 * (t3 * t3 + t4 * t4)), 1e-12);
    add("theta2(q^2)^2=(theta3^2-theta4^2)/2" + at,
        relative_residual(std::pow(theta2(q * q), 2), 0.5 * (t3 * t3 - t4 * t4)), 1e-12);
  }
  for (double t : {0.5, 1.0, 2.0}) {
    add("modular t=" + std::to_string(t).substr(0, 3), modular_check(t).max_residual(), 1e-10);
  }

  const auto zdn = character_decompose(dirichlet_neumann_amplitude(), 1);
  double zr = 0.0;
  for (long n = 1;; ++n) {
    const double h = (n - 0.5) * (n - 0.5) / 4.0;
    if (h > zdn.valid_to) break;
    zr = std::max(zr, std::abs(zdn.coefficient(h) - 1.0));
  }
  for (const auto& term : zdn.terms) {
    const double m = 2.0 * std::sqrt(term.h) + 0.5;  // n for h = (n - 1/2)^2 / 4
    if (std::abs(m - std::round(m)) > 1e-9) zr = std::max(zr, std::abs(term.coefficient));
  }
  add("z_DN characters: 1 at h=(n-1/2)^2/4", zr, 1e-12);
  add("z_DN lowest weight 1/16", std::abs(zdn.lowest_weight - kBccoDimension), 1e-15);

  for (int n : {1, 2, 4}) {
    const auto tw = character_decompose(twisted_amplitude(n), n);
    add("twisted h=0 coefficient 2^{-N/2} N=" + std::to_string(n),
        std::abs(tw.coefficient(0.0) - std::pow(2.0, -n / 2.0)) + std::abs(tw.lowest_weight), 1e-12);
  }

  // Both channels of each amplitude, evaluated numerically.
  for (double t : {1.0, 1.25}) {
    const double q = std::exp(-2.0 * std::numbers::pi * t);
    const double qd = std::exp(-2.0 * std::numbers::pi / t);
    const std::string at = " t=" + std::to_string(t).substr(0, 4);
    add("z_DN channels" + at,
        relative_residual(dirichlet_neumann_amplitude().evaluate(qd), dirichlet_neumann_amplitude_direct(q)), 1e-10);
    for (int n : {1, 2, 4}) {
      add("twisted channels N=" + std::to_string(n) + at,
          relative_residual(twisted_amplitude(n).evaluate(qd), twisted_amplitude_direct(n, q)), 1e-10);
    }
    const BoundaryParams p{2.0, 1.0, 1};
    add("Dirichlet Poisson resummation" + at,
        relative_residual(dirichlet_self_amplitude(p).evaluate(qd), dirichlet_self_amplitude_direct(p, q)), 1e-10);
    add("Neumann Poisson resummation" + at,
        relative_residual(neumann_self_amplitude(p).evaluate(qd), neumann_self_amplitude_direct(p, q)), 1e-10);
  }

  // Cardy multiplicities: one vacuum, nonnegative integers elsewhere.
  const BoundaryParams p{2.0, 1.0, 1};
  for (const auto& [name, amp] : {std::pair{std::string("Dirichlet"), dirichlet_self_amplitude(p)},
                                  std::pair{std::string("Neumann"), neumann_self_amplitude(p)},
                                  std::pair{std::string("z_DN"), dirichlet_neumann_amplitude()}}) {
    const auto dec = character_decompose(amp, 1);
    double r = 0.0;
    for (const auto& term : dec.terms) {
      r = std::max(r, std::abs(term.coefficient - std::round(term.coefficient)));
      if (term.coefficient < 0.0) r = std::max(r, -term.coefficient);
    }
    if (name != "z_DN") r = std::max(r, std::abs(dec.coefficient(0.0) - 1.0));
    add(name + " multiplicities in N0", r, 1e-9);
  }

  add("g_D(kappa=2,R=1,N=1)=1/sqrt2", std::abs(g_dirichlet(p) - 1.0 / std::numbers::sqrt2), 1e-15);
  for (int a = 1; a <= 5; ++a) {
    add("g1 chain alpha=" + std::to_string(a), std::abs(g_gamma1(a) - std::sqrt(static_cast<double>(a))), 1e-14);
  }
  return out;
}

}  // namespace srecrit
