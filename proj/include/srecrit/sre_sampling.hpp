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

#ifndef SRECRIT_SRE_SAMPLING_HPP_
#define SRECRIT_SRE_SAMPLING_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "srecrit/estimate.hpp"
#include "srecrit/mps.hpp"
#include "srecrit/parallel.hpp"
#include "srecrit/random.hpp"

namespace srecrit {

/// Progress of one sequential draw. `env` is the bra/ket left environment of
/// the fixed prefix, rescaled to unit Frobenius norm; the unfixed suffix
/// closes to the identity because every site right of the center (site 0) is
/// a right isometry.
template <typename Scalar>
struct SamplerState {
  MatrixX<Scalar> env;
  std::size_t position = 0;
  double log_prob_accum = 0.0;
  PauliString prefix;
};

/// Perfect sampler of Pauli strings with probability 2^{-L} <sigma^m>^2.
template <typename Scalar>
class PauliSampler {
 public:
  using Matrix = MatrixX<Scalar>;

  explicit PauliSampler(MatrixProductState<Scalar> mps) : mps_(std::move(mps)) {
    mps_.move_center(0);
    mps_.normalize();
  }

  const MatrixProductState<Scalar>& mps() const { return mps_; }
  std::size_t num_sites() const { return mps_.num_sites(); }

  SamplerState<Scalar> start() const {
    return SamplerState<Scalar>{Matrix::Ones(1, 1), 0, 0.0, PauliString::identity(num_sites())};
  }

  /// Conditional probabilities of (I, X, Z, Y) at st.position given the
  /// prefix, plus the four candidate environments.
  std::array<double, 4> conditional_quadruple(const SamplerState<Scalar>& st,
                                              std::array<Matrix, 4>* candidates = nullptr) const {
    require(st.position < num_sites(), "conditional_quadruple: all sites already fixed");
    const auto& a = mps_.site(st.position);
    const std::array<Matrix, 2> g = {st.env * a[0], st.env * a[1]};
    const Matrix m00 = a[0].adjoint() * g[0];
    const Matrix m01 = a[0].adjoint() * g[1];
    const Matrix m10 = a[1].adjoint() * g[0];
    const Matrix m11 = a[1].adjoint() * g[1];
    std::array<Matrix, 4> c;
    c[static_cast<int>(Pauli::I)] = m00 + m11;
    c[static_cast<int>(Pauli::X)] = m01 + m10;
    c[static_cast<int>(Pauli::Z)] = m00 - m11;
    if constexpr (is_complex_v<Scalar>) {
      c[static_cast<int>(Pauli::Y)] = Scalar(0, 1) * (m10 - m01);
    } else {
      c[static_cast<int>(Pauli::Y)] = m01 - m10;
    }
    // pi(m) = ||env(m)||^2 / (2 ||env||^2) with ||env|| = 1.
    std::array<double, 4> pi{};
    for (int k = 0; k < 4; ++k) pi[k] = 0.5 * c[k].squaredNorm();
    if (candidates) *candidates = std::move(c);
    return pi;
  }

  /// Fixes Pauli `choice` at the current position.
  void advance(SamplerState<Scalar>& st, Pauli choice) const {
    std::array<Matrix, 4> c;
    const auto pi = conditional_quadruple(st, &c);
    const int k = static_cast<int>(choice);
    require(pi[k] > 0.0, "PauliSampler::advance: zero-probability choice");
    const double sum = pi[0] + pi[1] + pi[2] + pi[3];
    st.log_prob_accum += std::log(pi[k] / sum);
    st.env = c[k] / std::sqrt(2.0 * pi[k]);
    st.prefix.set(st.position, choice);
    ++st.position;
  }

  /// One left-to-right draw; returns the string and ln of its probability.
  std::pair<PauliString, double> draw(CounterRng& rng) const {
    SamplerState<Scalar> st = start();
    std::array<Matrix, 4> c;
    while (st.position < num_sites()) {
      const auto pi = conditional_quadruple(st, &c);
      const double sum = pi[0] + pi[1] + pi[2] + pi[3];
#ifndef NDEBUG
      if (std::abs(sum - 1.0) > 1e-10) {
        throw Error("PauliSampler: conditional quadruple sums to " + std::to_string(sum));
      }
#endif
      const double u = rng.uniform() * sum;
      int k = 0;
      double acc = pi[0];
      while (k < 3 && (u >= acc || pi[k] == 0.0)) acc += pi[++k];
      // Guard against landing on a zero entry through rounding at the top end.
      while (pi[k] == 0.0) --k;
      st.log_prob_accum += std::log(pi[k] / sum);
      st.env = c[k] / std::sqrt(2.0 * pi[k]);
      st.prefix.set(st.position, static_cast<Pauli>(k));
      ++st.position;
    }
    return {std::move(st.prefix), st.log_prob_accum};
  }

 private:
  MatrixProductState<Scalar> mps_;
};

struct DrawResult {
  PauliString string;
  double probability = 0.0;
  double log_probability = 0.0;
};

/// Draw number `index` of the stream keyed by `seed`.
template <typename Scalar>
DrawResult draw_string(const MatrixProductState<Scalar>& mps, std::uint64_t seed, std::uint64_t index = 0) {
  PauliSampler<Scalar> sampler(mps);
  CounterRng rng(seed, index);
  auto [p, lp] = sampler.draw(rng);
  return DrawResult{std::move(p), std::exp(lp), lp};
}

/// ln-probabilities of draws [0, n) with strings kept on request.
struct SampleSet {
  std::size_t num_sites = 0;
  std::uint64_t seed = 0;
  std::vector<double> log_probs;
  std::vector<PauliString> strings;
};

template <typename Scalar>
SampleSet draw_samples(const MatrixProductState<Scalar>& mps, std::size_t num_samples, std::uint64_t seed,
                       bool keep_strings = false) {
  const PauliSampler<Scalar> sampler(mps);
  SampleSet out;
  out.num_sites = mps.num_sites();
  out.seed = seed;
  out.log_probs.resize(num_samples);
  if (keep_strings) out.strings.assign(num_samples, PauliString(mps.num_sites()));
  constexpr std::size_t kChunk = 1024;
  const std::size_t chunks = (num_samples + kChunk - 1) / kChunk;
  parallel_for_blocks(chunks, [&](std::size_t c) {
    const std::size_t hi = std::min(num_samples, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < hi; ++i) {
      CounterRng rng(seed, i);
      auto [p, lp] = sampler.draw(rng);
      out.log_probs[i] = lp;
      if (keep_strings) out.strings[i] = std::move(p);
    }
  });
  return out;
}

struct SamplingOptions {
  std::size_t jackknife_blocks = 50;
};

/// SRE estimates for each alpha from one sample set:
///   alpha != 1: ln(mean Pi^{alpha-1}) / (1 - alpha) - L ln 2
///   alpha == 1: -mean ln Pi - L ln 2
/// with jackknife standard errors over contiguous sample blocks.
std::vector<SreEstimate> estimate_sre_from_samples(const SampleSet& samples, std::span<const double> alphas,
                                                   const SamplingOptions& options = {});

template <typename Scalar>
std::vector<SreEstimate> estimate_sre(const MatrixProductState<Scalar>& mps, std::span<const double> alphas,
                                      std::size_t num_samples, std::uint64_t seed,
                                      const SamplingOptions& options = {}) {
  require(num_samples >= 100, "estimate_sre: need at least 100 samples");
  for (double a : alphas) require(a > 0.0 && std::isfinite(a), "estimate_sre: alpha must be > 0");
  return estimate_sre_from_samples(draw_samples(mps, num_samples, seed), alphas, options);
}

/// One line per draw: "<string> <ln Pi>".
void write_sample_dump(const std::string& path, const SampleSet& samples);
SampleSet read_sample_dump(const std::string& path);

}  // namespace srecrit

#endif  // SRECRIT_SRE_SAMPLING_HPP_
