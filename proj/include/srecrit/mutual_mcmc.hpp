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

#ifndef SRECRIT_MUTUAL_MCMC_HPP_
#define SRECRIT_MUTUAL_MCMC_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "srecrit/environment_cache.hpp"
#include "srecrit/estimate.hpp"
#include "srecrit/mps.hpp"
#include "srecrit/random.hpp"

namespace srecrit {

/// Settings shared by every chain of one estimate.
struct ChainConfig {
  /// Exponent of the stationary weight |<sigma^m>|^power: 4 for W_2, 2 for I_2.
  int power = 4;
  /// Proposals per chain, burn-in included.
  std::uint64_t steps = 200000;
  /// Discarded prefix; kAuto means 10% of steps.
  std::uint64_t burn_in = kAuto;
  /// Keep every thin-th step; 0 picks the smallest lag with autocorrelation
  /// below 0.1 from a pilot run.
  std::uint64_t thin = 0;
  std::uint64_t seed = 1;
  /// Independent chains, seeded by (seed, chain index).
  std::size_t chains = 4;
  /// Bipartitions A = [0, l), B = [l, L) evaluated on every kept sample.
  std::vector<std::size_t> cuts;
  /// Effective-sample-size floor below which the result is flagged.
  double min_ess = 100.0;
  /// When non-empty, kept samples are written here (one line each).
  std::string trace_path;

  static constexpr std::uint64_t kAuto = ~std::uint64_t{0};

  std::uint64_t resolved_burn_in() const { return burn_in == kAuto ? steps / 10 : burn_in; }
  void validate(std::size_t num_sites) const;
};

/// The ratio statistic at one kept step. Zero when a marginal expectation
/// vanishes on the current string.
struct RatioSample {
  double value = 0.0;
  std::uint64_t step = 0;
};

/// Probability of selecting a single-site move; the rest go to two-site moves.
inline constexpr double kSingleSiteMoveRate = 0.7;

/// Single-site moves toggle the x bit (I<->X, Z<->Y); two-site moves toggle
/// the z bit at two distinct sites. Neither changes the parity of the number
/// of sites carrying Z or Y, and every move is its own inverse.
PauliString propose(const PauliString& current, CounterRng& rng);

/// Every string reachable by one proposal with its probability.
std::vector<std::pair<PauliString, double>> proposal_moves(const PauliString& current);

/// min(1, |proposed / current|^power); 0 when proposed is 0.
double acceptance_probability(double current, double proposed, int power);

/// Metropolis walk over Pauli strings with weight |<sigma^m>|^power. Starts at
/// the identity string. The MPS must be normalized and outlive the chain.
template <typename Scalar>
class MetropolisChain {
 public:
  MetropolisChain(const MatrixProductState<Scalar>& mps, int power, std::uint64_t seed, std::uint64_t stream)
      : cache_(mps), rng_(seed, stream), power_(power), current_(PauliString::identity(mps.num_sites())) {
    require(power == 2 || power == 4, "MetropolisChain: power must be 2 or 4");
    require(mps.num_sites() >= 2, "MetropolisChain: need at least 2 sites");
    value_ = cache_.current_value();
  }

  /// One proposal; returns true when accepted.
  bool step() {
    PauliString next = propose(current_, rng_);
    const double v = cache_.evaluate(next);
    ++proposed_;
    const double a = acceptance_probability(value_, v, power_);
    if (a > 0.0 && (a >= 1.0 || rng_.uniform() < a)) {
      cache_.commit(next);
      current_ = std::move(next);
      value_ = v;
      ++accepted_;
      return true;
    }
    return false;
  }

  const PauliString& current() const { return current_; }
  /// <sigma^current>.
  double value() const { return value_; }
  int power() const { return power_; }
  double acceptance_rate() const { return proposed_ ? static_cast<double>(accepted_) / proposed_ : 0.0; }

  /// (|<sigma_A>| |<sigma_B>| / |<sigma>|)^power for A = [0, cut).
  double ratio(std::size_t cut) {
    const double a = cache_.prefix_value(cut);
    const double b = cache_.suffix_value(cut);
    if (value_ == 0.0) throw Error("MetropolisChain: chain sits on a zero-weight string " + current_.str());
    return std::pow(std::abs(a * b / value_), power_);
  }

  EnvironmentCache<Scalar>& cache() { return cache_; }

 private:
  EnvironmentCache<Scalar> cache_;
  CounterRng rng_;
  int power_;
  PauliString current_;
  double value_ = 1.0;
  std::uint64_t proposed_ = 0;
  std::uint64_t accepted_ = 0;
};

/// Kept ratio series of one chain, one vector per cut.
struct ChainTrace {
  std::vector<std::vector<RatioSample>> ratios;
  double acceptance = 0.0;
};

/// Runs chain `index` of `config` (burn-in and thinning applied).
template <typename Scalar>
ChainTrace run_chain(const MatrixProductState<Scalar>& mps, const ChainConfig& config, std::size_t index);

/// Smallest lag whose autocorrelation of the middle-cut ratio falls below 0.1
/// in a pilot chain of `pilot_steps` proposals.
template <typename Scalar>
std::uint64_t pilot_thin(const MatrixProductState<Scalar>& mps, const ChainConfig& config,
                         std::uint64_t pilot_steps);

/// -ln <ratio> per cut from config.chains chains. quantity is "W" (power 4,
/// alpha 2) or "I2" (power 2). Diagnostics: acceptance, ess, r_hat, thin,
/// burn_in, chains; flags "low_ess" and "r_hat" when the chains disagree.
template <typename Scalar>
std::vector<SreEstimate> estimate_mutual(const MatrixProductState<Scalar>& mps, const ChainConfig& config);

/// W_2 across each cut; config.power must be 4.
template <typename Scalar>
std::vector<SreEstimate> estimate_w2(const MatrixProductState<Scalar>& mps, const ChainConfig& config);

/// I_2 across each cut; config.power must be 2.
template <typename Scalar>
std::vector<SreEstimate> estimate_i2(const MatrixProductState<Scalar>& mps, const ChainConfig& config);

}  // namespace srecrit

#endif  // SRECRIT_MUTUAL_MCMC_HPP_
