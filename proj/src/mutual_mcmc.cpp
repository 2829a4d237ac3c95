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

#include "srecrit/mutual_mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>

#include "srecrit/parallel.hpp"
#include "srecrit/statistics.hpp"

namespace srecrit {

void ChainConfig::validate(std::size_t num_sites) const {
  require(power == 2 || power == 4, "ChainConfig: power must be 2 or 4");
  require(steps >= 1, "ChainConfig: steps must be >= 1");
  require(resolved_burn_in() < steps, "ChainConfig: burn_in must be < steps");
  require(chains >= 1, "ChainConfig: need at least one chain");
  require(!cuts.empty(), "ChainConfig: no cuts given");
  for (std::size_t l : cuts) require(l >= 1 && l < num_sites, "ChainConfig: cut must be in [1, L-1]");
  require(min_ess >= 0.0, "ChainConfig: min_ess must be >= 0");
}

PauliString propose(const PauliString& current, CounterRng& rng) {
  const std::size_t n = current.length();
  PauliString next = current;
  auto toggle = [&](std::size_t j, int bit) {
    next.set(j, static_cast<Pauli>(static_cast<int>(next[j]) ^ bit));
  };
  if (rng.uniform() < kSingleSiteMoveRate) {
    toggle(rng.below(n), 1);
  } else {
    const std::size_t i = rng.below(n);
    std::size_t j = rng.below(n - 1);
    if (j >= i) ++j;
    toggle(i, 2);
    toggle(j, 2);
  }
  return next;
}

std::vector<std::pair<PauliString, double>> proposal_moves(const PauliString& current) {
  const std::size_t n = current.length();
  require(n >= 2, "proposal_moves: need at least 2 sites");
  std::vector<std::pair<PauliString, double>> out;
  for (std::size_t j = 0; j < n; ++j) {
    PauliString p = current;
    p.set(j, static_cast<Pauli>(static_cast<int>(p[j]) ^ 1));
    out.emplace_back(std::move(p), kSingleSiteMoveRate / static_cast<double>(n));
  }
  const double pair = (1.0 - kSingleSiteMoveRate) * 2.0 / static_cast<double>(n * (n - 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      PauliString p = current;
      p.set(i, static_cast<Pauli>(static_cast<int>(p[i]) ^ 2));
      p.set(j, static_cast<Pauli>(static_cast<int>(p[j]) ^ 2));
      out.emplace_back(std::move(p), pair);
    }
  }
  return out;
}

double acceptance_probability(double current, double proposed, int power) {
  if (proposed == 0.0) return 0.0;
  if (current == 0.0) return 1.0;
  const double r = std::abs(proposed / current);
  return r >= 1.0 ? 1.0 : std::pow(r, power);
}

template <typename Scalar>
ChainTrace run_chain(const MatrixProductState<Scalar>& mps, const ChainConfig& config, std::size_t index) {
  MetropolisChain<Scalar> chain(mps, config.power, config.seed, index);
  const std::uint64_t burn = config.resolved_burn_in();
  const std::uint64_t thin = std::max<std::uint64_t>(config.thin, 1);
  ChainTrace out;
  out.ratios.resize(config.cuts.size());
  for (std::uint64_t t = 0; t < burn; ++t) chain.step();
  for (std::uint64_t t = burn; t < config.steps; ++t) {
    chain.step();
    if ((t - burn) % thin != 0) continue;
    for (std::size_t c = 0; c < config.cuts.size(); ++c) {
      const double r = chain.ratio(config.cuts[c]);
      if (!(r >= 0.0) || !std::isfinite(r)) {
        throw Error("mutual chain: invalid ratio " + std::to_string(r) + " at " + chain.current().str());
      }
      out.ratios[c].push_back({r, t});
    }
  }
  out.acceptance = chain.acceptance_rate();
  return out;
}

template <typename Scalar>
std::uint64_t pilot_thin(const MatrixProductState<Scalar>& mps, const ChainConfig& config,
                         std::uint64_t pilot_steps) {
  MetropolisChain<Scalar> chain(mps, config.power, config.seed, 0x9f1107ULL);
  const std::size_t cut = config.cuts[config.cuts.size() / 2];
  for (std::uint64_t t = 0; t < pilot_steps / 5; ++t) chain.step();
  std::vector<double> series;
  series.reserve(pilot_steps);
  for (std::uint64_t t = 0; t < pilot_steps; ++t) {
    chain.step();
    series.push_back(chain.ratio(cut));
  }
  const auto rho = autocorrelation(series, std::min<std::uint64_t>(pilot_steps / 10, 5000));
  for (std::size_t k = 1; k < rho.size(); ++k) {
    if (rho[k] < 0.1) return k;
  }
  return std::max<std::size_t>(rho.size(), 1);
}

namespace {

void write_trace(const std::string& path, const ChainConfig& config, const std::vector<ChainTrace>& traces) {
  std::ofstream f(path);
  if (!f) throw Error("cannot open trace file " + path);
  f << "# chain step";
  for (std::size_t l : config.cuts) f << " ratio_l" << l;
  f << "\n" << std::setprecision(17);
  for (std::size_t c = 0; c < traces.size(); ++c) {
    const auto& r = traces[c].ratios;
    for (std::size_t i = 0; i < r.front().size(); ++i) {
      f << c << ' ' << r.front()[i].step;
      for (const auto& series : r) f << ' ' << series[i].value;
      f << '\n';
    }
  }
}

}  // namespace

template <typename Scalar>
std::vector<SreEstimate> estimate_mutual(const MatrixProductState<Scalar>& mps_in, const ChainConfig& config_in) {
  config_in.validate(mps_in.num_sites());
  MatrixProductState<Scalar> mps = mps_in;
  mps.normalize();
  ChainConfig config = config_in;
  if (config.thin == 0) {
    config.thin = pilot_thin(mps, config, std::clamp<std::uint64_t>(config.steps / 10, 2000, 50000));
  }
  std::vector<ChainTrace> traces(config.chains);
  parallel_for_blocks(config.chains, [&](std::size_t c) { traces[c] = run_chain(mps, config, c); });
  if (!config.trace_path.empty()) write_trace(config.trace_path, config, traces);

  double acceptance = 0.0;
  for (const auto& t : traces) acceptance += t.acceptance / static_cast<double>(traces.size());
  std::vector<SreEstimate> out;
  for (std::size_t c = 0; c < config.cuts.size(); ++c) {
    std::vector<std::vector<double>> series(config.chains);
    std::vector<double> chain_means;
    double within = 0.0;
    std::vector<double> all;
    for (std::size_t k = 0; k < config.chains; ++k) {
      for (const auto& s : traces[k].ratios[c]) series[k].push_back(s.value);
      chain_means.push_back(mean(series[k]));
      const double se = blocking_standard_error(series[k], std::min<std::size_t>(32, series[k].size()));
      within += se * se;
      all.insert(all.end(), series[k].begin(), series[k].end());
    }
    require(!all.empty(), "estimate_mutual: no kept samples");
    const double k = static_cast<double>(config.chains);
    within = std::sqrt(within) / k;
    const double between = config.chains > 1 ? std::sqrt(variance(chain_means) / k) : 0.0;
    const double se = std::max(within, between);
    const double m = mean(all);

    SreEstimate e;
    e.value = -std::log(m);
    e.std_error = se / m;
    e.alpha = 2.0;
    e.quantity = config.power == 4 ? "W" : "I2";
    e.method = "mcmc";
    e.num_sites = mps.num_sites();
    e.region = RegionSpec::prefix(config.cuts[c]);
    e.seed = config.seed;
    e.samples = all.size();
    const double var = variance(all);
    const double ess = se > 0.0 ? var / (se * se) : static_cast<double>(all.size());
    const double r_hat = series.front().size() >= 2 ? gelman_rubin(series) : 1.0;
    e.diagnostics["acceptance"] = acceptance;
    e.diagnostics["ess"] = ess;
    e.diagnostics["r_hat"] = r_hat;
    e.diagnostics["thin"] = static_cast<double>(config.thin);
    e.diagnostics["burn_in"] = static_cast<double>(config.resolved_burn_in());
    e.diagnostics["chains"] = k;
    e.diagnostics["steps"] = static_cast<double>(config.steps);
    e.diagnostics["mean_ratio"] = m;
    if (ess < config.min_ess) e.flags.push_back("low_ess");
    if (r_hat > 1.1) e.flags.push_back("r_hat");
    out.push_back(std::move(e));
  }
  return out;
}

template <typename Scalar>
std::vector<SreEstimate> estimate_w2(const MatrixProductState<Scalar>& mps, const ChainConfig& config) {
  require(config.power == 4, "estimate_w2: chain power must be 4");
  return estimate_mutual(mps, config);
}

template <typename Scalar>
std::vector<SreEstimate> estimate_i2(const MatrixProductState<Scalar>& mps, const ChainConfig& config) {
  require(config.power == 2, "estimate_i2: chain power must be 2");
  return estimate_mutual(mps, config);
}

#define SRECRIT_INSTANTIATE(S)                                                                     \
  template ChainTrace run_chain(const MatrixProductState<S>&, const ChainConfig&, std::size_t);    \
  template std::uint64_t pilot_thin(const MatrixProductState<S>&, const ChainConfig&, std::uint64_t); \
  template std::vector<SreEstimate> estimate_mutual(const MatrixProductState<S>&, const ChainConfig&); \
  template std::vector<SreEstimate> estimate_w2(const MatrixProductState<S>&, const ChainConfig&); \
  template std::vector<SreEstimate> estimate_i2(const MatrixProductState<S>&, const ChainConfig&);

SRECRIT_INSTANTIATE(double)
SRECRIT_INSTANTIATE(cplx)

#undef SRECRIT_INSTANTIATE

}  // namespace srecrit
