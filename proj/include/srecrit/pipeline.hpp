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
#ifndef SRECRIT_PIPELINE_HPP_
#define SRECRIT_PIPELINE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "srecrit/common.hpp"
#include "srecrit/estimate.hpp"
#include "srecrit/fit.hpp"
#include "srecrit/mps.hpp"

namespace srecrit {

/// Everything one experiment needs. Read from and written to JSON; unknown
/// keys are rejected so a typo cannot silently fall back to a default.
struct RunConfig {
  std::string task = "run";
  std::vector<std::size_t> sites = {4, 6, 8};
  double coupling = 1.0;
  std::string boundary = "periodic";
  std::vector<double> alphas = {2.0};
  /// exact | replica | sampling | mcmc
  std::string method = "exact";
  /// M (full state) | W (mutual SRE) | I2 (Renyi-2 mutual information)
  std::string quantity = "M";
  /// lanczos | dmrg | auto (Lanczos up to 14 sites, DMRG above)
  std::string ground = "auto";
  /// DMRG bond cap and per-bond discarded weight; also used to compress a
  /// Lanczos ground state into an MPS.
  long chi = 128;
  double cutoff = 1e-10;
  /// Replica bond cap; 0 means untruncated.
  long chi_p = 0;
  double replica_cutoff = 1e-22;
  std::uint64_t samples = 100000;
  std::uint64_t steps = 200000;
  std::size_t chains = 4;
  std::uint64_t thin = 0;
  std::uint64_t seed = 1;
  /// Bipartition cuts l for W / I2; empty means 1..L-1.
  std::vector<std::size_t> cuts;
  bool fit = true;
  bool fit_inverse_correction = true;
  /// l window for slope fits; unset means [L/4, 3L/4].
  std::optional<std::pair<double, double>> fit_window;
  bool fit_weighted = false;
  std::string output = "srecrit_out";

  void validate() const;
  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig load(const std::string& path);
  /// FNV-1a of the canonical JSON form, hex.
  std::string hash() const;
};

/// Ground state of the configured chain at one size, as a dense vector
/// and/or an MPS. Lanczos states are compressed with (chi, cutoff).
struct PreparedState {
  std::optional<RealState> dense;
  std::optional<RealMps> mps;
  double energy = 0.0;
  std::string solver;
  bool converged = true;
};

PreparedState prepare_state(const RunConfig& config, std::size_t num_sites, bool need_dense, bool need_mps);

struct StageError : Error {
  StageError(const std::string& stage, const std::string& what)
      : Error("stage '" + stage + "' failed: " + what), stage(stage) {}
  std::string stage;
};

struct FitRecord {
  std::string quantity;
  double alpha = 0.0;
  /// Chain length for slope fits; 0 for scaling fits over L.
  std::size_t num_sites = 0;
  FitResult fit;
};

struct RunResult {
  std::vector<SreEstimate> estimates;
  std::vector<FitRecord> fits;
  std::vector<std::string> files;
};

/// Ground state, SRE method and fits for every L in the config. Writes
///   results.jsonl  one estimate per line
///   table.csv      the same rows in the frozen CSV schema
///   fits.json, fits.csv
///   manifest.json  code version, config (+ hash), seeds, schedule, wall time
/// under config.output. On a stage failure everything finished so far is
/// still written, the manifest records the failure, and StageError is thrown.
RunResult run(const RunConfig& config);

/// Version string compiled into the library.
std::string code_version();

}  // namespace srecrit

#endif  // SRECRIT_PIPELINE_HPP_
