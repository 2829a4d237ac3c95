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
#include "srecrit/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "srecrit/dmrg.hpp"
#include "srecrit/mutual_mcmc.hpp"
#include "srecrit/records.hpp"
#include "srecrit/sre_exact.hpp"
#include "srecrit/sre_replica.hpp"
#include "srecrit/sre_sampling.hpp"
#include "srecrit/tfim.hpp"

#ifndef SRECRIT_VERSION
#define SRECRIT_VERSION "unknown"
#endif

namespace srecrit {

std::string code_version() { return SRECRIT_VERSION; }

namespace {

constexpr std::size_t kLanczosAutoSites = 14;

const std::set<std::string> kMethods = {"exact", "replica", "sampling", "mcmc"};
const std::set<std::string> kQuantities = {"M", "W", "I2"};
const std::set<std::string> kGround = {"auto", "lanczos", "dmrg"};

template <typename T>
void read(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

bool is_integer(double a) { return std::floor(a) == a; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

void RunConfig::validate() const {
  require(!task.empty(), "config: task must be non-empty");
  require(kMethods.count(method), "config: unknown method '" + method + "' (exact|replica|sampling|mcmc)");
  require(kQuantities.count(quantity), "config: unknown quantity '" + quantity + "' (M|W|I2)");
  require(kGround.count(ground), "config: unknown ground-state solver '" + ground + "' (auto|lanczos|dmrg)");
  boundary_from_string(boundary);
  require(!sites.empty(), "config: sites list is empty");
  for (std::size_t l : sites) require(l >= 2, "config: every L must be >= 2");
  require(std::set<std::size_t>(sites.begin(), sites.end()).size() == sites.size(), "config: repeated L");
  require(std::isfinite(coupling), "config: lambda must be finite");
  require(!alphas.empty(), "config: alpha list is empty");
  for (double a : alphas) require(a > 0.0 && std::isfinite(a), "config: alpha must be > 0");
  require(chi >= 1 && cutoff >= 0.0, "config: chi >= 1 and cutoff >= 0 required");
  require(chi_p >= 0 && replica_cutoff >= 0.0, "config: chi_p >= 0 and replica_cutoff >= 0 required");
  if (method == "replica") {
    require(quantity == "M", "config: replica computes the full-state quantity M only");
    for (double a : alphas) require(is_integer(a) && a >= 2.0, "config: replica needs integer alpha >= 2");
  }
  if (method == "sampling") {
    require(quantity == "M", "config: sampling computes the full-state quantity M only");
    require(samples >= 100, "config: sampling needs at least 100 samples");
  }
  if (method == "mcmc") {
    require(quantity != "M", "config: mcmc computes W or I2 only");
    require(steps >= 1 && chains >= 1, "config: mcmc needs steps and chains >= 1");
  }
  if (quantity == "W") {
    for (double a : alphas) require(a != 1.0, "config: W is defined for alpha != 1");
    if (method == "mcmc") {
      require(alphas.size() == 1 && alphas[0] == 2.0, "config: mcmc estimates W at alpha = 2 only");
    }
  }
  for (std::size_t l : cuts) {
    for (std::size_t L : sites) require(l >= 1 && l < L, "config: cut outside [1, L-1] for some L");
  }
  if (fit_window) require(fit_window->first <= fit_window->second, "config: fit window lower bound above upper");
  require(!output.empty(), "config: output path is empty");
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["task"] = task;
  j["sites"] = sites;
  j["lambda"] = coupling;
  j["boundary"] = boundary;
  j["alphas"] = alphas;
  j["method"] = method;
  j["quantity"] = quantity;
  j["ground"] = ground;
  j["chi"] = chi;
  j["cutoff"] = cutoff;
  j["chi_p"] = chi_p;
  j["replica_cutoff"] = replica_cutoff;
  j["samples"] = samples;
  j["steps"] = steps;
  j["chains"] = chains;
  j["thin"] = thin;
  j["seed"] = seed;
  j["cuts"] = cuts;
  j["fit"] = fit;
  j["fit_inverse_correction"] = fit_inverse_correction;
  j["fit_window"] = fit_window ? nlohmann::json{fit_window->first, fit_window->second} : nlohmann::json(nullptr);
  j["fit_weighted"] = fit_weighted;
  j["output"] = output;
  return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  require(j.is_object(), "config: top level must be a JSON object");
  const RunConfig defaults;
  const auto known = defaults.to_json();
  for (const auto& [key, value] : j.items()) {
    require(known.contains(key), "config: unknown key '" + key + "'");
  }
  RunConfig c;
  try {
    read(j, "task", c.task);
    read(j, "sites", c.sites);
    read(j, "lambda", c.coupling);
    read(j, "boundary", c.boundary);
    read(j, "alphas", c.alphas);
    read(j, "method", c.method);
    read(j, "quantity", c.quantity);
    read(j, "ground", c.ground);
    read(j, "chi", c.chi);
    read(j, "cutoff", c.cutoff);
    read(j, "chi_p", c.chi_p);
    read(j, "replica_cutoff", c.replica_cutoff);
    read(j, "samples", c.samples);
    read(j, "steps", c.steps);
    read(j, "chains", c.chains);
    read(j, "thin", c.thin);
    read(j, "seed", c.seed);
    read(j, "cuts", c.cuts);
    read(j, "fit", c.fit);
    read(j, "fit_inverse_correction", c.fit_inverse_correction);
    if (j.contains("fit_window") && !j.at("fit_window").is_null()) {
      const auto w = j.at("fit_window").get<std::vector<double>>();
      require(w.size() == 2, "config: fit_window must be [lo, hi]");
      c.fit_window = std::pair{w[0], w[1]};
    }
    read(j, "fit_weighted", c.fit_weighted);
    read(j, "output", c.output);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "config: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("config: " + path + ": " + e.what());
  }
  return from_json(j);
}

std::string RunConfig::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : to_json().dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::ostringstream s;
  s << std::hex;
  s.width(16);
  s.fill('0');
  s << h;
  return s.str();
}

namespace {

struct Ledger {
  nlohmann::json schedule = nlohmann::json::array();
  nlohmann::json notes = nlohmann::json::array();
};

std::vector<std::size_t> cuts_for(const RunConfig& c, std::size_t L) {
  if (!c.cuts.empty()) return c.cuts;
  std::vector<std::size_t> all;
  for (std::size_t l = 1; l < L; ++l) all.push_back(l);
  return all;
}

std::vector<SreEstimate> method_stage(const RunConfig& c, const TfimSpec& spec, const PreparedState& g) {
  std::vector<SreEstimate> out;
  const std::size_t L = spec.num_sites;
  if (c.method == "exact") {
    const RealState& s = *g.dense;
    if (c.quantity == "M") return sre_full_exact(s, std::span<const double>(c.alphas));
    for (std::size_t l : cuts_for(c, L)) {
      if (c.quantity == "W") {
        for (double a : c.alphas) {
          SreEstimate e;
          e.value = mutual_sre_exact(s, l, a);
          e.alpha = a;
          e.method = "exact";
          e.quantity = "W";
          e.region = RegionSpec::prefix(l);
          out.push_back(e);
        }
      } else {
        SreEstimate e;
        e.value = mutual_info2_exact(s, l);
        e.method = "exact";
        e.quantity = "I2";
        e.region = RegionSpec::prefix(l);
        out.push_back(e);
      }
    }
    return out;
  }
  if (c.method == "replica") {
    const Index cap = c.chi_p == 0 ? std::numeric_limits<Index>::max() : static_cast<Index>(c.chi_p);
    for (double a : c.alphas) out.push_back(sre_replica(*g.mps, static_cast<int>(a), cap, c.replica_cutoff));
    return out;
  }
  if (c.method == "sampling") {
    return estimate_sre(*g.mps, std::span<const double>(c.alphas), c.samples, c.seed);
  }
  ChainConfig cc;
  cc.power = c.quantity == "W" ? 4 : 2;
  cc.steps = c.steps;
  cc.thin = c.thin;
  cc.seed = c.seed;
  cc.chains = c.chains;
  cc.cuts = cuts_for(c, L);
  return c.quantity == "W" ? estimate_w2(*g.mps, cc) : estimate_i2(*g.mps, cc);
}

std::vector<FitRecord> fit_stage(const RunConfig& c, const std::vector<SreEstimate>& all, Ledger& ledger) {
  std::vector<FitRecord> fits;
  if (!c.fit) return fits;
  std::vector<double> alphas = c.quantity == "I2" ? std::vector<double>{2.0} : c.alphas;
  for (double a : alphas) {
    if (c.quantity == "M") {
      std::vector<FitPoint> pts;
      for (const auto& e : all) {
        if (e.alpha == a) pts.push_back({static_cast<double>(e.num_sites), e.value, e.std_error});
      }
      const std::size_t need = c.fit_inverse_correction ? 4 : 3;
      if (pts.size() < need) {
        ledger.notes.push_back("fit skipped for alpha=" + format_double(a) + ": " + std::to_string(pts.size()) +
                               " sizes, need " + std::to_string(need));
        continue;
      }
      fits.push_back({"M", a, 0, fit_sre_scaling(pts, c.fit_inverse_correction, FitOptions{c.fit_weighted})});
      continue;
    }
    for (std::size_t L : c.sites) {
      std::vector<FitPoint> pts;
      for (const auto& e : all) {
        if (e.num_sites == L && e.alpha == a && e.region) {
          pts.push_back({static_cast<double>(e.region->length), e.value, e.std_error});
        }
      }
      LogSlopeOptions o;
      o.weighted = c.fit_weighted;
      o.window = c.fit_window;
      const auto [lo, hi] = o.window.value_or(std::pair{L / 4.0, 3.0 * L / 4.0});
      std::size_t inside = 0;
      for (const auto& p : pts) inside += p.x >= lo && p.x <= hi;
      if (inside < 3) {
        ledger.notes.push_back("slope fit skipped for L=" + std::to_string(L) + ": fewer than 3 cuts in window");
        continue;
      }
      fits.push_back({c.quantity, a, L, fit_log_slope(pts, static_cast<double>(L), o)});
    }
  }
  return fits;
}

void write_outputs(const RunConfig& c, const std::string& hash, RunResult& r) {
  const std::filesystem::path dir(c.output);
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    const auto p = dir / name;
    std::ofstream f(p);
    require(static_cast<bool>(f), "cannot write " + p.string());
    r.files.push_back(p.string());
    return f;
  };
  r.files.clear();
  {
    auto f = open("results.jsonl");
    for (const auto& e : r.estimates) f << to_json(e).dump() << '\n';
  }
  {
    auto f = open("table.csv");
    f << kEstimateCsvHeader << '\n';
    for (const auto& e : r.estimates) write_estimate_csv_row(f, c.task, e, hash);
  }
  {
    nlohmann::json fj = nlohmann::json::array();
    for (const auto& fr : r.fits) {
      auto j = to_json(fr.fit);
      j["quantity"] = fr.quantity;
      j["alpha"] = fr.alpha;
      j["L"] = fr.num_sites;
      j["config_hash"] = hash;
      fj.push_back(j);
    }
    auto f = open("fits.json");
    f << fj.dump(2) << '\n';
  }
  {
    auto f = open("fits.csv");
    f << kFitCsvHeader << '\n';
    for (const auto& fr : r.fits) {
      write_fit_csv_rows(f, c.task, fr.quantity, fr.alpha, static_cast<double>(fr.num_sites), fr.fit, hash);
    }
  }
}

}  // namespace

PreparedState prepare_state(const RunConfig& c, std::size_t num_sites, bool need_dense, bool need_mps) {
  const TfimSpec spec{num_sites, c.coupling, boundary_from_string(c.boundary)};
  const bool lanczos = c.ground == "lanczos" || (c.ground == "auto" && num_sites <= kLanczosAutoSites);
  PreparedState g;
  if (lanczos) {
    auto gs = lanczos_ground(spec, Sector::even);
    g.energy = gs.energy;
    g.solver = "lanczos";
    if (need_mps) g.mps = mps_from_dense(gs.state, c.cutoff, static_cast<Index>(c.chi));
    if (need_dense) g.dense = std::move(gs.state);
  } else {
    DmrgParams p;
    p.max_bond = static_cast<Index>(c.chi);
    p.svd_cutoff = c.cutoff;
    auto r = dmrg_ground(spec, p);
    g.energy = r.energy;
    g.solver = "dmrg";
    g.converged = r.converged;
    if (need_dense) g.dense = r.mps.to_dense();
    if (need_mps) g.mps = std::move(r.mps);
  }
  return g;
}

RunResult run(const RunConfig& config) {
  config.validate();
  const std::string hash = config.hash();
  const auto t_start = std::chrono::steady_clock::now();
  const auto wall_start = std::chrono::system_clock::now();
  RunResult result;
  Ledger ledger;
  std::optional<StageError> failure;

  for (std::size_t L : config.sites) {
    TfimSpec spec{L, config.coupling, boundary_from_string(config.boundary)};
    nlohmann::json job = {{"L", L}, {"seed", config.seed}};
    std::string stage = "ground";
    try {
      auto t0 = std::chrono::steady_clock::now();
      const PreparedState g = prepare_state(config, L, config.method == "exact", config.method != "exact");
      if (!g.converged) ledger.notes.push_back("L=" + std::to_string(L) + ": DMRG hit the sweep limit");
      job["ground"] = {{"solver", g.solver}, {"energy", g.energy}, {"seconds", seconds_since(t0)}};
      if (g.mps) job["ground"]["max_bond"] = g.mps->max_bond_dim();
      stage = config.method;
      t0 = std::chrono::steady_clock::now();
      auto ests = method_stage(config, spec, g);
      for (auto& e : ests) {
        e.num_sites = L;
        e.coupling = config.coupling;
        if (config.method == "sampling" || config.method == "mcmc") e.seed = config.seed;
        result.estimates.push_back(std::move(e));
      }
      job[stage] = {{"estimates", ests.size()}, {"seconds", seconds_since(t0)}};
      job["status"] = "ok";
    } catch (const std::exception& e) {
      job["status"] = "failed";
      job["error"] = e.what();
      failure.emplace(stage + " (L=" + std::to_string(L) + ")", e.what());
    }
    ledger.schedule.push_back(job);
    if (failure) break;
  }

  if (!failure) {
    try {
      result.fits = fit_stage(config, result.estimates, ledger);
    } catch (const std::exception& e) {
      failure.emplace("fit", e.what());
    }
  }

  write_outputs(config, hash, result);
  nlohmann::json manifest;
  manifest["code_version"] = code_version();
  manifest["config"] = config.to_json();
  manifest["config_hash"] = hash;
  manifest["seed"] = config.seed;
  manifest["schedule"] = ledger.schedule;
  manifest["notes"] = ledger.notes;
  manifest["files"] = result.files;
  manifest["status"] = failure ? "failed" : "ok";
  if (failure) manifest["error"] = failure->what();
  manifest["started_unix"] =
      std::chrono::duration_cast<std::chrono::seconds>(wall_start.time_since_epoch()).count();
  manifest["wall_seconds"] = seconds_since(t_start);
  const auto mpath = std::filesystem::path(config.output) / "manifest.json";
  std::ofstream(mpath) << manifest.dump(2) << '\n';
  result.files.push_back(mpath.string());
  if (failure) throw *failure;
  return result;
}

}  // namespace srecrit
