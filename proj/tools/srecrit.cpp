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
// Command-line front end: one subcommand per pipeline stage plus `run`,
// which executes a whole JSON-configured experiment.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "srecrit/bcft.hpp"
#include "srecrit/fit.hpp"
#include "srecrit/mps_io.hpp"
#include "srecrit/mutual_mcmc.hpp"
#include "srecrit/pipeline.hpp"
#include "srecrit/records.hpp"
#include "srecrit/sre_exact.hpp"
#include "srecrit/sre_replica.hpp"
#include "srecrit/sre_sampling.hpp"

namespace {

using namespace srecrit;

struct Common {
  std::size_t sites = 8;
  double coupling = 1.0;
  std::string boundary = "periodic";
  std::vector<double> alphas;
  std::string ground = "auto";
  long chi = 128;
  double cutoff = 1e-10;
  std::string mps_path;
  std::string output = "csv";
  std::string config_path;
};

void add_common(CLI::App* app, Common& c, bool with_alpha) {
  app->add_option("--sites,-L", c.sites, "Chain length")->check(CLI::Range(2, 64));
  app->add_option("--lambda", c.coupling, "Transverse field");
  app->add_option("--boundary", c.boundary, "periodic | open");
  if (with_alpha) app->add_option("--alpha", c.alphas, "Renyi index (repeatable or comma-separated)")->delimiter(',');
  app->add_option("--ground", c.ground, "Ground-state solver: auto | lanczos | dmrg");
  app->add_option("--chi", c.chi, "DMRG / compression bond cap");
  app->add_option("--cutoff", c.cutoff, "DMRG / compression discarded weight per bond");
  app->add_option("--mps", c.mps_path, "Use a saved MPS instead of solving for the ground state");
  app->add_option("--output", c.output, "Output format")->check(CLI::IsMember({"csv", "jsonl"}));
  app->add_option("--config", c.config_path, "JSON config; command-line flags override it");
}

// A RunConfig mirroring the flags, so every printed row carries a config hash.
RunConfig to_config(const Common& c, const std::string& task, const std::string& method,
                    const std::string& quantity) {
  RunConfig r = c.config_path.empty() ? RunConfig{} : RunConfig::load(c.config_path);
  r.task = task;
  r.sites = {c.sites};
  r.coupling = c.coupling;
  r.boundary = c.boundary;
  if (!c.alphas.empty()) r.alphas = c.alphas;
  r.ground = c.ground;
  r.chi = c.chi;
  r.cutoff = c.cutoff;
  r.method = method;
  r.quantity = quantity;
  return r;
}

struct Loaded {
  std::optional<RealState> dense;
  std::optional<RealMps> mps;
  double coupling = 1.0;
};

Loaded load_state(const Common& c, const RunConfig& cfg, bool need_dense, bool need_mps) {
  Loaded out;
  if (!c.mps_path.empty()) {
    auto ck = load_mps<double>(c.mps_path);
    out.coupling = ck.spec.coupling;
    if (need_dense) out.dense = ck.mps.to_dense();
    if (need_mps) out.mps = std::move(ck.mps);
    return out;
  }
  auto p = prepare_state(cfg, c.sites, need_dense, need_mps);
  out.dense = std::move(p.dense);
  out.mps = std::move(p.mps);
  out.coupling = cfg.coupling;
  return out;
}

void emit(const std::vector<SreEstimate>& ests, const Common& c, const RunConfig& cfg) {
  const std::string hash = cfg.hash();
  if (c.output == "csv") {
    std::cout << kEstimateCsvHeader << '\n';
    for (const auto& e : ests) write_estimate_csv_row(std::cout, cfg.task, e, hash);
  } else {
    for (const auto& e : ests) {
      auto j = to_json(e);
      j["task"] = cfg.task;
      j["config_hash"] = hash;
      std::cout << j.dump() << '\n';
    }
  }
}

void finish(std::vector<SreEstimate>& ests, std::size_t L, double coupling) {
  for (auto& e : ests) {
    e.num_sites = L;
    e.coupling = coupling;
  }
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream s(line);
  while (std::getline(s, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

// Rows of the estimate table printed by the other subcommands: x is the
// region length when a region is set and L otherwise. Repeated headers from
// concatenated runs are skipped.
std::vector<FitPoint> read_estimate_table(std::istream& in, std::optional<double> alpha) {
  std::vector<FitPoint> pts;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == kEstimateCsvHeader) continue;
    const auto f = split_csv(line);
    if (f.size() != 12) throw Error("fit: malformed estimate row: " + line);
    if (alpha && std::abs(std::stod(f[5]) - *alpha) > 1e-12) continue;
    const double x = f[6].empty() ? std::stod(f[3]) : static_cast<double>(RegionSpec::parse(f[6]).length);
    pts.push_back(FitPoint{x, std::stod(f[7]), std::stod(f[8])});
  }
  return pts;
}

std::vector<FitPoint> read_points(const std::string& path, std::optional<double> alpha) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  if (in.peek() == kEstimateCsvHeader[0]) {
    std::string first;
    std::getline(in, first);
    if (first == kEstimateCsvHeader) return read_estimate_table(in, alpha);
    in.seekg(0);
  }
  std::vector<FitPoint> pts;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    for (char& ch : line) {
      if (ch == ',') ch = ' ';
    }
    std::istringstream s(line);
    FitPoint p;
    if (!(s >> p.x >> p.y)) continue;  // header or malformed row
    s >> p.std_error;
    pts.push_back(p);
  }
  return pts;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stabilizer Renyi entropy of critical Ising chains"};
  app.require_subcommand(1);

  // ground
  Common g;
  std::string save_path;
  auto* ground = app.add_subcommand("ground", "Ground state by Lanczos or DMRG");
  add_common(ground, g, false);
  ground->add_option("--save", save_path, "Write the MPS checkpoint here");

  // sre-exact
  Common ex;
  std::string region_text;
  auto* sre_exact = app.add_subcommand("sre-exact", "SRE by exhaustive Pauli enumeration");
  add_common(sre_exact, ex, true);
  sre_exact->add_option("--region", region_text, "Subsystem a..b (1-based); full state when omitted");

  // sre-sample
  Common sa;
  std::uint64_t samples = 100000, sample_seed = 1;
  std::string dump_path;
  auto* sre_sample = app.add_subcommand("sre-sample", "SRE by perfect Pauli sampling");
  add_common(sre_sample, sa, true);
  sre_sample->add_option("--samples", samples, "Number of Pauli strings");
  sre_sample->add_option("--seed", sample_seed, "RNG seed");
  sre_sample->add_option("--dump", dump_path, "Write drawn strings and ln-probabilities here");

  // sre-replica
  Common re;
  long chi_p = 0;
  double replica_cutoff = kReplicaCutoff;
  bool converge = false;
  auto* sre_rep = app.add_subcommand("sre-replica", "SRE from the Pauli-basis MPS (integer alpha)");
  add_common(sre_rep, re, true);
  sre_rep->add_option("--chi-p", chi_p, "Pauli-MPS bond cap; 0 = untruncated");
  sre_rep->add_option("--cutoff-p", replica_cutoff, "Pauli-MPS discarded weight per bond");
  sre_rep->add_flag("--converge", converge, "Double the bond cap until the value settles");

  // mutual
  Common mu;
  std::string mu_method = "mcmc", mu_quantity = "W";
  std::vector<std::size_t> cuts;
  ChainConfig chain;
  auto* mutual = app.add_subcommand("mutual", "Mutual SRE W_2 or Renyi-2 mutual information");
  add_common(mutual, mu, false);
  mutual->add_option("--method", mu_method, "mcmc | exact")->check(CLI::IsMember({"mcmc", "exact"}));
  mutual->add_option("--quantity", mu_quantity, "W | I2")->check(CLI::IsMember({"W", "I2"}));
  mutual->add_option("--cut,--region", cuts, "Bipartition l (A = 1..l); repeatable or comma-separated, default all")->delimiter(',');
  mutual->add_option("--steps", chain.steps, "Proposals per chain");
  mutual->add_option("--burn-in", chain.burn_in, "Discarded steps (default 10%)");
  mutual->add_option("--thin", chain.thin, "Keep every n-th step; 0 = from a pilot run");
  mutual->add_option("--chains", chain.chains, "Independent chains");
  mutual->add_option("--seed", chain.seed, "RNG seed");
  mutual->add_option("--min-ess", chain.min_ess, "Flag results below this effective sample size");
  mutual->add_option("--trace", chain.trace_path, "Write kept samples here");

  // bcft
  std::vector<double> grid = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0};
  std::size_t curve_sites = 0;
  bool self_test = false;
  auto* bcft = app.add_subcommand("bcft", "Analytic predictions and identity self-test");
  bcft->add_option("--alpha", grid, "alpha grid for the c_alpha table")->delimiter(',');
  bcft->add_option("--sites,-L", curve_sites, "Also print W_alpha(l) and I_2(l) curves for this L");
  bcft->add_flag("--self-test", self_test, "Run the theta/eta/character/g-factor identity suite");

  // fit
  std::string fit_input, fit_model = "scaling+1/L";
  double fit_sites = 0;
  std::vector<double> window;
  bool weighted = false;
  std::optional<double> fit_alpha;
  auto* fit = app.add_subcommand("fit", "Least-squares fits of x,y[,std_error] data");
  fit->add_option("--input", fit_input, "x,y[,std_error] columns, or an estimate table from another subcommand")
      ->required();
  fit->add_option("--alpha", fit_alpha, "Keep only estimate-table rows with this alpha");
  fit->add_option("--model", fit_model, "scaling | scaling+1/L | log-slope")
      ->check(CLI::IsMember({"scaling", "scaling+1/L", "log-slope"}));
  fit->add_option("--sites,-L", fit_sites, "Chain length for log-slope fits");
  fit->add_option("--window", window, "l window lo hi for log-slope fits")->expected(2);
  fit->add_flag("--weighted", weighted, "Inverse-variance weights from the third column");

  // run
  std::string run_config, run_output;
  auto* run_cmd = app.add_subcommand("run", "Run a JSON-configured experiment end to end");
  run_cmd->add_option("--config", run_config, "Config file")->required();
  run_cmd->add_option("--output-dir", run_output, "Override the config's output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*ground) {
      const auto cfg = to_config(g, "ground", "exact", "M");
      cfg.validate();
      const auto st = prepare_state(cfg, g.sites, false, true);
      std::cout << "L=" << g.sites << " lambda=" << format_double(g.coupling) << " solver=" << st.solver
                << " energy=" << format_double(st.energy) << " max_bond=" << st.mps->max_bond_dim()
                << (st.converged ? "" : " (sweep limit reached)") << '\n';
      if (!save_path.empty()) {
        save_mps(save_path, *st.mps, TfimSpec{g.sites, g.coupling, boundary_from_string(g.boundary)});
      }
    } else if (*sre_exact) {
      const auto cfg = to_config(ex, "sre-exact", "exact", "M");
      cfg.validate();
      const auto st = load_state(ex, cfg, true, false);
      auto ests = region_text.empty()
                      ? sre_full_exact(*st.dense, std::span<const double>(cfg.alphas))
                      : sre_subsystem_exact(*st.dense, RegionSpec::parse(region_text),
                                            std::span<const double>(cfg.alphas));
      finish(ests, st.dense->num_sites(), st.coupling);
      emit(ests, ex, cfg);
    } else if (*sre_sample) {
      auto cfg = to_config(sa, "sre-sample", "sampling", "M");
      cfg.samples = samples;
      cfg.seed = sample_seed;
      cfg.validate();
      const auto st = load_state(sa, cfg, false, true);
      const auto set = draw_samples(*st.mps, samples, sample_seed);
      if (!dump_path.empty()) write_sample_dump(dump_path, draw_samples(*st.mps, samples, sample_seed, true));
      auto ests = estimate_sre_from_samples(set, std::span<const double>(cfg.alphas));
      finish(ests, st.mps->num_sites(), st.coupling);
      emit(ests, sa, cfg);
    } else if (*sre_rep) {
      auto cfg = to_config(re, "sre-replica", "replica", "M");
      cfg.chi_p = chi_p;
      cfg.replica_cutoff = replica_cutoff;
      cfg.validate();
      const auto st = load_state(re, cfg, false, true);
      std::vector<SreEstimate> ests;
      for (double a : cfg.alphas) {
        if (converge) {
          ReplicaOptions o;
          o.bond_cap = static_cast<Index>(chi_p);
          o.cutoff = replica_cutoff;
          ests.push_back(sre_replica_converged(*st.mps, static_cast<int>(a), o));
        } else {
          const Index cap = chi_p == 0 ? std::numeric_limits<Index>::max() : static_cast<Index>(chi_p);
          ests.push_back(sre_replica(*st.mps, static_cast<int>(a), cap, replica_cutoff));
        }
      }
      finish(ests, st.mps->num_sites(), st.coupling);
      emit(ests, re, cfg);
    } else if (*mutual) {
      auto cfg = to_config(mu, "mutual", mu_method, mu_quantity);
      cfg.alphas = {2.0};
      cfg.cuts = cuts;
      cfg.steps = chain.steps;
      cfg.thin = chain.thin;
      cfg.chains = chain.chains;
      cfg.seed = chain.seed;
      cfg.validate();
      const bool exact = mu_method == "exact";
      const auto st = load_state(mu, cfg, exact, !exact);
      const std::size_t L = exact ? st.dense->num_sites() : st.mps->num_sites();
      if (cuts.empty()) {
        for (std::size_t l = 1; l < L; ++l) cuts.push_back(l);
      }
      std::vector<SreEstimate> ests;
      if (exact) {
        for (std::size_t l : cuts) {
          SreEstimate e;
          e.value = mu_quantity == "W" ? mutual_sre_exact(*st.dense, l, 2.0) : mutual_info2_exact(*st.dense, l);
          e.method = "exact";
          e.quantity = mu_quantity;
          e.region = RegionSpec::prefix(l);
          ests.push_back(e);
        }
      } else {
        chain.cuts = cuts;
        chain.power = mu_quantity == "W" ? 4 : 2;
        ests = mu_quantity == "W" ? estimate_w2(*st.mps, chain) : estimate_i2(*st.mps, chain);
      }
      finish(ests, L, st.coupling);
      emit(ests, mu, cfg);
    } else if (*bcft) {
      if (self_test) {
        bool ok = true;
        std::cout << "check,residual,tolerance,status\n";
        for (const auto& c : bcft_identity_suite()) {
          ok = ok && c.passed();
          std::cout << '"' << c.name << "\"," << format_double(c.residual) << ',' << format_double(c.tolerance) << ','
                    << (c.passed() ? "pass" : "FAIL") << '\n';
        }
        return ok ? 0 : 1;
      }
      std::cout << "alpha,c_alpha\n";
      for (double a : grid) std::cout << format_double(a) << ',' << format_double(c_alpha(a)) << '\n';
      if (curve_sites >= 2) {
        std::cout << "\nl,l_c,W_2,W_3,I_2\n";
        const double L = static_cast<double>(curve_sites);
        for (std::size_t l = 1; l < curve_sites; ++l) {
          std::cout << l << ',' << format_double(chord_length(l, L)) << ',' << format_double(predicted_w(2, l, L))
                    << ',' << format_double(predicted_w(3, l, L)) << ',' << format_double(predicted_i2(l, L)) << '\n';
        }
      }
    } else if (*fit) {
      const auto pts = read_points(fit_input, fit_alpha);
      FitResult r;
      if (fit_model == "log-slope") {
        if (fit_sites < 2) throw Error("fit: --sites is required for log-slope fits");
        LogSlopeOptions o;
        o.weighted = weighted;
        if (!window.empty()) o.window = std::pair{window[0], window[1]};
        r = fit_log_slope(pts, fit_sites, o);
      } else {
        r = fit_sre_scaling(pts, fit_model == "scaling+1/L", FitOptions{weighted});
      }
      std::cout << to_json(r).dump(2) << '\n';
    } else if (*run_cmd) {
      auto cfg = RunConfig::load(run_config);
      if (!run_output.empty()) cfg.output = run_output;
      const auto r = run(cfg);
      for (const auto& f : r.files) std::cout << f << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "srecrit: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
