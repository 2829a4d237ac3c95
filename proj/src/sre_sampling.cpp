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

#include "srecrit/sre_sampling.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace srecrit {

std::vector<SreEstimate> estimate_sre_from_samples(const SampleSet& samples, std::span<const double> alphas,
                                                   const SamplingOptions& options) {
  const std::size_t n = samples.log_probs.size();
  if (n == 0) throw InvalidArgument("estimate_sre: empty sample set");
  require(options.jackknife_blocks >= 2, "estimate_sre: need at least 2 jackknife blocks");
  const std::size_t nb = std::min(options.jackknife_blocks, n);
  const double offset = static_cast<double>(samples.num_sites) * std::numbers::ln2;
  const auto& lp = samples.log_probs;

  std::vector<SreEstimate> out;
  for (double alpha : alphas) {
    require(alpha > 0.0 && std::isfinite(alpha), "estimate_sre: alpha must be > 0");
    // Per-block sums of the statistic; the value is a function of the mean.
    const bool shannon = alpha == 1.0;
    double shift = 0.0;
    if (!shannon) {
      shift = -std::numeric_limits<double>::infinity();
      for (double v : lp) shift = std::max(shift, (alpha - 1.0) * v);
    }
    std::vector<double> block_sum(nb);
    std::vector<double> block_count(nb);
    CompensatedSum total;
    for (std::size_t b = 0; b < nb; ++b) {
      const std::size_t lo = n * b / nb;
      const std::size_t hi = n * (b + 1) / nb;
      CompensatedSum s;
      for (std::size_t i = lo; i < hi; ++i) s.add(shannon ? -lp[i] : std::exp((alpha - 1.0) * lp[i] - shift));
      block_sum[b] = s.value();
      block_count[b] = static_cast<double>(hi - lo);
      total.add(s);
    }
    auto value_of = [&](double sum, double count) {
      const double mean = sum / count;
      if (shannon) return mean - offset;
      return (shift + std::log(mean)) / (1.0 - alpha) - offset;
    };
    const double full = value_of(total.value(), static_cast<double>(n));
    std::vector<double> loo(nb);
    double loo_mean = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      loo[b] = value_of(total.value() - block_sum[b], static_cast<double>(n) - block_count[b]);
      loo_mean += loo[b] / static_cast<double>(nb);
    }
    double var = 0.0;
    for (double v : loo) var += (v - loo_mean) * (v - loo_mean);
    var *= static_cast<double>(nb - 1) / static_cast<double>(nb);

    SreEstimate e;
    e.value = full;
    e.std_error = std::sqrt(var);
    e.alpha = alpha;
    e.method = "sampling";
    e.quantity = "M";
    e.num_sites = samples.num_sites;
    e.seed = samples.seed;
    e.samples = n;
    e.diagnostics["jackknife_blocks"] = static_cast<double>(nb);
    e.validate();
    out.push_back(std::move(e));
  }
  return out;
}

void write_sample_dump(const std::string& path, const SampleSet& samples) {
  require(samples.strings.size() == samples.log_probs.size(),
          "write_sample_dump: sample set was drawn without strings");
  std::ofstream out(path);
  if (!out) throw Error("write_sample_dump: cannot open " + path);
  out << "# sites " << samples.num_sites << " seed " << samples.seed << "\n";
  char buf[32];
  for (std::size_t i = 0; i < samples.log_probs.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", samples.log_probs[i]);
    out << samples.strings[i].str() << ' ' << buf << '\n';
  }
}

SampleSet read_sample_dump(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("read_sample_dump: cannot open " + path);
  SampleSet s;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (line[0] == '#') {
      std::string tag;
      ls >> tag >> tag >> s.num_sites >> tag >> s.seed;
      continue;
    }
    std::string text;
    double lp = 0.0;
    if (!(ls >> text >> lp)) throw Error("read_sample_dump: bad line " + std::to_string(lineno));
    s.strings.push_back(parse_pauli(text));
    s.log_probs.push_back(lp);
    s.num_sites = text.size();
  }
  return s;
}

}  // namespace srecrit
