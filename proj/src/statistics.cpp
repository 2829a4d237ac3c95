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

#include "srecrit/statistics.hpp"

#include <algorithm>
#include <cmath>

#include "srecrit/common.hpp"

namespace srecrit {

double mean(std::span<const double> x) {
  if (x.empty()) return 0.0;
  CompensatedSum s;
  for (double v : x) s.add(v);
  return s.value() / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const double m = mean(x);
  CompensatedSum s;
  for (double v : x) s.add((v - m) * (v - m));
  return s.value() / static_cast<double>(x.size() - 1);
}

std::vector<double> autocorrelation(std::span<const double> x, std::size_t max_lag) {
  const std::size_t n = x.size();
  max_lag = std::min(max_lag, n ? n - 1 : 0);
  std::vector<double> rho(max_lag + 1, 0.0);
  if (n < 2) return rho;
  const double m = mean(x);
  double c0 = 0.0;
  for (double v : x) c0 += (v - m) * (v - m);
  if (c0 <= 0.0) {
    rho[0] = 1.0;
    return rho;
  }
  for (std::size_t k = 0; k <= max_lag; ++k) {
    double c = 0.0;
    for (std::size_t i = 0; i + k < n; ++i) c += (x[i] - m) * (x[i + k] - m);
    rho[k] = c / c0;
  }
  return rho;
}

double blocking_standard_error(std::span<const double> x, std::size_t min_blocks) {
  require(min_blocks >= 2, "blocking_standard_error: min_blocks must be >= 2");
  std::vector<double> level(x.begin(), x.end());
  double best = 0.0;
  while (level.size() >= min_blocks) {
    best = std::max(best, std::sqrt(variance(level) / static_cast<double>(level.size())));
    std::vector<double> next(level.size() / 2);
    for (std::size_t i = 0; i < next.size(); ++i) next[i] = 0.5 * (level[2 * i] + level[2 * i + 1]);
    level = std::move(next);
  }
  return best;
}

double gelman_rubin(const std::vector<std::vector<double>>& chains) {
  const std::size_t m = chains.size();
  if (m < 2) return 1.0;
  const std::size_t n = chains.front().size();
  require(n >= 2, "gelman_rubin: chains too short");
  std::vector<double> means;
  double w = 0.0;
  for (const auto& c : chains) {
    require(c.size() == n, "gelman_rubin: chains differ in length");
    means.push_back(mean(c));
    w += variance(c) / static_cast<double>(m);
  }
  if (w <= 0.0) return 1.0;
  const double b = static_cast<double>(n) * variance(means);
  const double v = (static_cast<double>(n) - 1.0) / static_cast<double>(n) * w + b / static_cast<double>(n);
  return std::sqrt(v / w);
}

}  // namespace srecrit
