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

#ifndef SRECRIT_STATISTICS_HPP_
#define SRECRIT_STATISTICS_HPP_

#include <span>
#include <vector>

namespace srecrit {

double mean(std::span<const double> x);
/// Unbiased sample variance; 0 for fewer than two values.
double variance(std::span<const double> x);

/// Normalized autocorrelation rho(k) for k = 0..max_lag.
std::vector<double> autocorrelation(std::span<const double> x, std::size_t max_lag);

/// Standard error of the mean by repeated pairwise blocking. Returns the
/// largest estimate over levels that keep at least `min_blocks` blocks.
double blocking_standard_error(std::span<const double> x, std::size_t min_blocks = 32);

/// Gelman-Rubin potential scale reduction over equal-length chains.
double gelman_rubin(const std::vector<std::vector<double>>& chains);

}  // namespace srecrit

#endif  // SRECRIT_STATISTICS_HPP_
