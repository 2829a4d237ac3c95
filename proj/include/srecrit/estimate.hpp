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

#ifndef SRECRIT_ESTIMATE_HPP_
#define SRECRIT_ESTIMATE_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "srecrit/common.hpp"

namespace srecrit {

/// Contiguous block of sites [begin, begin + length), 0-based. Its textual
/// form is 1-based and inclusive, e.g. "1..4".
struct RegionSpec {
  std::size_t begin = 0;
  std::size_t length = 1;

  static RegionSpec prefix(std::size_t l) { return RegionSpec{0, l}; }
  /// From a list of 1-based site labels; rejects gaps and repeats.
  static RegionSpec from_sites(std::vector<std::size_t> sites);
  /// Parses "a..b" (1-based inclusive) or a bare "l" meaning 1..l.
  static RegionSpec parse(const std::string& text);

  std::size_t end() const { return begin + length; }
  bool contains(std::size_t site) const { return site >= begin && site < end(); }
  /// Throws unless the region fits inside an L-site chain.
  void validate(std::size_t num_sites) const;
  /// Throws unless the region is a proper prefix 1..l with 1 <= l <= L-1.
  void validate_bipartition(std::size_t num_sites) const;
  std::string str() const;

  friend bool operator==(const RegionSpec&, const RegionSpec&) = default;
};

/// One SRE-type result with the metadata needed to reproduce it.
struct SreEstimate {
  double value = 0.0;
  double std_error = 0.0;
  double alpha = 2.0;
  std::string method;
  /// Quantity tag: "M" (full), "M_sub", "W", "I2", "S2", ...
  std::string quantity = "M";
  std::size_t num_sites = 0;
  double coupling = std::numeric_limits<double>::quiet_NaN();
  std::optional<RegionSpec> region;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  /// Method-specific numbers (discarded weight, chi_p, ess, r_hat, ...).
  std::map<std::string, double> diagnostics;
  /// Non-fatal warnings, e.g. "low_ess".
  std::vector<std::string> flags;

  void validate() const {
    if (!std::isfinite(value) || !(std_error >= 0.0)) {
      throw Error("SreEstimate: non-finite value or negative std_error (" + method + ")");
    }
  }
};

}  // namespace srecrit

#endif  // SRECRIT_ESTIMATE_HPP_
