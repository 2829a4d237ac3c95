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

#include "srecrit/estimate.hpp"

#include <algorithm>
#include <charconv>

namespace srecrit {

namespace {

std::size_t parse_count(const std::string& text, const std::string& what) {
  std::size_t v = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw InvalidArgument("RegionSpec: cannot parse " + what + " '" + text + "'");
  }
  return v;
}

}  // namespace

RegionSpec RegionSpec::from_sites(std::vector<std::size_t> sites) {
  require(!sites.empty(), "RegionSpec: empty site list");
  std::sort(sites.begin(), sites.end());
  for (std::size_t k = 1; k < sites.size(); ++k) {
    require(sites[k] == sites[k - 1] + 1, "RegionSpec: region must be contiguous");
  }
  require(sites.front() >= 1, "RegionSpec: site labels are 1-based");
  return RegionSpec{sites.front() - 1, sites.size()};
}

RegionSpec RegionSpec::parse(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) return prefix(parse_count(text, "length"));
  const std::size_t a = parse_count(text.substr(0, dots), "start");
  const std::size_t b = parse_count(text.substr(dots + 2), "end");
  require(a >= 1 && b >= a, "RegionSpec: expected 1 <= start <= end in '" + text + "'");
  return RegionSpec{a - 1, b - a + 1};
}

void RegionSpec::validate(std::size_t num_sites) const {
  require(length >= 1, "RegionSpec: empty region");
  require(end() <= num_sites, "RegionSpec: region " + str() + " exceeds " +
                                  std::to_string(num_sites) + " sites");
}

void RegionSpec::validate_bipartition(std::size_t num_sites) const {
  require(begin == 0, "RegionSpec: bipartition region must start at site 1");
  require(length >= 1 && length + 1 <= num_sites,
          "RegionSpec: bipartition needs 1 <= l <= L-1, got l = " + std::to_string(length));
}

std::string RegionSpec::str() const {
  return std::to_string(begin + 1) + ".." + std::to_string(begin + length);
}

}  // namespace srecrit
