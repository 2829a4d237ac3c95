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

#include "srecrit/sre_exact.hpp"

#include <string>

namespace srecrit {

double sre_from_sums(const PauliPowerSums& sums, std::size_t k) {
  require(k < sums.alphas.size(), "sre_from_sums: alpha index out of range");
  const double alpha = sums.alphas[k];
  const int l = static_cast<int>(sums.num_sites);
  if (alpha == 1.0) {
    const double purity = std::ldexp(sums.square_sum, -l);
    if (std::abs(purity - 1.0) > 1e-8) {
      throw InvalidArgument("alpha = 1 SRE is undefined for a mixed operator (purity " +
                            std::to_string(purity) + ")");
    }
    return -std::ldexp(sums.entropy_term, -l);
  }
  return std::log(std::ldexp(sums.power[k], -l)) / (1.0 - alpha);
}

}  // namespace srecrit
