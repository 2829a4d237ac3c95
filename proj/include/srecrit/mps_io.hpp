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

#ifndef SRECRIT_MPS_IO_HPP_
#define SRECRIT_MPS_IO_HPP_

#include <string>

#include "srecrit/mps.hpp"
#include "srecrit/tfim.hpp"

namespace srecrit {

/// An MPS together with the chain it was computed for.
template <typename Scalar>
struct MpsCheckpoint {
  MatrixProductState<Scalar> mps;
  TfimSpec spec;
};

inline constexpr std::uint32_t kMpsFormatVersion = 1;

/// Writes the little-endian checkpoint format described in docs/mps_format.md.
template <typename Scalar>
void save_mps(const std::string& path, const MatrixProductState<Scalar>& mps, const TfimSpec& spec);

/// Reads a checkpoint; throws Error on a bad header, truncated payload, or a
/// scalar type different from Scalar.
template <typename Scalar>
MpsCheckpoint<Scalar> load_mps(const std::string& path);

}  // namespace srecrit

#endif  // SRECRIT_MPS_IO_HPP_
