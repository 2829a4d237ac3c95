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

#include "srecrit/mps_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

namespace srecrit {

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

namespace {

constexpr std::array<char, 8> kMagic = {'S', 'R', 'E', 'C', 'M', 'P', 'S', '\0'};

template <typename T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in, const std::string& path) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw Error("load_mps: truncated file " + path);
  return v;
}

template <typename Scalar>
constexpr std::uint32_t scalar_flag() {
  return is_complex_v<Scalar> ? 1u : 0u;
}

}  // namespace

template <typename Scalar>
void save_mps(const std::string& path, const MatrixProductState<Scalar>& mps, const TfimSpec& spec) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("save_mps: cannot open " + path);
  out.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(out, kMpsFormatVersion);
  put<std::uint32_t>(out, scalar_flag<Scalar>());
  put<std::uint64_t>(out, mps.num_sites());
  put<std::uint64_t>(out, mps.center());
  put<double>(out, spec.coupling);
  put<std::uint32_t>(out, spec.boundary == Boundary::periodic ? 0u : 1u);
  put<std::uint32_t>(out, 0u);
  for (Index d : mps.bond_dims()) put<std::uint64_t>(out, static_cast<std::uint64_t>(d));
  for (std::size_t j = 0; j < mps.num_sites(); ++j) {
    for (int s = 0; s < 2; ++s) {
      const auto& m = mps.site(j)[s];
      for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) {
          if constexpr (is_complex_v<Scalar>) {
            put<double>(out, m(r, c).real());
            put<double>(out, m(r, c).imag());
          } else {
            put<double>(out, m(r, c));
          }
        }
      }
    }
  }
  if (!out) throw Error("save_mps: write failed for " + path);
}

template <typename Scalar>
MpsCheckpoint<Scalar> load_mps(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("load_mps: cannot open " + path);
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw Error("load_mps: not an MPS checkpoint: " + path);
  const auto version = get<std::uint32_t>(in, path);
  if (version != kMpsFormatVersion) {
    throw Error("load_mps: unsupported format version " + std::to_string(version));
  }
  if (get<std::uint32_t>(in, path) != scalar_flag<Scalar>()) {
    throw Error("load_mps: scalar type in " + path + " does not match the requested type");
  }
  const auto n = get<std::uint64_t>(in, path);
  const auto center = get<std::uint64_t>(in, path);
  if (n < 1 || n > 4096 || center >= n) throw Error("load_mps: corrupt header in " + path);
  TfimSpec spec;
  spec.num_sites = n;
  spec.coupling = get<double>(in, path);
  const auto boundary = get<std::uint32_t>(in, path);
  if (boundary > 1) throw Error("load_mps: corrupt boundary field in " + path);
  spec.boundary = boundary == 0 ? Boundary::periodic : Boundary::open;
  get<std::uint32_t>(in, path);
  std::vector<Index> dims(n + 1, 1);
  for (std::uint64_t j = 1; j < n; ++j) {
    const auto d = get<std::uint64_t>(in, path);
    if (d < 1 || d > (1u << 20)) throw Error("load_mps: corrupt bond dimension in " + path);
    dims[j] = static_cast<Index>(d);
  }
  std::vector<typename MatrixProductState<Scalar>::SiteTensor> tensors(n);
  for (std::uint64_t j = 0; j < n; ++j) {
    for (int s = 0; s < 2; ++s) {
      auto& m = tensors[j][s];
      m.resize(dims[j], dims[j + 1]);
      for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) {
          if constexpr (is_complex_v<Scalar>) {
            const double re = get<double>(in, path);
            const double im = get<double>(in, path);
            m(r, c) = Scalar(re, im);
          } else {
            m(r, c) = get<double>(in, path);
          }
        }
      }
    }
  }
  return MpsCheckpoint<Scalar>{MatrixProductState<Scalar>(std::move(tensors), center), spec};
}

template void save_mps<double>(const std::string&, const RealMps&, const TfimSpec&);
template void save_mps<cplx>(const std::string&, const ComplexMps&, const TfimSpec&);
template MpsCheckpoint<double> load_mps<double>(const std::string&);
template MpsCheckpoint<cplx> load_mps<cplx>(const std::string&);

}  // namespace srecrit
