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

#ifndef SRECRIT_PAULI_HPP_
#define SRECRIT_PAULI_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "srecrit/common.hpp"

namespace srecrit {

/// Single-site Pauli label. The numeric value is the two-bit site code
/// m1 + 2*m2 of the label pair (m1 m2): 00 = I, 10 = X, 01 = Z, 11 = Y.
enum class Pauli : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

inline constexpr std::array<Pauli, 4> kAllPaulis = {Pauli::I, Pauli::X, Pauli::Z, Pauli::Y};

inline constexpr bool has_x(Pauli p) { return (static_cast<unsigned>(p) & 1u) != 0; }
inline constexpr bool has_z(Pauli p) { return (static_cast<unsigned>(p) & 2u) != 0; }
inline constexpr Pauli pauli_from_bits(bool x, bool z) {
  return static_cast<Pauli>((x ? 1u : 0u) | (z ? 2u : 0u));
}
char pauli_letter(Pauli p);

/// 2x2 matrix of a single-site Pauli. The real overload returns iY in place
/// of Y (the real antisymmetric matrix [[0,1],[-1,0]]); callers working with
/// real states fold the missing factor (-i)^{#Y} back in themselves.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 2> pauli_matrix(Pauli p) {
  Eigen::Matrix<Scalar, 2, 2> m;
  switch (p) {
    case Pauli::I:
      m << Scalar(1), Scalar(0), Scalar(0), Scalar(1);
      break;
    case Pauli::X:
      m << Scalar(0), Scalar(1), Scalar(1), Scalar(0);
      break;
    case Pauli::Z:
      m << Scalar(1), Scalar(0), Scalar(0), Scalar(-1);
      break;
    case Pauli::Y:
      if constexpr (is_complex_v<Scalar>) {
        m << Scalar(0), Scalar(0, -1), Scalar(0, 1), Scalar(0);
      } else {
        m << Scalar(0), Scalar(1), Scalar(-1), Scalar(0);
      }
      break;
  }
  return m;
}

enum class Parity : std::uint8_t { even = 0, odd = 1 };

/// Thrown by parse_pauli; position() is 1-based.
class ParseError : public InvalidArgument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InvalidArgument(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Bit-packed L-site Pauli string. Two bits per site, site 1 in the lowest
/// bits of the first word.
class PauliString {
 public:
  static constexpr std::size_t kSitesPerWord = 32;

  explicit PauliString(std::size_t length);

  static PauliString identity(std::size_t length) { return PauliString(length); }
  /// Builds from per-site x and z bit masks (bit j = site j+1). L <= 64.
  static PauliString from_masks(std::size_t length, std::uint64_t x_mask, std::uint64_t z_mask);

  std::size_t length() const { return length_; }

  Pauli get(std::size_t site) const {
    return static_cast<Pauli>((words_[site / kSitesPerWord] >> (2 * (site % kSitesPerWord))) & 3u);
  }
  void set(std::size_t site, Pauli p) {
    auto& w = words_[site / kSitesPerWord];
    const unsigned shift = 2 * (site % kSitesPerWord);
    w = (w & ~(std::uint64_t{3} << shift)) | (std::uint64_t{static_cast<unsigned>(p)} << shift);
  }
  Pauli operator[](std::size_t site) const { return get(site); }

  /// x/z bit masks of the first 64 sites (bit j = site j+1).
  std::uint64_t x_mask() const;
  std::uint64_t z_mask() const;

  std::size_t count_y() const;
  /// Number of sites carrying Z or Y; its parity decides whether the string
  /// commutes with the global spin flip prod_j X_j.
  std::size_t count_z_bits() const;
  std::size_t weight() const;
  bool is_identity() const;

  std::string str() const;
  std::string hex() const;

  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.length_ == b.length_ && a.words_ == b.words_;
  }
  /// Arbitrary but fixed order, for use as an ordered-container key.
  friend bool operator<(const PauliString& a, const PauliString& b) {
    return a.length_ != b.length_ ? a.length_ < b.length_ : a.words_ < b.words_;
  }
  friend bool operator!=(const PauliString& a, const PauliString& b) { return !(a == b); }

 private:
  std::size_t length_;
  std::vector<std::uint64_t> words_;
};

/// Parses per-site letters I/X/Y/Z, site 1 leftmost.
PauliString parse_pauli(std::string_view text);
inline std::string format_pauli(const PauliString& p) { return p.str(); }

inline Parity y_parity(const PauliString& p) {
  return (p.count_y() % 2) ? Parity::odd : Parity::even;
}
inline Parity spin_flip_parity(const PauliString& p) {
  return (p.count_z_bits() % 2) ? Parity::odd : Parity::even;
}

}  // namespace srecrit

template <>
struct std::hash<srecrit::PauliString> {
  std::size_t operator()(const srecrit::PauliString& p) const noexcept {
    std::uint64_t h = p.length();
    for (auto w : p.words()) h = (h ^ w) * 0x100000001b3ULL + 0x9e3779b97f4a7c15ULL;
    return static_cast<std::size_t>(h);
  }
};

#endif  // SRECRIT_PAULI_HPP_
