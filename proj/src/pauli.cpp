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

#include "srecrit/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>

namespace srecrit {

namespace {
constexpr std::uint64_t kLowBits = 0x5555555555555555ULL;
}

char pauli_letter(Pauli p) {
  switch (p) {
    case Pauli::I:
      return 'I';
    case Pauli::X:
      return 'X';
    case Pauli::Z:
      return 'Z';
    case Pauli::Y:
      return 'Y';
  }
  return '?';
}

PauliString::PauliString(std::size_t length)
    : length_(length), words_((length + kSitesPerWord - 1) / kSitesPerWord, 0) {
  require(length >= 1, "PauliString: length must be at least 1");
}

PauliString PauliString::from_masks(std::size_t length, std::uint64_t x_mask,
                                    std::uint64_t z_mask) {
  require(length <= 64, "PauliString::from_masks: length > 64");
  PauliString p(length);
  for (std::size_t j = 0; j < length; ++j) {
    p.set(j, pauli_from_bits((x_mask >> j) & 1u, (z_mask >> j) & 1u));
  }
  return p;
}

std::uint64_t PauliString::x_mask() const {
  std::uint64_t m = 0;
  const std::size_t n = std::min<std::size_t>(length_, 64);
  for (std::size_t j = 0; j < n; ++j) m |= std::uint64_t{has_x(get(j))} << j;
  return m;
}

std::uint64_t PauliString::z_mask() const {
  std::uint64_t m = 0;
  const std::size_t n = std::min<std::size_t>(length_, 64);
  for (std::size_t j = 0; j < n; ++j) m |= std::uint64_t{has_z(get(j))} << j;
  return m;
}

std::size_t PauliString::count_y() const {
  std::size_t n = 0;
  for (auto w : words_) n += std::popcount(w & (w >> 1) & kLowBits);
  return n;
}

std::size_t PauliString::count_z_bits() const {
  std::size_t n = 0;
  for (auto w : words_) n += std::popcount((w >> 1) & kLowBits);
  return n;
}

std::size_t PauliString::weight() const {
  std::size_t n = 0;
  for (auto w : words_) n += std::popcount((w | (w >> 1)) & kLowBits);
  return n;
}

bool PauliString::is_identity() const {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

std::string PauliString::str() const {
  std::string s(length_, 'I');
  for (std::size_t j = 0; j < length_; ++j) s[j] = pauli_letter(get(j));
  return s;
}

std::string PauliString::hex() const {
  std::string out;
  char buf[17];
  for (auto it = words_.rbegin(); it != words_.rend(); ++it) {
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(*it));
    out += buf;
  }
  return out;
}

PauliString parse_pauli(std::string_view text) {
  if (text.empty()) throw ParseError("parse_pauli: empty Pauli string", 1);
  PauliString p(text.size());
  for (std::size_t j = 0; j < text.size(); ++j) {
    Pauli v;
    switch (text[j]) {
      case 'I':
        v = Pauli::I;
        break;
      case 'X':
        v = Pauli::X;
        break;
      case 'Y':
        v = Pauli::Y;
        break;
      case 'Z':
        v = Pauli::Z;
        break;
      default:
        throw ParseError("parse_pauli: invalid character '" + std::string(1, text[j]) +
                             "' at position " + std::to_string(j + 1),
                         j + 1);
    }
    p.set(j, v);
  }
  return p;
}

}  // namespace srecrit
