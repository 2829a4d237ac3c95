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

#ifndef SRECRIT_ENVIRONMENT_CACHE_HPP_
#define SRECRIT_ENVIRONMENT_CACHE_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "srecrit/mps.hpp"

namespace srecrit {

/// Left/right transfer environments of one MPS for a "current" Pauli string.
///
/// left(c) contracts sites [0, c) and right(c) sites [c, L); the expectation
/// is the elementwise product of the two summed at any cut. After the
/// current string changes on sites [lo, hi], left(c) stays valid for c <= lo
/// and right(c) for c >= hi + 1, so a proposal is evaluated by contracting
/// only the stale stretch between them. Identity environments are kept as
/// well so identity-padded prefix and suffix strings cost one join per cut.
///
/// Single owner; the MPS must outlive the cache.
template <typename Scalar>
class EnvironmentCache {
 public:
  using Matrix = MatrixX<Scalar>;

  explicit EnvironmentCache(const MatrixProductState<Scalar>& mps)
      : mps_(&mps), current_(PauliString::identity(mps.num_sites())) {
    const std::size_t n = mps.num_sites();
    left_.resize(n + 1);
    right_.resize(n + 1);
    left_id_.resize(n + 1);
    right_id_.resize(n + 1);
    left_id_[0] = Matrix::Ones(1, 1);
    for (std::size_t j = 0; j < n; ++j) left_id_[j + 1] = left_transfer(left_id_[j], mps.site(j), Pauli::I);
    right_id_[n] = Matrix::Ones(1, 1);
    for (std::size_t j = n; j-- > 0;) right_id_[j] = right_transfer(right_id_[j + 1], mps.site(j), Pauli::I);
    left_ = left_id_;
    right_ = right_id_;
    left_valid_ = n;
    right_valid_ = 0;
  }

  std::size_t num_sites() const { return mps_->num_sites(); }
  const PauliString& current() const { return current_; }

  /// Number of single-site transfer contractions performed since construction.
  std::uint64_t transfer_count() const { return transfers_; }
  /// Highest cut c with left(c) valid; lowest cut with right(c) valid.
  std::size_t left_valid() const { return left_valid_; }
  std::size_t right_valid() const { return right_valid_; }

  /// <sigma^p>, reusing every environment still valid for p. Does not change
  /// the current string; the freshly contracted left stretch is kept aside
  /// and adopted by a following commit(p).
  double evaluate(const PauliString& p) {
    require(p.length() == num_sites(), "EnvironmentCache: Pauli length does not match MPS");
    const double phase = y_phase_correction<Scalar>(p.count_y());
    const auto diff = differing_range(p);
    if (!diff) return current_value();
    const auto [lo, hi] = *diff;
    // Sites > hi agree with the current string, so right environments built
    // there are valid for both and go straight into the cache.
    extend_right_to(hi + 1);
    const std::size_t start = std::min(left_valid_, lo);
    pending_.envs.clear();
    Matrix e = left_[start];
    for (std::size_t j = start; j <= hi; ++j) {
      e = left_transfer(e, mps_->site(j), p[j]);
      ++transfers_;
      pending_.envs.push_back(e);
    }
    pending_.string = p;
    pending_.start = start;
    pending_.valid = true;
    if (phase == 0.0) return 0.0;
    return phase * join(e, right_[hi + 1]);
  }

  /// Makes p the current string.
  void commit(const PauliString& p) {
    require(p.length() == num_sites(), "EnvironmentCache: Pauli length does not match MPS");
    const auto diff = differing_range(p);
    if (!diff) return;
    const auto [lo, hi] = *diff;
    if (pending_.valid && pending_.string == p) {
      for (std::size_t k = 0; k < pending_.envs.size(); ++k) {
        left_[pending_.start + k + 1] = std::move(pending_.envs[k]);
      }
      left_valid_ = hi + 1;
    } else {
      left_valid_ = std::min(left_valid_, lo);
    }
    right_valid_ = std::max(right_valid_, hi + 1);
    pending_.valid = false;
    current_ = p;
  }

  /// <sigma^current>.
  double current_value() {
    const double phase = y_phase_correction<Scalar>(current_.count_y());
    if (phase == 0.0) return 0.0;
    const std::size_t c = std::min(left_valid_, num_sites());
    extend_right_to(c);
    return phase * join(left_[c], right_[c]);
  }

  /// <sigma^current restricted to sites [0, l), identity elsewhere>.
  double prefix_value(std::size_t l) {
    require(l <= num_sites(), "EnvironmentCache::prefix_value: cut out of range");
    extend_left_to(l);
    std::size_t ny = 0;
    for (std::size_t j = 0; j < l; ++j) ny += current_[j] == Pauli::Y;
    const double phase = y_phase_correction<Scalar>(ny);
    if (phase == 0.0) return 0.0;
    return phase * join(left_[l], right_id_[l]);
  }

  /// <sigma^current restricted to sites [l, L), identity elsewhere>.
  double suffix_value(std::size_t l) {
    require(l <= num_sites(), "EnvironmentCache::suffix_value: cut out of range");
    extend_right_to(l);
    std::size_t ny = 0;
    for (std::size_t j = l; j < num_sites(); ++j) ny += current_[j] == Pauli::Y;
    const double phase = y_phase_correction<Scalar>(ny);
    if (phase == 0.0) return 0.0;
    return phase * join(left_id_[l], right_[l]);
  }

 private:
  struct Pending {
    PauliString string = PauliString(1);
    std::size_t start = 0;
    std::vector<Matrix> envs;
    bool valid = false;
  };

  static double join(const Matrix& left, const Matrix& right) {
    return real_part(left.cwiseProduct(right).sum());
  }

  /// [lo, hi] of sites where p differs from the current string.
  std::optional<std::pair<std::size_t, std::size_t>> differing_range(const PauliString& p) const {
    const auto& a = p.words();
    const auto& b = current_.words();
    std::optional<std::size_t> lo;
    std::size_t hi = 0;
    for (std::size_t w = 0; w < a.size(); ++w) {
      const std::uint64_t d = a[w] ^ b[w];
      if (d == 0) continue;
      const std::size_t base = w * PauliString::kSitesPerWord;
      if (!lo) lo = base + static_cast<std::size_t>(std::countr_zero(d)) / 2;
      hi = base + static_cast<std::size_t>(63 - std::countl_zero(d)) / 2;
    }
    if (!lo) return std::nullopt;
    return std::make_pair(*lo, hi);
  }

  void extend_left_to(std::size_t c) {
    while (left_valid_ < c) {
      left_[left_valid_ + 1] = left_transfer(left_[left_valid_], mps_->site(left_valid_), current_[left_valid_]);
      ++transfers_;
      ++left_valid_;
    }
  }
  void extend_right_to(std::size_t c) {
    while (right_valid_ > c) {
      right_[right_valid_ - 1] =
          right_transfer(right_[right_valid_], mps_->site(right_valid_ - 1), current_[right_valid_ - 1]);
      ++transfers_;
      --right_valid_;
    }
  }

  const MatrixProductState<Scalar>* mps_;
  PauliString current_;
  std::vector<Matrix> left_;
  std::vector<Matrix> right_;
  std::vector<Matrix> left_id_;
  std::vector<Matrix> right_id_;
  std::size_t left_valid_ = 0;
  std::size_t right_valid_ = 0;
  Pending pending_;
  std::uint64_t transfers_ = 0;
};

/// <psi|sigma^p|psi> through a cache: only environments invalidated since
/// the cache's current string are recontracted, and p becomes current.
template <typename Scalar>
double mps_pauli_expectation(const MatrixProductState<Scalar>& mps, const PauliString& p,
                             EnvironmentCache<Scalar>& cache) {
  require(cache.num_sites() == mps.num_sites(), "mps_pauli_expectation: cache built for another MPS");
  const double v = cache.evaluate(p);
  cache.commit(p);
  return v;
}

}  // namespace srecrit

#endif  // SRECRIT_ENVIRONMENT_CACHE_HPP_
