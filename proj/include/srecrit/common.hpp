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

#ifndef SRECRIT_COMMON_HPP_
#define SRECRIT_COMMON_HPP_

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace srecrit {

using Index = Eigen::Index;
using cplx = std::complex<double>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input rejected before any computation (bad arguments, bad config).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Problem size exceeds the dense/enumeration budget of an algorithm.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// An iterative method ran out of iterations.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};
template <typename T>
inline constexpr bool is_complex_v = is_complex<T>::value;

template <typename Scalar>
inline double abs2(const Scalar& v) {
  if constexpr (is_complex_v<Scalar>) {
    return std::norm(v);
  } else {
    return v * v;
  }
}

template <typename Scalar>
inline Scalar conj(const Scalar& v) {
  if constexpr (is_complex_v<Scalar>) {
    return std::conj(v);
  } else {
    return v;
  }
}

template <typename Scalar>
inline double real_part(const Scalar& v) {
  if constexpr (is_complex_v<Scalar>) {
    return v.real();
  } else {
    return v;
  }
}

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  void add(const CompensatedSum& other) {
    add(other.sum_);
    add(other.comp_);
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw InvalidArgument(msg);
}

}  // namespace srecrit

#endif  // SRECRIT_COMMON_HPP_
