// Copyright 2026 The iccbf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <string>

#include "iccbf/jet.hpp"

namespace iccbf {

/// Extended class-K function alpha: alpha(0) = 0, strictly increasing, odd
/// (alpha(-s) = -alpha(s)).
///
/// Every kind is represented by its derivative oracle `derivative(s, k)`
/// (k-th derivative at s), which is all that is needed to evaluate alpha on
/// jets of any depth. The power family k * sign(s) |s|^p covers linear
/// (p = 1) and square root (p = 1/2). Where a derivative is unbounded
/// (s = 0 with p < k-th order smoothness) it is clamped to +/- `derivative_cap`.
class ClassKappa {
 public:
  enum class Kind { linear, sqrt, power, custom };

  /// Returns the k-th derivative at s; k = 0 is the value.
  using DerivativeOracle = std::function<double(double s, int order)>;

  static ClassKappa linear(double gain);
  static ClassKappa sqrt(double gain, double derivative_cap = 1e6);
  static ClassKappa power(double gain, double exponent, double derivative_cap = 1e6);
  /// User-supplied alpha; the oracle must describe an odd, strictly
  /// increasing function with alpha(0) = 0.
  static ClassKappa custom(std::string label, DerivativeOracle oracle);

  Kind kind() const noexcept { return kind_; }
  double gain() const noexcept { return gain_; }
  double exponent() const noexcept { return exponent_; }
  double derivative_cap() const noexcept { return cap_; }
  std::string describe() const;

  /// Same kind with the gain replaced (custom kinds are not rescalable).
  ClassKappa with_gain(double gain) const;

  double derivative(double s, int order) const;

  template <Scalar T>
  T operator()(const T& s) const {
    return apply(s, 0);
  }

 private:
  ClassKappa(Kind kind, double gain, double exponent, double cap)
      : kind_(kind), gain_(gain), exponent_(exponent), cap_(cap) {}

  // f^(order) composed with a jet: (f^(k))(v + d e) = f^(k)(v) + f^(k+1)(v) d e.
  template <Scalar T>
  T apply(const T& s, int order) const {
    if constexpr (jet_depth_v<T> == 0) {
      return derivative(s, order);
    } else {
      return T(apply(s.v, order), apply(s.v, order + 1) * s.d);
    }
  }

  Kind kind_;
  double gain_;
  double exponent_;
  double cap_;
  std::string label_;
  DerivativeOracle oracle_;
};

}  // namespace iccbf
