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

#include "iccbf/class_kappa.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace iccbf {
namespace {

void check_gain(double gain) {
  if (!(gain > 0.0) || !std::isfinite(gain)) {
    throw std::invalid_argument("class-K gain must be positive and finite");
  }
}

}  // namespace

ClassKappa ClassKappa::linear(double gain) {
  check_gain(gain);
  return ClassKappa(Kind::linear, gain, 1.0, 0.0);
}

ClassKappa ClassKappa::sqrt(double gain, double derivative_cap) {
  check_gain(gain);
  if (!(derivative_cap > 0.0)) throw std::invalid_argument("derivative cap must be positive");
  return ClassKappa(Kind::sqrt, gain, 0.5, derivative_cap);
}

ClassKappa ClassKappa::power(double gain, double exponent, double derivative_cap) {
  check_gain(gain);
  if (!(exponent > 0.0) || !std::isfinite(exponent)) {
    throw std::invalid_argument("class-K exponent must be positive and finite");
  }
  if (!(derivative_cap > 0.0)) throw std::invalid_argument("derivative cap must be positive");
  return ClassKappa(Kind::power, gain, exponent, derivative_cap);
}

ClassKappa ClassKappa::custom(std::string label, DerivativeOracle oracle) {
  if (!oracle) throw std::invalid_argument("custom class-K function needs a derivative oracle");
  ClassKappa k(Kind::custom, 1.0, 0.0, 0.0);
  k.label_ = std::move(label);
  k.oracle_ = std::move(oracle);
  return k;
}

ClassKappa ClassKappa::with_gain(double gain) const {
  switch (kind_) {
    case Kind::linear:
      return linear(gain);
    case Kind::sqrt:
      return sqrt(gain, cap_);
    case Kind::power:
      return power(gain, exponent_, cap_);
    case Kind::custom:
      break;
  }
  throw std::logic_error("custom class-K functions have no gain to replace");
}

double ClassKappa::derivative(double s, int order) const {
  if (kind_ == Kind::custom) return oracle_(s, order);
  if (kind_ == Kind::linear) {
    if (order == 0) return gain_ * s;
    return order == 1 ? gain_ : 0.0;
  }
  // gain * sign(s) |s|^p. For s > 0 the k-th derivative is
  // gain * p (p-1) ... (p-k+1) s^(p-k); odd symmetry gives
  // f^(k)(s) = (-1)^(k+1) f^(k)(|s|) for s < 0.
  const double a = std::abs(s);
  double coeff = gain_;
  for (int i = 0; i < order; ++i) coeff *= exponent_ - i;
  if (order == 0) return std::copysign(coeff * std::pow(a, exponent_), s);
  if (coeff == 0.0) return 0.0;
  double value = a == 0.0 && exponent_ - order < 0.0 ? std::copysign(cap_, coeff)
                                                      : coeff * std::pow(a, exponent_ - order);
  if (exponent_ - order < 0.0) value = std::clamp(value, -cap_, cap_);
  if (s < 0.0 && order % 2 == 0) value = -value;
  return value;
}

std::string ClassKappa::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::linear:
      os << "linear(gain=" << gain_ << ")";
      break;
    case Kind::sqrt:
      os << "sqrt(gain=" << gain_ << ")";
      break;
    case Kind::power:
      os << "power(gain=" << gain_ << ", exponent=" << exponent_ << ")";
      break;
    case Kind::custom:
      os << "custom(" << label_ << ")";
      break;
  }
  return os.str();
}

}  // namespace iccbf
