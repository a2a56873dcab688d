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

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "iccbf/jet.hpp"

namespace iccbf {

/// A scalar-field evaluation failed while differentiating along one
/// coordinate.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, std::size_t coordinate)
      : std::runtime_error("evaluation failed along coordinate " + std::to_string(coordinate) +
                           ": " + what),
        coordinate_(coordinate) {}

  std::size_t coordinate() const noexcept { return coordinate_; }

 private:
  std::size_t coordinate_;
};

/// Lifts `x` one jet level up with coordinate `direction` seeded.
template <Scalar T>
std::vector<Jet<T>> lift_one(std::span<const T> x, std::size_t direction) {
  if (direction >= x.size()) {
    throw std::out_of_range("lift direction " + std::to_string(direction) +
                            " out of range for state of dimension " + std::to_string(x.size()));
  }
  std::vector<Jet<T>> out(x.begin(), x.end());
  out[direction].d = T(1.0);
  return out;
}

/// Lifts a real state to depth `Depth` with coordinate `direction` seeded at
/// every nesting level; `nth_derivative<k>` of a function of the result gives
/// the k-th partial derivative along that coordinate.
template <int Depth>
std::vector<JetN<Depth>> lift(std::span<const double> x, std::size_t direction) {
  static_assert(Depth >= 1 && Depth <= kMaxJetDepth, "lift depth out of range");
  if (direction >= x.size()) {
    throw std::out_of_range("lift direction " + std::to_string(direction) +
                            " out of range for state of dimension " + std::to_string(x.size()));
  }
  std::vector<JetN<Depth>> out;
  out.reserve(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    out.push_back(j == direction ? seed_variable<Depth>(x[j]) : JetN<Depth>(x[j]));
  }
  return out;
}

/// Gradient of a scalar field at `x`, one forward pass per coordinate.
///
/// `fn` must be callable with `std::span<const Jet<T>>` and return `Jet<T>`.
/// The result lives at the same jet depth as `x`, so gradients can be nested
/// (the gradient of a function that itself takes gradients).
template <Scalar T, typename Fn>
std::vector<T> gradient(Fn&& fn, std::span<const T> x) {
  static_assert(jet_depth_v<T> < kMaxJetDepth, "gradient would exceed the maximum jet depth");
  std::vector<Jet<T>> lifted(x.begin(), x.end());
  std::vector<T> grad(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    lifted[j].d = T(1.0);
    try {
      const Jet<T> r = fn(std::span<const Jet<T>>(lifted));
      grad[j] = r.d;
    } catch (const EvaluationError&) {
      throw;
    } catch (const std::exception& e) {
      throw EvaluationError(e.what(), j);
    }
    lifted[j].d = T(0.0);
  }
  return grad;
}

template <typename Fn>
std::vector<double> gradient(Fn&& fn, const std::vector<double>& x) {
  return gradient<double>(std::forward<Fn>(fn), std::span<const double>(x));
}

}  // namespace iccbf
