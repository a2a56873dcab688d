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

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "iccbf/jet.hpp"

namespace iccbf {

/// Admissible control region U: a non-empty, bounded, convex polytope given
/// either as a box, a 1-norm ball centred at the origin, or {u : A u <= B}.
class InputSet {
 public:
  enum class Kind { box, one_norm_ball, polytope };

  static InputSet box(std::vector<double> lower, std::vector<double> upper);
  static InputSet one_norm_ball(std::size_t dim, double radius);
  static InputSet polytope(Eigen::MatrixXd a, Eigen::VectorXd b);

  Kind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return dim_; }

  const std::vector<double>& lower() const noexcept { return lower_; }
  const std::vector<double>& upper() const noexcept { return upper_; }
  double radius() const noexcept { return radius_; }

  /// Halfspace form A u <= B. Boxes give 2m rows, 1-norm balls 2^m rows.
  const Eigen::MatrixXd& a() const noexcept { return a_; }
  const Eigen::VectorXd& b() const noexcept { return b_; }

  const std::vector<std::vector<double>>& vertices() const noexcept { return vertices_; }

  bool contains(std::span<const double> u, double tol = 1e-10) const;

  /// Euclidean projection onto U (closed form for boxes).
  std::vector<double> project(std::span<const double> u) const;

  /// inf over u in U of c0 + c . u, exact.
  template <Scalar T>
  T infimum(const T& c0, std::span<const T> c) const;

  /// sup over u in U of c0 + c . u, computed as -inf(-c0, -c).
  template <Scalar T>
  T supremum(const T& c0, std::span<const T> c) const;

  std::string describe() const;

 private:
  InputSet() = default;

  Kind kind_ = Kind::box;
  std::size_t dim_ = 0;
  std::vector<double> lower_;
  std::vector<double> upper_;
  double radius_ = 0.0;
  Eigen::MatrixXd a_;
  Eigen::VectorXd b_;
  std::vector<std::vector<double>> vertices_;
};

template <Scalar T>
T InputSet::infimum(const T& c0, std::span<const T> c) const {
  T acc = c0;
  switch (kind_) {
    case Kind::box:
      for (std::size_t j = 0; j < dim_; ++j) {
        acc += min(T(c[j] * lower_[j]), T(c[j] * upper_[j]));
      }
      return acc;
    case Kind::one_norm_ball: {
      T largest = abs(c[0]);
      for (std::size_t j = 1; j < dim_; ++j) largest = max(largest, abs(c[j]));
      return acc - radius_ * largest;
    }
    case Kind::polytope: {
      T best{};
      for (std::size_t k = 0; k < vertices_.size(); ++k) {
        T value = c0;
        for (std::size_t j = 0; j < dim_; ++j) value += c[j] * vertices_[k][j];
        best = k == 0 ? value : min(best, value);
      }
      return best;
    }
  }
  return acc;
}

template <Scalar T>
T InputSet::supremum(const T& c0, std::span<const T> c) const {
  std::vector<T> neg(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) neg[j] = -c[j];
  return -infimum<T>(-c0, std::span<const T>(neg));
}

inline double affine_infimum(double c0, std::span<const double> c, const InputSet& set) {
  return set.infimum<double>(c0, c);
}

inline double affine_supremum(double c0, std::span<const double> c, const InputSet& set) {
  return set.supremum<double>(c0, c);
}

}  // namespace iccbf
