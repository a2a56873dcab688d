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
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "iccbf/jet.hpp"

namespace iccbf {

/// Small dense row-major matrix over any jet scalar.
template <typename T>
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, T(0.0)) {}

  T& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Axis-aligned box of states.
struct StateBox {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t dim() const noexcept { return lower.size(); }
  bool contains(std::span<const double> x) const;
};

using ParameterMap = std::map<std::string, double>;

/// Model evaluators at one scalar type. A system implements this interface
/// for `double` and for every jet depth up to `kMaxJetDepth`.
template <typename T>
class TypedModel {
 public:
  virtual ~TypedModel() = default;
  virtual std::vector<T> evaluate_drift(std::span<const T> x) const = 0;
  virtual Matrix<T> evaluate_input_map(std::span<const T> x) const = 0;
  virtual T evaluate_safety(std::span<const T> x) const = 0;
  virtual T evaluate_lyapunov(std::span<const T> x) const = 0;
};

namespace detail {

template <typename Seq>
struct TypedModelBases;

template <int... D>
struct TypedModelBases<std::integer_sequence<int, D...>> : public TypedModel<JetN<D>>... {};

}  // namespace detail

/// Control-affine system  x' = f(x) + g(x) u  with safety function h (the
/// safe set is {h >= 0}) and an optional control Lyapunov function V.
class ControlAffineSystem
    : public detail::TypedModelBases<std::make_integer_sequence<int, kMaxJetDepth + 1>> {
 public:
  ControlAffineSystem(std::string name, std::size_t state_dim, std::size_t input_dim,
                      ParameterMap params, StateBox state_box, bool has_lyapunov)
      : name_(std::move(name)),
        state_dim_(state_dim),
        input_dim_(input_dim),
        params_(std::move(params)),
        state_box_(std::move(state_box)),
        has_lyapunov_(has_lyapunov) {
    if (state_dim_ == 0 || input_dim_ == 0) throw std::invalid_argument("system dimensions must be positive");
    if (state_box_.dim() != state_dim_ || state_box_.upper.size() != state_dim_) {
      throw std::invalid_argument("state box dimension mismatch for model " + name_);
    }
  }
  ~ControlAffineSystem() override = default;

  const std::string& name() const noexcept { return name_; }
  std::size_t state_dim() const noexcept { return state_dim_; }
  std::size_t input_dim() const noexcept { return input_dim_; }
  const ParameterMap& params() const noexcept { return params_; }
  double param(const std::string& key) const;
  const StateBox& state_box() const noexcept { return state_box_; }
  bool has_lyapunov() const noexcept { return has_lyapunov_; }

  template <Scalar T>
  std::vector<T> drift(std::span<const T> x) const {
    return static_cast<const TypedModel<T>&>(*this).evaluate_drift(x);
  }
  template <Scalar T>
  Matrix<T> input_map(std::span<const T> x) const {
    return static_cast<const TypedModel<T>&>(*this).evaluate_input_map(x);
  }
  template <Scalar T>
  T safety(std::span<const T> x) const {
    return static_cast<const TypedModel<T>&>(*this).evaluate_safety(x);
  }
  template <Scalar T>
  T lyapunov(std::span<const T> x) const {
    if (!has_lyapunov_) throw std::logic_error("model " + name_ + " has no Lyapunov function");
    return static_cast<const TypedModel<T>&>(*this).evaluate_lyapunov(x);
  }

  /// Closed-loop vector field f(x) + g(x) u.
  std::vector<double> vector_field(std::span<const double> x, std::span<const double> u) const;

  /// Distance to the model's goal, when the model has one (e.g. range to a
  /// docking port).
  virtual std::optional<double> goal_distance(std::span<const double> /*x*/) const {
    return std::nullopt;
  }

 private:
  std::string name_;
  std::size_t state_dim_;
  std::size_t input_dim_;
  ParameterMap params_;
  StateBox state_box_;
  bool has_lyapunov_;
};

namespace detail {

template <class Derived, typename T, class Base>
class TypedModelImpl : public Base {
 public:
  using Base::Base;

  std::vector<T> evaluate_drift(std::span<const T> x) const override {
    return self().template drift_t<T>(x);
  }
  Matrix<T> evaluate_input_map(std::span<const T> x) const override {
    return self().template input_map_t<T>(x);
  }
  T evaluate_safety(std::span<const T> x) const override { return self().template safety_t<T>(x); }
  T evaluate_lyapunov(std::span<const T> x) const override {
    return self().template lyapunov_t<T>(x);
  }

 private:
  const Derived& self() const { return static_cast<const Derived&>(*this); }
};

template <class Derived, int D>
struct ModelAdapterChain {
  using type = TypedModelImpl<Derived, JetN<D>, typename ModelAdapterChain<Derived, D - 1>::type>;
};

template <class Derived>
struct ModelAdapterChain<Derived, -1> {
  using type = ControlAffineSystem;
};

}  // namespace detail

/// CRTP base: `Derived` supplies member templates `drift_t<T>`,
/// `input_map_t<T>`, `safety_t<T>` and `lyapunov_t<T>`; this wires them into
/// the per-depth virtual interface.
template <class Derived>
using ModelAdapter = typename detail::ModelAdapterChain<Derived, kMaxJetDepth>::type;

}  // namespace iccbf
