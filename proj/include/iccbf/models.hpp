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

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "iccbf/input_set.hpp"
#include "iccbf/system.hpp"

namespace iccbf {

/// One tunable model constant. `unit` is the SI unit the value is stored in.
struct ParameterSpec {
  std::string name;
  double default_value;
  std::string unit;
  std::string description;
};

/// x' = x + u, u in [-1, 1], h = 2 - x. The safe set {x <= 2} cannot be
/// rendered forward invariant: at x = 2 every admissible u gives h' <= -1.
class ScalarExampleModel final : public ModelAdapter<ScalarExampleModel> {
 public:
  explicit ScalarExampleModel(const ParameterMap& params);

  template <Scalar T>
  std::vector<T> drift_t(std::span<const T> x) const {
    return {x[0]};
  }
  template <Scalar T>
  Matrix<T> input_map_t(std::span<const T> /*x*/) const {
    Matrix<T> g(1, 1);
    g(0, 0) = T(1.0);
    return g;
  }
  template <Scalar T>
  T safety_t(std::span<const T> x) const {
    return limit_ - x[0];
  }
  template <Scalar T>
  T lyapunov_t(std::span<const T> x) const {
    return x[0] * x[0];
  }

 private:
  double limit_;
};

/// Double integrator x1' = x2, x2' = u with h = x1: relative degree two, so
/// the first barrier level reduces to L_f h + alpha_0(h).
class DoubleIntegratorModel final : public ModelAdapter<DoubleIntegratorModel> {
 public:
  explicit DoubleIntegratorModel(const ParameterMap& params);

  template <Scalar T>
  std::vector<T> drift_t(std::span<const T> x) const {
    return {x[1], T(0.0)};
  }
  template <Scalar T>
  Matrix<T> input_map_t(std::span<const T> /*x*/) const {
    Matrix<T> g(2, 1);
    g(1, 0) = T(1.0);
    return g;
  }
  template <Scalar T>
  T safety_t(std::span<const T> x) const {
    return x[0];
  }
  template <Scalar T>
  T lyapunov_t(std::span<const T> x) const {
    return x[0] * x[0] + x[1] * x[1];
  }
};

/// Adaptive cruise control. State (d, v): gap to the lead car and own speed.
///   d' = v0 - v,   v' = -F(v)/m + g0 u,   F(v) = f0 + f1 v + f2 v^2
/// with u (in g's) bounded by |u| <= u_max, safety h = d - headway * v and
/// CLF V = (v - v_max)^2.
class AccModel final : public ModelAdapter<AccModel> {
 public:
  explicit AccModel(const ParameterMap& params);

  template <Scalar T>
  T resistance(const T& v) const {
    return f0_ + f1_ * v + f2_ * v * v;
  }

  template <Scalar T>
  std::vector<T> drift_t(std::span<const T> x) const {
    return {v0_ - x[1], -resistance(x[1]) / mass_};
  }
  template <Scalar T>
  Matrix<T> input_map_t(std::span<const T> /*x*/) const {
    Matrix<T> g(2, 1);
    g(1, 0) = T(g0_);
    return g;
  }
  template <Scalar T>
  T safety_t(std::span<const T> x) const {
    return x[0] - headway_ * x[1];
  }
  template <Scalar T>
  T lyapunov_t(std::span<const T> x) const {
    const T e = x[1] - v_max_;
    return e * e;
  }

 private:
  double f0_, f1_, f2_, mass_, g0_, v0_, v_max_, headway_;
};

/// Planar chaser/target rendezvous in the LVLH frame with full nonlinear
/// relative gravity. State (p_x, p_y, v_x, v_y, psi) in m, m/s, rad; input
/// is thrust (N) bounded in 1-norm. Safety is the line-of-sight cone
/// cos(theta) - cos(gamma) about the rotating docking axis.
class RendezvousModel final : public ModelAdapter<RendezvousModel> {
 public:
  explicit RendezvousModel(const ParameterMap& params);

  double mean_motion() const noexcept { return n_; }

  /// Chaser-to-Earth-centre distance; `literal_rc` switches to sqrt(p_x^2 + p_y^2).
  template <Scalar T>
  T chaser_radius(const T& px, const T& py) const {
    if (literal_rc_) return sqrt(px * px + py * py);
    const T rx = orbit_radius_ + px;
    return sqrt(rx * rx + py * py);
  }

  template <Scalar T>
  std::vector<T> drift_t(std::span<const T> x) const {
    const T& px = x[0];
    const T& py = x[1];
    const T& vx = x[2];
    const T& vy = x[3];
    const T rc = chaser_radius(px, py);
    const T rc3 = rc * rc * rc;
    const double n2 = n_ * n_;
    const T ax = n2 * px + 2.0 * n_ * vy + mu_ / (orbit_radius_ * orbit_radius_) -
                 mu_ * (orbit_radius_ + px) / rc3;
    const T ay = n2 * py - 2.0 * n_ * vx - mu_ * py / rc3;
    return {vx, vy, ax, ay, T(omega_)};
  }
  template <Scalar T>
  Matrix<T> input_map_t(std::span<const T> /*x*/) const {
    Matrix<T> g(5, 2);
    g(2, 0) = T(1.0 / chaser_mass_);
    g(3, 1) = T(1.0 / chaser_mass_);
    return g;
  }
  template <Scalar T>
  T safety_t(std::span<const T> x) const {
    const T c = cos(x[4]);
    const T s = sin(x[4]);
    const T rx = x[0] - target_radius_ * c;
    const T ry = x[1] - target_radius_ * s;
    const T range = sqrt(rx * rx + ry * ry);
    return (rx * c + ry * s) / range - cos_half_angle_;
  }
  template <Scalar T>
  T lyapunov_t(std::span<const T> x) const {
    const T ex = x[2] + (x[0] - target_radius_ * cos(x[4])) / approach_time_;
    const T ey = x[3] + (x[1] - target_radius_ * sin(x[4])) / approach_time_;
    return ex * ex + ey * ey;
  }

  std::optional<double> goal_distance(std::span<const double> x) const override;

 private:
  double orbit_radius_, mu_, omega_, chaser_mass_, target_radius_, cos_half_angle_, approach_time_;
  double n_;
  bool literal_rc_;
};

struct BuiltinModel {
  std::shared_ptr<const ControlAffineSystem> system;
  InputSet inputs;
};

/// Names accepted by `builtin`, in display order.
std::vector<std::string> builtin_model_names();

/// Tunable constants of a built-in model with their SI units and defaults.
std::vector<ParameterSpec> builtin_parameters(const std::string& model);

/// Fully parameterised built-in model. Unknown model names and unknown
/// override keys are rejected.
BuiltinModel builtin(const std::string& model, const ParameterMap& overrides = {});

}  // namespace iccbf
