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

#include "iccbf/models.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace iccbf {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

const std::vector<ParameterSpec>& scalar_example_params() {
  static const std::vector<ParameterSpec> specs = {
      {"limit", 2.0, "1", "upper state limit of the safe set"},
      {"input_bound", 1.0, "1", "symmetric input bound |u| <= input_bound"},
  };
  return specs;
}

const std::vector<ParameterSpec>& double_integrator_params() {
  static const std::vector<ParameterSpec> specs = {
      {"input_bound", 1.0, "1", "symmetric input bound |u| <= input_bound"},
  };
  return specs;
}

// The resistance coefficients, mass, lead speed and initial state are the
// usual values of this benchmark.
const std::vector<ParameterSpec>& acc_params() {
  static const std::vector<ParameterSpec> specs = {
      {"f0", 0.1, "N", "constant rolling resistance"},
      {"f1", 5.0, "N*s/m", "linear resistance coefficient"},
      {"f2", 0.25, "N*s^2/m^2", "quadratic resistance coefficient"},
      {"mass", 1650.0, "kg", "vehicle mass"},
      {"g0", 9.81, "m/s^2", "gravitational acceleration"},
      {"lead_speed", 13.89, "m/s", "speed of the car in front (v0)"},
      {"speed_limit", 24.0, "m/s", "target speed of the CLF (v_max)"},
      {"headway", 1.8, "s", "time headway of the safety constraint d >= headway * v"},
      {"input_bound", 0.25, "1", "acceleration bound in g's"},
  };
  return specs;
}

const std::vector<ParameterSpec>& rendezvous_params() {
  static const std::vector<ParameterSpec> specs = {
      {"orbit_radius", 6771.0e3, "m", "orbit radius of the target"},
      {"mu", 398600.0e9, "m^3/s^2", "gravitational parameter of Earth"},
      {"omega", 0.6 * kDeg, "rad/s", "target spin rate relative to LVLH"},
      {"chaser_mass", 1000.0, "kg", "chaser mass"},
      {"target_radius", 2.4, "m", "target disk radius (docking port offset)"},
      {"los_half_angle", 10.0 * kDeg, "rad", "line-of-sight cone half angle"},
      {"thrust_bound", 250.0, "N", "1-norm bound on thrust |u_x| + |u_y|"},
      {"approach_time", 10.0, "s", "time constant of the CLF approach velocity"},
      {"literal_rc", 0.0, "1", "1 uses sqrt(p_x^2 + p_y^2) as the chaser orbit radius"},
  };
  return specs;
}

ParameterMap resolve(const std::string& model, const std::vector<ParameterSpec>& specs,
                     const ParameterMap& overrides) {
  ParameterMap out;
  for (const auto& s : specs) out[s.name] = s.default_value;
  for (const auto& [key, value] : overrides) {
    if (!out.contains(key)) throw std::invalid_argument("unknown parameter '" + key + "' for model " + model);
    if (!std::isfinite(value)) throw std::invalid_argument("parameter '" + key + "' must be finite");
    out[key] = value;
  }
  return out;
}

double positive(const ParameterMap& p, const std::string& key) {
  const double v = p.at(key);
  if (!(v > 0.0)) throw std::invalid_argument("parameter '" + key + "' must be positive");
  return v;
}

}  // namespace

ScalarExampleModel::ScalarExampleModel(const ParameterMap& params)
    : ModelAdapter<ScalarExampleModel>("scalar-example", 1, 1, params, StateBox{{-3.0}, {3.0}}, false),
      limit_(params.at("limit")) {}

DoubleIntegratorModel::DoubleIntegratorModel(const ParameterMap& params)
    : ModelAdapter<DoubleIntegratorModel>("double-integrator", 2, 1, params,
                                          StateBox{{-5.0, -5.0}, {5.0, 5.0}}, false) {}

AccModel::AccModel(const ParameterMap& params)
    : ModelAdapter<AccModel>("acc", 2, 1, params, StateBox{{0.0, 0.0}, {200.0, 30.0}}, true),
      f0_(params.at("f0")),
      f1_(params.at("f1")),
      f2_(params.at("f2")),
      mass_(positive(params, "mass")),
      g0_(positive(params, "g0")),
      v0_(params.at("lead_speed")),
      v_max_(params.at("speed_limit")),
      headway_(positive(params, "headway")) {}

RendezvousModel::RendezvousModel(const ParameterMap& params)
    : ModelAdapter<RendezvousModel>("rendezvous", 5, 2, params,
                                    StateBox{{5.0, -50.0, -2.0, -2.0, -std::numbers::pi},
                                             {150.0, 50.0, 2.0, 2.0, std::numbers::pi}},
                                    true),
      orbit_radius_(positive(params, "orbit_radius")),
      mu_(positive(params, "mu")),
      omega_(params.at("omega")),
      chaser_mass_(positive(params, "chaser_mass")),
      target_radius_(params.at("target_radius")),
      cos_half_angle_(std::cos(params.at("los_half_angle"))),
      approach_time_(positive(params, "approach_time")),
      n_(std::sqrt(mu_ / (orbit_radius_ * orbit_radius_ * orbit_radius_))),
      literal_rc_(params.at("literal_rc") != 0.0) {
  const double half = params.at("los_half_angle");
  if (!(half > 0.0 && half < std::numbers::pi / 2)) {
    throw std::invalid_argument("los_half_angle must lie in (0, pi/2)");
  }
}

std::optional<double> RendezvousModel::goal_distance(std::span<const double> x) const {
  const double rx = x[0] - target_radius_ * std::cos(x[4]);
  const double ry = x[1] - target_radius_ * std::sin(x[4]);
  return std::hypot(rx, ry);
}

std::vector<std::string> builtin_model_names() {
  return {"scalar-example", "acc", "rendezvous", "double-integrator"};
}

std::vector<ParameterSpec> builtin_parameters(const std::string& model) {
  if (model == "scalar-example") return scalar_example_params();
  if (model == "double-integrator") return double_integrator_params();
  if (model == "acc") return acc_params();
  if (model == "rendezvous") return rendezvous_params();
  throw std::invalid_argument("unknown model '" + model + "'");
}

BuiltinModel builtin(const std::string& model, const ParameterMap& overrides) {
  const ParameterMap p = resolve(model, builtin_parameters(model), overrides);
  if (model == "scalar-example") {
    const double b = positive(p, "input_bound");
    return {std::make_shared<ScalarExampleModel>(p), InputSet::box({-b}, {b})};
  }
  if (model == "double-integrator") {
    const double b = positive(p, "input_bound");
    return {std::make_shared<DoubleIntegratorModel>(p), InputSet::box({-b}, {b})};
  }
  if (model == "acc") {
    const double b = positive(p, "input_bound");
    return {std::make_shared<AccModel>(p), InputSet::box({-b}, {b})};
  }
  return {std::make_shared<RendezvousModel>(p), InputSet::one_norm_ball(2, positive(p, "thrust_bound"))};
}

}  // namespace iccbf
