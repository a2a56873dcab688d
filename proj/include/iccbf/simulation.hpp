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
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "iccbf/controller.hpp"

namespace iccbf {

enum class EventKind { safety_violation, qp_infeasible, set_exit, goal_reached, blowup };

struct Event {
  double time = 0.0;
  EventKind kind = EventKind::safety_violation;
  int level = -1;  // set_exit only

  /// "safety-violation", "qp-infeasible", "set-exit-level-<i>", "goal-reached", "blowup".
  std::string label() const;
};

/// Sampled closed-loop run. Row k holds the state at times[k] and the control
/// applied on [times[k], times[k+1]).
struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::vector<std::vector<double>> controls;
  std::vector<double> h_values;
  std::vector<std::vector<double>> level_values;  // b_0 ... b_N per row
  std::vector<Event> events;
  bool failed = false;

  std::size_t size() const noexcept { return times.size(); }
  bool has_event(EventKind kind) const;
  std::optional<double> first_event(EventKind kind) const;
};

struct SimulationOptions {
  double t_end = 40.0;
  double dt = 1e-2;
  /// Evaluate the controller at every Runge-Kutta stage instead of holding
  /// the step-start control.
  bool per_stage_control = false;
  /// Stop when the model's goal distance drops to this value.
  std::optional<double> goal_range;
  /// Slack below zero before a level counts as exited.
  double eps_num = 1e-4;
  double blowup_norm = 1e9;
};

using VectorField = std::function<std::vector<double>(double t, std::span<const double> x)>;

/// One classical fourth-order Runge-Kutta step.
std::vector<double> rk4_step(const VectorField& field, double t, std::span<const double> x, double dt);

/// Fixed-step RK4 from t = 0 to t_end; the last step may be short.
std::vector<double> integrate(const VectorField& field, std::span<const double> x0, double t_end, double dt);

/// Closed-loop simulation of the chain's system under `controller`.
///
/// Events are logged on transitions (the first sample where the condition
/// starts to hold). On an infeasible QP the projection onto U of the last
/// feasible control is applied and the run is marked failed.
Trajectory simulate(Controller& controller, std::span<const double> x0, const SimulationOptions& options);

/// First time the (scalar) control drops below `threshold`.
std::optional<double> braking_onset(const Trajectory& traj, double threshold = 0.0);

/// First time the control lies on the boundary of U within `tol`.
std::optional<double> first_saturation(const Trajectory& traj, const InputSet& inputs, double tol = 1e-9);

struct RunSummary {
  std::size_t samples = 0;
  double final_time = 0.0;
  double min_h = 0.0;
  std::vector<double> min_levels;
  double max_control_norm1 = 0.0;
  std::optional<double> braking_onset;
  std::optional<double> first_saturation;
  std::optional<double> first_violation;
  std::optional<double> goal_time;
  std::size_t infeasible_events = 0;
  bool failed = false;
};

RunSummary summarize(const Trajectory& traj, const InputSet& inputs);

/// Locale-independent shortest round-trip formatting of a double.
std::string format_double(double value);

/// Header: t, x_1..x_n, u_1..u_m, h, b_0..b_N.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
/// Header: time, kind.
void write_events_csv(std::ostream& os, const Trajectory& traj);
/// key,value rows.
void write_summary_csv(std::ostream& os, const RunSummary& summary);

}  // namespace iccbf
