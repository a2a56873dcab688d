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

#include "iccbf/simulation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace iccbf {
namespace {

std::vector<double> axpy(std::span<const double> x, double a, std::span<const double> k) {
  std::vector<double> out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += a * k[i];
  return out;
}

double norm1(std::span<const double> u) {
  double s = 0.0;
  for (double v : u) s += std::abs(v);
  return s;
}

bool blown_up(std::span<const double> x, double limit) {
  double sq = 0.0;
  for (double v : x) {
    if (!std::isfinite(v)) return true;
    sq += v * v;
  }
  return std::sqrt(sq) > limit;
}

}  // namespace

std::string Event::label() const {
  switch (kind) {
    case EventKind::safety_violation:
      return "safety-violation";
    case EventKind::qp_infeasible:
      return "qp-infeasible";
    case EventKind::set_exit:
      return "set-exit-level-" + std::to_string(level);
    case EventKind::goal_reached:
      return "goal-reached";
    case EventKind::blowup:
      return "blowup";
  }
  return "unknown";
}

bool Trajectory::has_event(EventKind kind) const { return first_event(kind).has_value(); }

std::optional<double> Trajectory::first_event(EventKind kind) const {
  for (const Event& e : events) {
    if (e.kind == kind) return e.time;
  }
  return std::nullopt;
}

std::vector<double> rk4_step(const VectorField& field, double t, std::span<const double> x, double dt) {
  const std::vector<double> k1 = field(t, x);
  const std::vector<double> x2 = axpy(x, 0.5 * dt, k1);
  const std::vector<double> k2 = field(t + 0.5 * dt, x2);
  const std::vector<double> x3 = axpy(x, 0.5 * dt, k2);
  const std::vector<double> k3 = field(t + 0.5 * dt, x3);
  const std::vector<double> x4 = axpy(x, dt, k3);
  const std::vector<double> k4 = field(t + dt, x4);
  std::vector<double> out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

std::vector<double> integrate(const VectorField& field, std::span<const double> x0, double t_end, double dt) {
  if (!(dt > 0.0) || !(t_end >= 0.0)) throw std::invalid_argument("integrate: need dt > 0 and t_end >= 0");
  std::vector<double> x(x0.begin(), x0.end());
  double t = 0.0;
  for (long k = 0; t < t_end; ++k) {
    const double next = std::min(t_end, static_cast<double>(k + 1) * dt);
    x = rk4_step(field, t, x, next - t);
    t = next;
  }
  return x;
}

Trajectory simulate(Controller& controller, std::span<const double> x0, const SimulationOptions& options) {
  const BarrierChain& chain = controller.chain();
  const ControlAffineSystem& sys = chain.system();
  const InputSet& inputs = chain.inputs();
  if (!(options.dt > 0.0) || !(options.t_end > 0.0)) throw std::invalid_argument("simulate: need dt > 0 and t_end > 0");
  if (x0.size() != sys.state_dim()) throw std::invalid_argument("simulate: initial state has the wrong dimension");
  if (!sys.state_box().contains(x0)) throw std::invalid_argument("simulate: initial state outside the state box");

  Trajectory traj;
  const int levels = chain.levels();
  std::vector<double> x(x0.begin(), x0.end());
  std::optional<std::vector<double>> last_feasible;
  bool was_unsafe = false;
  bool was_infeasible = false;
  std::vector<bool> was_exited(static_cast<std::size_t>(levels + 1), false);

  auto control_at = [&](std::span<const double> state, double t, bool log) -> std::vector<double> {
    const ControlResult r = controller.compute(state);
    if (r.feasible()) {
      if (log) {
        last_feasible = r.u;
        was_infeasible = false;
      }
      return r.u;
    }
    if (log) {
      if (!was_infeasible) traj.events.push_back({t, EventKind::qp_infeasible, -1});
      was_infeasible = true;
      traj.failed = true;
    }
    return last_feasible ? inputs.project(*last_feasible) : r.u;
  };

  for (long k = 0;; ++k) {
    const double t = std::min(options.t_end, static_cast<double>(k) * options.dt);
    const std::vector<double> u = control_at(x, t, true);

    traj.times.push_back(t);
    traj.states.push_back(x);
    traj.controls.push_back(u);
    traj.h_values.push_back(sys.safety<double>(x));
    traj.level_values.push_back(chain.values(x));

    const double h = traj.h_values.back();
    if (h < 0.0 && !was_unsafe) {
      traj.events.push_back({t, EventKind::safety_violation, -1});
      traj.failed = true;
    }
    was_unsafe = h < 0.0;
    for (int i = 0; i <= levels; ++i) {
      const bool exited = traj.level_values.back()[static_cast<std::size_t>(i)] < -options.eps_num;
      if (exited && !was_exited[static_cast<std::size_t>(i)]) traj.events.push_back({t, EventKind::set_exit, i});
      was_exited[static_cast<std::size_t>(i)] = exited;
    }
    if (options.goal_range) {
      const std::optional<double> dist = sys.goal_distance(x);
      if (dist && *dist <= *options.goal_range) {
        traj.events.push_back({t, EventKind::goal_reached, -1});
        break;
      }
    }
    if (t >= options.t_end) break;

    const double step = std::min(options.t_end, static_cast<double>(k + 1) * options.dt) - t;
    VectorField field;
    if (options.per_stage_control) {
      field = [&](double ts, std::span<const double> xs) {
        const std::vector<double> us = ts == t ? u : control_at(xs, ts, false);
        return sys.vector_field(xs, us);
      };
    } else {
      field = [&](double, std::span<const double> xs) { return sys.vector_field(xs, u); };
    }
    x = rk4_step(field, t, x, step);
    if (blown_up(x, options.blowup_norm)) {
      traj.events.push_back({t + step, EventKind::blowup, -1});
      traj.failed = true;
      break;
    }
  }
  return traj;
}

std::optional<double> braking_onset(const Trajectory& traj, double threshold) {
  for (std::size_t k = 0; k < traj.size(); ++k) {
    if (traj.controls[k].size() != 1) throw std::invalid_argument("braking onset needs a scalar control");
    if (traj.controls[k][0] < threshold) return traj.times[k];
  }
  return std::nullopt;
}

std::optional<double> first_saturation(const Trajectory& traj, const InputSet& inputs, double tol) {
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto& u = traj.controls[k];
    const Eigen::VectorXd slack =
        inputs.b() - inputs.a() * Eigen::Map<const Eigen::VectorXd>(u.data(), static_cast<Eigen::Index>(u.size()));
    if (slack.minCoeff() <= tol) return traj.times[k];
  }
  return std::nullopt;
}

RunSummary summarize(const Trajectory& traj, const InputSet& inputs) {
  RunSummary s;
  s.samples = traj.size();
  s.failed = traj.failed;
  if (traj.size() == 0) return s;
  s.final_time = traj.times.back();
  s.min_h = *std::min_element(traj.h_values.begin(), traj.h_values.end());
  s.min_levels.assign(traj.level_values.front().size(), std::numeric_limits<double>::infinity());
  for (const auto& row : traj.level_values) {
    for (std::size_t i = 0; i < row.size(); ++i) s.min_levels[i] = std::min(s.min_levels[i], row[i]);
  }
  for (const auto& u : traj.controls) s.max_control_norm1 = std::max(s.max_control_norm1, norm1(u));
  if (inputs.dim() == 1) s.braking_onset = braking_onset(traj);
  s.first_saturation = first_saturation(traj, inputs);
  s.first_violation = traj.first_event(EventKind::safety_violation);
  s.goal_time = traj.first_event(EventKind::goal_reached);
  for (const Event& e : traj.events) s.infeasible_events += e.kind == EventKind::qp_infeasible ? 1 : 0;
  return s;
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  const std::size_t n = traj.size() > 0 ? traj.states.front().size() : 0;
  const std::size_t m = traj.size() > 0 ? traj.controls.front().size() : 0;
  const std::size_t levels = traj.size() > 0 ? traj.level_values.front().size() : 0;
  os << "t";
  for (std::size_t i = 1; i <= n; ++i) os << ",x_" << i;
  for (std::size_t j = 1; j <= m; ++j) os << ",u_" << j;
  os << ",h";
  for (std::size_t i = 0; i < levels; ++i) os << ",b_" << i;
  os << "\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    os << format_double(traj.times[k]);
    for (double v : traj.states[k]) os << ',' << format_double(v);
    for (double v : traj.controls[k]) os << ',' << format_double(v);
    os << ',' << format_double(traj.h_values[k]);
    for (double v : traj.level_values[k]) os << ',' << format_double(v);
    os << "\n";
  }
}

void write_events_csv(std::ostream& os, const Trajectory& traj) {
  os << "time,kind\n";
  for (const Event& e : traj.events) os << format_double(e.time) << ',' << e.label() << "\n";
}

void write_summary_csv(std::ostream& os, const RunSummary& s) {
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  os << "key,value\n";
  os << "samples," << s.samples << "\n";
  os << "final_time," << format_double(s.final_time) << "\n";
  os << "min_h," << format_double(s.min_h) << "\n";
  for (std::size_t i = 0; i < s.min_levels.size(); ++i) os << "min_b_" << i << ',' << format_double(s.min_levels[i]) << "\n";
  os << "max_control_norm1," << format_double(s.max_control_norm1) << "\n";
  os << "braking_onset," << opt(s.braking_onset) << "\n";
  os << "first_saturation," << opt(s.first_saturation) << "\n";
  os << "first_violation," << opt(s.first_violation) << "\n";
  os << "goal_time," << opt(s.goal_time) << "\n";
  os << "infeasible_events," << s.infeasible_events << "\n";
  os << "failed," << (s.failed ? "true" : "false") << "\n";
}

}  // namespace iccbf
