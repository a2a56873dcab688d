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

// Acceptance suite: one PASS/FAIL line per criterion; exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "iccbf/config.hpp"
#include "oracles.hpp"

namespace iccbf {
namespace {

const std::filesystem::path kConfigDir = ICCBF_CONFIG_DIR;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// 1. Every level b_{i+1} equals a brute-force minimisation over a grid of U
//    with 10001 points per input dimension, at 200 states per model.
Outcome chain_matches_grid_minimisation() {
  const auto start = Clock::now();
  constexpr int kStates = 200;
  constexpr int kPoints = 10001;
  double worst = 0.0;
  std::size_t compared = 0;
  for (const std::string& model : builtin_model_names()) {
    const BarrierChain chain = fixtures::chain_for(model);
    for (const auto& x : fixtures::sample_states(chain, kStates, 2024)) {
      for (int level = 1; level <= chain.levels(); ++level) {
        const double mine = chain.value(level, x);
        const double brute = oracle::chain_level_by_grid(chain, level, x, kPoints);
        worst = std::max(worst, std::abs(mine - brute));
        ++compared;
      }
    }
  }
  const double elapsed = seconds_since(start);
  return {worst <= 1e-6 && elapsed < 60.0 && compared > 0,
          "max |b - grid| = " + fmt(worst) + " over " + std::to_string(compared) + " values, " + fmt(elapsed) + " s"};
}

// 2. On the double integrator the first level reduces to x_2 + alpha_0(x_1).
Outcome hocbf_reduction() {
  const double gain = 1.5;
  const BarrierChain chain = fixtures::double_integrator_chain(gain);
  double worst = 0.0;
  for (const auto& x : fixtures::sample_states(chain, 100, 11)) {
    worst = std::max(worst, std::abs(chain.value(1, x) - (x[1] + gain * x[0])));
  }
  return {worst <= 1e-12, "max deviation = " + fmt(worst)};
}

// 3. x' = x + u, |u| <= 1, h = 2 - x: at x = 2 the best rate of h is
//    -2 + 1 = -1, so {h >= 0} cannot be certified.
Outcome scalar_example_negative() {
  const ScenarioConfig c = load_config(kConfigDir / "scalar-h-only.yaml");
  const auto chain = build_chain(c);
  const double rate = chain->sup_derivative(0, std::vector<double>{2.0});
  const CertificateReport r = certify(*chain, c.verify->build());
  return {rate == -1.0 && !r.is_iccbf && r.gamma < 0.0,
          "sup_u h'(2) = " + fmt(rate) + ", gamma = " + fmt(r.gamma) + ", is_iccbf = " + (r.is_iccbf ? "true" : "false")};
}

// 4. ACC chain with alphas 4h, 7 sqrt(h), 2h is certified with gamma near 2.33.
Outcome acc_certificate() {
  const auto start = Clock::now();
  const ScenarioConfig c = load_config(kConfigDir / "acc-iccbf.yaml");
  VerifyOptions o = c.verify->build();
  const bool settings = o.budget == 100000 && o.starts == 50;
  const CertificateReport r = certify(*build_chain(c), o);
  const double elapsed = seconds_since(start);
  return {settings && r.is_iccbf && r.gamma >= 1.8 && r.gamma <= 2.8 && elapsed < 300.0,
          "gamma = " + fmt(r.gamma) + " at (" + fmt(r.argmin_state[0]) + ", " + fmt(r.argmin_state[1]) + "), " +
              std::to_string(r.samples_used) + " samples + " + std::to_string(o.starts) + " starts, " + fmt(elapsed) +
              " s"};
}

// 5. ACC closed loop: the ICCBF-QP stays safe; the clipped baseline saturates
//    its braking, then violates safety; the ICCBF-QP starts braking first.
Outcome acc_closed_loop() {
  auto run = [](const std::string& name) {
    const ScenarioConfig c = load_config(kConfigDir / name);
    Controller controller(build_chain(c), c.controller.build());
    return simulate(controller, c.sim->x0, c.sim->build());
  };
  const Trajectory iccbf = run("acc-iccbf.yaml");
  const Trajectory baseline = run("acc-baseline.yaml");
  const double min_h = *std::min_element(iccbf.h_values.begin(), iccbf.h_values.end());
  const std::optional<double> violation = baseline.first_event(EventKind::safety_violation);
  std::optional<double> saturation;
  for (std::size_t k = 0; k < baseline.size(); ++k) {
    if (baseline.controls[k][0] <= -0.25 + 1e-12) {
      saturation = baseline.times[k];
      break;
    }
  }
  const std::optional<double> onset_iccbf = braking_onset(iccbf);
  const std::optional<double> onset_baseline = braking_onset(baseline);
  const bool pass = iccbf.times.back() == 40.0 && min_h >= 0.0 && !iccbf.failed && violation && saturation &&
                    *saturation < *violation && onset_iccbf && onset_baseline && *onset_iccbf < *onset_baseline;
  auto opt = [](const std::optional<double>& v) { return v ? fmt(*v) : std::string("none"); };
  return {pass, "iccbf min h = " + fmt(min_h) + ", braking onset iccbf " + opt(onset_iccbf) + " s < baseline " +
                    opt(onset_baseline) + " s, baseline saturates at " + opt(saturation) + " s, violates at " +
                    opt(violation) + " s"};
}

// 6. Rendezvous from (100, -10) m: line of sight kept, thrust within
//    0.25 kN in 1-norm, range <= 3 m before 600 s.
Outcome rendezvous_closed_loop() {
  const auto start = Clock::now();
  const ScenarioConfig c = load_config(kConfigDir / "rendezvous.yaml");
  const auto chain = build_chain(c);
  Controller controller(chain, c.controller.build());
  const Trajectory traj = simulate(controller, c.sim->x0, c.sim->build());
  const double elapsed = seconds_since(start);
  const double min_h = *std::min_element(traj.h_values.begin(), traj.h_values.end());
  double max_kn = 0.0;
  for (const auto& u : traj.controls) max_kn = std::max(max_kn, (std::abs(u[0]) + std::abs(u[1])) / 1000.0);
  const std::optional<double> goal = traj.first_event(EventKind::goal_reached);
  const double range = chain->system().goal_distance(traj.states.back()).value_or(-1.0);
  const bool start_ok = c.sim->x0[0] == 100.0 && c.sim->x0[1] == -10.0 && c.sim->t_end == 600.0;
  return {start_ok && min_h >= 0.0 && max_kn <= 0.25 + 1e-8 && goal && *goal < 600.0 && !traj.failed && elapsed < 120.0,
          "min h = " + fmt(min_h) + ", max |u|_1 = " + fmt(max_kn) + " kN, docking-port range " + fmt(range) + " m at t = " +
              (goal ? fmt(*goal) : std::string("none")) + " s, " + fmt(elapsed) + " s"};
}

// 7. Active-set QP against accelerated dual projected gradient.
Outcome qp_against_oracle() {
  std::mt19937_64 rng(7);
  QPSolver solver;
  double worst_z = 0.0, worst_obj = 0.0, worst_kkt = 0.0;
  int non_optimal = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const QPProblem qp = oracle::random_feasible_qp(rng);
    const QPSolution sol = solver.solve(qp);
    if (sol.status != QPStatus::optimal) {
      ++non_optimal;
      continue;
    }
    const Eigen::VectorXd ref = oracle::dual_projected_gradient(qp.H, qp.F, qp.A, qp.b);
    worst_z = std::max(worst_z, (sol.z - ref).cwiseAbs().maxCoeff());
    worst_obj = std::max(worst_obj, std::abs(sol.objective - qp.objective(ref)));
    worst_kkt = std::max(worst_kkt, sol.kkt_residual);
  }
  return {non_optimal == 0 && worst_z <= 1e-5 && worst_obj <= 1e-7 && worst_kkt <= 1e-8,
          "1000 QPs, max |z - ref| = " + fmt(worst_z) + ", max |obj - ref| = " + fmt(worst_obj) + ", max KKT = " +
              fmt(worst_kkt) + ", non-optimal = " + std::to_string(non_optimal)};
}

// 8. Forward-mode gradient of b_2 on the ACC chain against central differences
//    at 50 states with every level at least 1.
Outcome acc_gradient() {
  const BarrierChain chain = fixtures::acc_chain();
  double worst = 0.0;
  int used = 0;
  for (const auto& x : fixtures::sample_states(chain, 2000, 8)) {
    if (used == 50) break;
    const std::vector<double> b = chain.values(x);
    if (*std::min_element(b.begin(), b.end()) < 1.0) continue;
    ++used;
    const std::vector<double> g = chain.gradient(2, x);
    const std::vector<double> fd =
        oracle::central_difference([&](const std::vector<double>& y) { return chain.value(2, y); }, x);
    double scale = 0.0, err = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      scale = std::max(scale, std::abs(g[j]));
      err = std::max(err, std::abs(g[j] - fd[j]));
    }
    worst = std::max(worst, err / std::max(scale, 1e-12));
  }
  return {used == 50 && worst <= 1e-5, std::to_string(used) + " states, max relative error = " + fmt(worst)};
}

// 9. Nagumo condition on the boundary of C* under the ACC ICCBF-QP.
Outcome acc_nagumo() {
  const ScenarioConfig c = load_config(kConfigDir / "acc-iccbf.yaml");
  const auto chain = build_chain(c);
  Controller controller(chain, c.controller.build());
  const auto samples = sample_inner_boundary(*chain, c.verify->build().domain, 500, c.verify->nagumo_seed);
  const NagumoResult r = nagumo_spotcheck(*chain, controller, samples, 1e-9, -1e-6);
  return {r.checked == 500 && r.violations == 0,
          std::to_string(r.checked) + " samples, " + std::to_string(r.violations) +
              " violations, worst active-level rate = " + fmt(r.worst)};
}

// 10. Halving the step of RK4 on the drift-only rendezvous dynamics cuts the
//     terminal error by at least 12.
Outcome rk4_order() {
  const BarrierChain chain = fixtures::rendezvous_chain();
  const auto& sys = chain.system();
  const VectorField field = [&](double, std::span<const double> x) {
    return sys.vector_field(x, std::vector<double>{0.0, 0.0});
  };
  const std::vector<double> x0{100.0, -10.0, 0.0, 0.0, 0.0};
  const double horizon = 600.0;
  const std::vector<double> ref = integrate(field, x0, horizon, 0.05);
  auto error = [&](double dt) {
    const std::vector<double> x = integrate(field, x0, horizon, dt);
    double e = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) e = std::max(e, std::abs(x[j] - ref[j]));
    return e;
  };
  const double coarse = error(20.0);
  const double fine = error(10.0);
  const double ratio = coarse / fine;
  return {ratio >= 12.0, "error dt=20 s: " + fmt(coarse) + ", dt=10 s: " + fmt(fine) + ", ratio = " + fmt(ratio)};
}

}  // namespace
}  // namespace iccbf

int main() {
  using iccbf::Outcome;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"chain levels match grid minimisation over U", iccbf::chain_matches_grid_minimisation},
      {"HOCBF reduction on the double integrator", iccbf::hocbf_reduction},
      {"scalar example safe set not certifiable", iccbf::scalar_example_negative},
      {"ACC certificate gamma", iccbf::acc_certificate},
      {"ACC closed-loop ordering", iccbf::acc_closed_loop},
      {"rendezvous closed loop", iccbf::rendezvous_closed_loop},
      {"QP solver against dual oracle", iccbf::qp_against_oracle},
      {"ACC b_2 gradient against finite differences", iccbf::acc_gradient},
      {"Nagumo spot-check on the ACC inner set", iccbf::acc_nagumo},
      {"RK4 fourth-order convergence", iccbf::rk4_order},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": " << o.detail
              << std::endl;
  }
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
