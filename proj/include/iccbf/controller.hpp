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
#include <span>
#include <string>
#include <vector>

#include "iccbf/barrier_chain.hpp"
#include "iccbf/qp_solver.hpp"

namespace iccbf {

enum class ControllerKind { iccbf_qp, clf_cbf_qp_clipped, iccbf_clf_relaxed };

std::string to_string(ControllerKind kind);
/// Accepts "iccbf-qp", "clf-cbf-qp-clipped" and "iccbf-clf-relaxed".
ControllerKind controller_kind_from_string(const std::string& name);

struct ControllerSpec {
  ControllerKind kind = ControllerKind::iccbf_qp;
  /// lambda in L_f V + L_g V u <= -lambda V (+ delta).
  double clf_rate = 10.0;
  /// Weight of delta: quadratic (w * delta^2) in the clipped baseline,
  /// linear (w * delta) in the relaxed controller.
  double delta_penalty = 0.1;
  /// Linear weight of the gain slack k in the relaxed controller.
  double k_penalty = 50.0;
  /// Gain of the linear class-K function in the baseline's h-row.
  double cbf_gain = 2.0;
  /// The QP decision variable is u / control_scale, so that the printed
  /// costs apply in the unit the objective was written for (e.g. kN).
  double control_scale = 1.0;
};

struct ControlResult {
  std::vector<double> u;                // applied control, always in U
  QPStatus status = QPStatus::optimal;  // infeasible => certificate violated at x
  std::vector<double> desired;          // u_d from the CLF rate equation (empty when unused)
  double delta = 0.0;                   // CLF slack
  double k = 0.0;                       // gain slack of the relaxed controller
  double barrier = 0.0;                 // b_N(x), or h(x) for the baseline
  /// max(0, -(L_f b + L_g b u + alpha(b))) recomputed at the returned u;
  /// for the baseline it is evaluated at the unclipped QP solution.
  double barrier_residual = 0.0;
  bool clipped = false;                 // baseline only: clipping changed u
  double kkt_residual = 0.0;
  std::vector<int> active_set;

  bool feasible() const noexcept { return status == QPStatus::optimal; }
};

/// Pointwise feedback laws built on a barrier chain.
///
/// iccbf-qp:            min 1/2 |u - u_d|^2  s.t.  b_N' + alpha_N(b_N) >= 0, u in U.
/// clf-cbf-qp-clipped:  min 1/2 |u|^2 + w delta^2  s.t. CLF row with slack,
///                      h' >= -cbf_gain h; then u is projected onto U.
/// iccbf-clf-relaxed:   min 1/2 |u|^2 + w_d delta + w_k k  s.t. CLF row with
///                      slack, b_N' >= -(g_N + k) b_N, u in U, delta, k >= 0,
///                      where g_N is the gain of the linear alpha_N.
///
/// Evaluation is deterministic. Each instance owns a QP workspace, so use
/// one instance per thread.
class Controller {
 public:
  Controller(std::shared_ptr<const BarrierChain> chain, ControllerSpec spec);

  const ControllerSpec& spec() const noexcept { return spec_; }
  const BarrierChain& chain() const noexcept { return *chain_; }

  ControlResult compute(std::span<const double> x);

  ControlResult iccbf_qp_control(std::span<const double> x);
  ControlResult clf_cbf_qp_clipped_control(std::span<const double> x);
  ControlResult iccbf_clf_relaxed_control(std::span<const double> x);

  /// Minimum-norm solution of L_f V + L_g V u = -clf_rate V; zero when the
  /// model has no CLF or L_g V vanishes.
  std::vector<double> desired_control(std::span<const double> x) const;

 private:
  struct LieTerms {
    double value = 0.0;
    double drift = 0.0;
    std::vector<double> input;
  };
  LieTerms lyapunov_terms(std::span<const double> x) const;

  std::shared_ptr<const BarrierChain> chain_;
  ControllerSpec spec_;
  QPSolver solver_;
};

}  // namespace iccbf
