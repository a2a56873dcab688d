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

#include "iccbf/controller.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "fixtures.hpp"

namespace iccbf {
namespace {

std::shared_ptr<const BarrierChain> shared(BarrierChain chain) {
  return std::make_shared<const BarrierChain>(std::move(chain));
}

ControllerSpec relaxed_spec() {
  ControllerSpec spec;
  spec.kind = ControllerKind::iccbf_clf_relaxed;
  spec.clf_rate = 0.1;
  spec.delta_penalty = 10.0;
  spec.k_penalty = 50.0;
  spec.control_scale = 1000.0;
  return spec;
}

double norm1(const std::vector<double>& u) {
  double s = 0.0;
  for (double v : u) s += std::abs(v);
  return s;
}

TEST(ControllerKindTest, RoundTripsNames) {
  for (ControllerKind k :
       {ControllerKind::iccbf_qp, ControllerKind::clf_cbf_qp_clipped, ControllerKind::iccbf_clf_relaxed}) {
    EXPECT_EQ(controller_kind_from_string(to_string(k)), k);
  }
  EXPECT_THROW(controller_kind_from_string("lqr"), std::invalid_argument);
}

TEST(ControllerTest, RejectsInvalidSpecs) {
  ControllerSpec spec;
  spec.control_scale = 0.0;
  EXPECT_THROW(Controller(shared(fixtures::acc_chain()), spec), std::invalid_argument);
  spec = ControllerSpec{};
  spec.clf_rate = -1.0;
  EXPECT_THROW(Controller(shared(fixtures::acc_chain()), spec), std::invalid_argument);
}

TEST(ControllerTest, RelaxedControllerNeedsLinearLastAlpha) {
  BuiltinModel m = builtin("acc");
  auto chain = shared(BarrierChain(m.system, m.inputs, {ClassKappa::linear(4.0), ClassKappa::sqrt(7.0)}));
  ControllerSpec spec;
  spec.kind = ControllerKind::iccbf_clf_relaxed;
  EXPECT_THROW(Controller(chain, spec), std::invalid_argument);
}

TEST(ControllerTest, IccbfQpSatisfiesCertificateRowAndInputSet) {
  auto chain = shared(fixtures::acc_chain());
  Controller controller(chain, ControllerSpec{});
  const int n = chain->levels();
  int inside = 0;
  for (const auto& x : fixtures::sample_states(*chain, 400, 17)) {
    if (!chain->membership(x).in_inner_set) continue;
    ++inside;
    const ControlResult r = controller.compute(x);
    ASSERT_TRUE(r.feasible()) << x[0] << ", " << x[1];
    EXPECT_TRUE(chain->inputs().contains(r.u, 1e-9));
    const double row = chain->derivative_along(n, x, r.u) + chain->alpha(n)(chain->value(n, x));
    EXPECT_GE(row, -1e-8 * (1.0 + std::abs(chain->value(n, x))));
    EXPECT_LE(r.barrier_residual, 1e-8);
    EXPECT_LE(r.kkt_residual, 1e-7);
  }
  EXPECT_GT(inside, 50);
}

TEST(ControllerTest, IccbfQpReturnsDesiredControlWhenUnconstrained) {
  auto chain = shared(fixtures::acc_chain());
  Controller controller(chain, ControllerSpec{});
  // Large gap at the target speed: the CLF already holds with u_d.
  const std::vector<double> x{190.0, 13.0};
  const ControlResult r = controller.compute(x);
  ASSERT_TRUE(r.feasible());
  ASSERT_EQ(r.desired.size(), 1u);
  if (chain->inputs().contains(r.desired, 0.0)) {
    EXPECT_NEAR(r.u[0], r.desired[0], 1e-12);
  }
}

TEST(ControllerTest, EvaluationIsDeterministic) {
  auto chain = shared(fixtures::acc_chain());
  Controller a(chain, ControllerSpec{});
  Controller b(chain, ControllerSpec{});
  for (const auto& x : fixtures::sample_states(*chain, 50, 3)) {
    const ControlResult ra1 = a.compute(x);
    const ControlResult ra2 = a.compute(x);
    const ControlResult rb = b.compute(x);
    EXPECT_EQ(ra1.u, ra2.u);
    EXPECT_EQ(ra1.u, rb.u);
    EXPECT_EQ(ra1.status, rb.status);
  }
}

TEST(ControllerTest, IccbfQpReportsInfeasibleOutsideTheCertifiedSet) {
  auto chain = shared(fixtures::scalar_chain(3.0));
  Controller controller(chain, ControllerSpec{});
  // With gain 3 the certificate fails on the boundary of C_1.
  const double edge = (2.0 * 3.0 - 1.0) / 4.0;
  const ControlResult r = controller.compute(std::vector<double>{edge});
  EXPECT_FALSE(r.feasible());
  EXPECT_TRUE(chain->inputs().contains(r.u, 0.0));
}

TEST(ControllerTest, BaselineClipsHardBrakingToTheInputBound) {
  auto chain = shared(fixtures::acc_chain());
  ControllerSpec spec;
  spec.kind = ControllerKind::clf_cbf_qp_clipped;
  Controller controller(chain, spec);
  const ControlResult r = controller.compute(std::vector<double>{40.0, 30.0});
  ASSERT_TRUE(r.feasible());
  EXPECT_TRUE(r.clipped);
  EXPECT_EQ(r.u[0], -0.25);
}

TEST(ControllerTest, BaselineLeavesInteriorControlUnclipped) {
  auto chain = shared(fixtures::acc_chain());
  ControllerSpec spec;
  spec.kind = ControllerKind::clf_cbf_qp_clipped;
  Controller controller(chain, spec);
  const ControlResult r = controller.compute(std::vector<double>{150.0, 23.9});
  ASSERT_TRUE(r.feasible());
  EXPECT_FALSE(r.clipped);
  EXPECT_LT(std::abs(r.u[0]), 0.25);
  EXPECT_GE(r.delta, 0.0);
}

TEST(ControllerTest, RelaxedControllerRespectsThrustBoundAndSlackSigns) {
  auto chain = shared(fixtures::rendezvous_chain());
  Controller controller(chain, relaxed_spec());
  const int n = chain->levels();
  int checked = 0;
  for (const auto& x : fixtures::sample_states(*chain, 300, 5)) {
    if (!chain->membership(x).in_inner_set) continue;
    const ControlResult r = controller.compute(x);
    if (!r.feasible()) continue;
    ++checked;
    EXPECT_LE(norm1(r.u), 250.0 + 1e-6);
    EXPECT_GE(r.delta, -1e-9);
    EXPECT_GE(r.k, -1e-9);
    const double b = chain->value(n, x);
    const double gain = chain->alpha(n)(1.0);
    const double rate = chain->derivative_along(n, x, r.u);
    EXPECT_GE(rate + (gain + r.k) * b, -1e-6 * (1.0 + std::abs(b)));
    // A positive gain slack is only paid for when the barrier row binds.
    if (r.k > 1e-7) {
      EXPECT_NEAR(rate + (gain + r.k) * b, 0.0, 1e-5 * (1.0 + std::abs(rate)));
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(ControllerTest, RelaxedControllerUsesNoGainSlackDeepInside) {
  auto chain = shared(fixtures::rendezvous_chain());
  Controller controller(chain, relaxed_spec());
  // On the docking axis at rest: the barrier levels are far from zero.
  const std::vector<double> x{60.0, 0.0, 0.0, 0.0, 0.0};
  ASSERT_TRUE(chain->membership(x).in_inner_set);
  const ControlResult r = controller.compute(x);
  ASSERT_TRUE(r.feasible());
  EXPECT_NEAR(r.k, 0.0, 1e-9);
}

TEST(ControllerTest, DesiredControlSolvesTheClfRateEquation) {
  auto chain = shared(fixtures::acc_chain());
  Controller controller(chain, ControllerSpec{});
  const std::vector<double> x{100.0, 20.0};
  const std::vector<double> ud = controller.desired_control(x);
  // V = (v - 24)^2, so V' = 2 (v - 24) v'.
  const auto& sys = chain->system();
  const std::vector<double> xdot = sys.vector_field(x, ud);
  const double vdot = 2.0 * (x[1] - 24.0) * xdot[1];
  EXPECT_NEAR(vdot, -10.0 * (x[1] - 24.0) * (x[1] - 24.0), 1e-9);
}

}  // namespace
}  // namespace iccbf
