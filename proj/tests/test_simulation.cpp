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

#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <sstream>

#include "fixtures.hpp"

namespace iccbf {
namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

TEST(Rk4Test, ExponentialDecay) {
  const VectorField field = [](double, std::span<const double> x) { return std::vector<double>{-x[0]}; };
  const std::vector<double> x = integrate(field, std::vector<double>{1.0}, 1.0, 1e-3);
  EXPECT_NEAR(x[0], std::exp(-1.0), 1e-9);
}

TEST(Rk4Test, ShortLastStepLandsOnTheEndTime) {
  const VectorField field = [](double, std::span<const double>) { return std::vector<double>{1.0}; };
  const std::vector<double> x = integrate(field, std::vector<double>{0.0}, 1.05, 0.1);
  EXPECT_NEAR(x[0], 1.05, 1e-12);
}

TEST(Rk4Test, TimeDependentFieldIsExactForCubics) {
  // x' = 3 t^2 integrates exactly under Simpson weights.
  const VectorField field = [](double t, std::span<const double>) { return std::vector<double>{3.0 * t * t}; };
  const std::vector<double> x = integrate(field, std::vector<double>{0.0}, 2.0, 0.5);
  EXPECT_NEAR(x[0], 8.0, 1e-12);
}

TEST(Rk4Test, ZeroFieldKeepsTheStateBitwise) {
  const VectorField field = [](double, std::span<const double> x) { return std::vector<double>(x.size(), 0.0); };
  const std::vector<double> x0{0.1, -3.7e-5, 12345.678};
  EXPECT_EQ(integrate(field, x0, 10.0, 0.01), x0);
}

TEST(Rk4Test, FourthOrderOnRendezvousDrift) {
  const BarrierChain chain = fixtures::rendezvous_chain();
  const auto& sys = chain.system();
  const VectorField field = [&](double, std::span<const double> x) {
    return sys.vector_field(x, std::vector<double>{0.0, 0.0});
  };
  const std::vector<double> x0{100.0, -10.0, 0.5, -0.2, 0.0};
  const std::vector<double> reference = integrate(field, x0, 10.0, 1e-3);
  const double coarse = max_abs_diff(integrate(field, x0, 10.0, 5.0), reference);
  const double fine = max_abs_diff(integrate(field, x0, 10.0, 2.5), reference);
  ASSERT_GT(fine, 0.0);
  EXPECT_GE(coarse / fine, 12.0);
}

TEST(Rk4Test, RejectsBadStepSizes) {
  const VectorField field = [](double, std::span<const double> x) { return std::vector<double>(x.size(), 0.0); };
  EXPECT_THROW(integrate(field, std::vector<double>{0.0}, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(integrate(field, std::vector<double>{0.0}, -1.0, 0.1), std::invalid_argument);
}

class AccSimulationTest : public ::testing::Test {
 protected:
  std::shared_ptr<const BarrierChain> chain = std::make_shared<const BarrierChain>(fixtures::acc_chain());
};

TEST_F(AccSimulationTest, IccbfRunStaysSafe) {
  Controller controller(chain, ControllerSpec{});
  SimulationOptions o;
  o.t_end = 20.0;
  const Trajectory traj = simulate(controller, std::vector<double>{100.0, 20.0}, o);
  EXPECT_FALSE(traj.failed);
  EXPECT_EQ(traj.size(), 2001u);
  EXPECT_DOUBLE_EQ(traj.times.back(), 20.0);
  EXPECT_FALSE(traj.has_event(EventKind::safety_violation));
  for (double h : traj.h_values) EXPECT_GE(h, 0.0);
  for (const auto& u : traj.controls) EXPECT_TRUE(chain->inputs().contains(u, 1e-9));
}

TEST_F(AccSimulationTest, BaselineRunLogsViolationOnce) {
  ControllerSpec spec;
  spec.kind = ControllerKind::clf_cbf_qp_clipped;
  Controller controller(chain, spec);
  const Trajectory traj = simulate(controller, std::vector<double>{100.0, 20.0}, SimulationOptions{});
  EXPECT_TRUE(traj.failed);
  int violations = 0;
  for (const Event& e : traj.events) violations += e.kind == EventKind::safety_violation ? 1 : 0;
  EXPECT_EQ(violations, 1);
  const std::optional<double> t = traj.first_event(EventKind::safety_violation);
  ASSERT_TRUE(t.has_value());
  const std::size_t k = static_cast<std::size_t>(std::llround(*t / 0.01));
  EXPECT_LT(traj.h_values[k], 0.0);
  EXPECT_GE(traj.h_values[k - 1], 0.0);
}

TEST_F(AccSimulationTest, PerStageControlStaysClose) {
  Controller controller(chain, ControllerSpec{});
  SimulationOptions hold;
  hold.t_end = 5.0;
  SimulationOptions stage = hold;
  stage.per_stage_control = true;
  const Trajectory a = simulate(controller, std::vector<double>{100.0, 20.0}, hold);
  const Trajectory b = simulate(controller, std::vector<double>{100.0, 20.0}, stage);
  ASSERT_EQ(a.size(), b.size());
  EXPECT_LT(max_abs_diff(a.states.back(), b.states.back()), 1e-2);
}

TEST_F(AccSimulationTest, RejectsInitialStateOutsideTheBox) {
  Controller controller(chain, ControllerSpec{});
  EXPECT_THROW(simulate(controller, std::vector<double>{100.0, 40.0}, SimulationOptions{}), std::invalid_argument);
  EXPECT_THROW(simulate(controller, std::vector<double>{100.0}, SimulationOptions{}), std::invalid_argument);
}

TEST(TrajectoryTest, BrakingOnsetAndSaturation) {
  Trajectory t;
  t.times = {0.0, 0.1, 0.2, 0.3};
  t.controls = {{0.1}, {0.0}, {-0.1}, {-0.25}};
  EXPECT_EQ(braking_onset(t), std::optional<double>(0.2));
  EXPECT_EQ(braking_onset(t, -0.2), std::optional<double>(0.3));
  EXPECT_FALSE(braking_onset(t, -1.0).has_value());
  const InputSet u = InputSet::box({-0.25}, {0.25});
  EXPECT_EQ(first_saturation(t, u), std::optional<double>(0.3));
  t.controls[1] = {0.0, 1.0};
  EXPECT_THROW(braking_onset(t), std::invalid_argument);
}

TEST(TrajectoryTest, CsvWritersEmitHeadersAndRows) {
  Trajectory t;
  t.times = {0.0, 0.5};
  t.states = {{1.0, 2.0}, {1.5, 2.5}};
  t.controls = {{0.1}, {-0.1}};
  t.h_values = {3.0, 2.0};
  t.level_values = {{3.0, 1.0}, {2.0, 0.5}};
  t.events = {{0.5, EventKind::set_exit, 1}};
  std::ostringstream traj;
  write_trajectory_csv(traj, t);
  EXPECT_EQ(traj.str(), "t,x_1,x_2,u_1,h,b_0,b_1\n0,1,2,0.1,3,3,1\n0.5,1.5,2.5,-0.1,2,2,0.5\n");
  std::ostringstream events;
  write_events_csv(events, t);
  EXPECT_EQ(events.str(), "time,kind\n0.5,set-exit-level-1\n");
  std::ostringstream summary;
  write_summary_csv(summary, summarize(t, InputSet::box({-0.25}, {0.25})));
  EXPECT_NE(summary.str().find("min_h,2\n"), std::string::npos);
  EXPECT_NE(summary.str().find("braking_onset,0.5\n"), std::string::npos);
}

TEST(FormatTest, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-2.5e-12), "-2.5e-12");
  EXPECT_EQ(std::stod(format_double(M_PI)), M_PI);
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
}

}  // namespace
}  // namespace iccbf
