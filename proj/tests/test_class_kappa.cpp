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

#include "iccbf/class_kappa.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "iccbf/autodiff.hpp"

namespace iccbf {
namespace {

TEST(ClassKappa, ZeroAtOriginAndOddExtension) {
  for (const ClassKappa& a : {ClassKappa::linear(4.0), ClassKappa::sqrt(7.0), ClassKappa::power(2.0, 3.0)}) {
    EXPECT_EQ(a(0.0), 0.0) << a.describe();
    for (double s : {0.01, 0.5, 3.0, 100.0}) {
      EXPECT_EQ(a(-s), -a(s)) << a.describe();
      EXPECT_LT(a(s), a(s * 1.01)) << a.describe();
    }
  }
}

TEST(ClassKappa, Values) {
  EXPECT_EQ(ClassKappa::linear(4.0)(2.5), 10.0);
  EXPECT_DOUBLE_EQ(ClassKappa::sqrt(7.0)(4.0), 14.0);
  EXPECT_DOUBLE_EQ(ClassKappa::sqrt(7.0)(-4.0), -14.0);
  EXPECT_DOUBLE_EQ(ClassKappa::power(2.0, 3.0)(-2.0), -16.0);
}

TEST(ClassKappa, JetDerivativesMatchAnalyticForms) {
  const ClassKappa a = ClassKappa::sqrt(7.0);
  const JetN<2> s = seed_variable<2>(4.0);
  const JetN<2> y = a(s);
  EXPECT_DOUBLE_EQ(nth_derivative<1>(y), 7.0 * 0.5 / 2.0);
  EXPECT_DOUBLE_EQ(nth_derivative<2>(y), -7.0 * 0.25 / 8.0);
  const JetN<2> sn = seed_variable<2>(-4.0);
  const JetN<2> yn = a(sn);
  EXPECT_DOUBLE_EQ(nth_derivative<1>(yn), 7.0 * 0.5 / 2.0);
  EXPECT_DOUBLE_EQ(nth_derivative<2>(yn), 7.0 * 0.25 / 8.0);
  const ClassKappa cube = ClassKappa::power(1.0, 3.0);
  const JetN<3> c = cube(seed_variable<3>(-2.0));
  EXPECT_DOUBLE_EQ(nth_derivative<1>(c), 12.0);
  EXPECT_DOUBLE_EQ(nth_derivative<2>(c), -12.0);
  EXPECT_DOUBLE_EQ(nth_derivative<3>(c), 6.0);
}

TEST(ClassKappa, SqrtDerivativeCappedAtZero) {
  const ClassKappa a = ClassKappa::sqrt(7.0, 1e6);
  const Jet<double> y = a(Jet<double>{0.0, 1.0});
  EXPECT_EQ(y.v, 0.0);
  EXPECT_EQ(y.d, 1e6);
  EXPECT_EQ(a.derivative(1e-30, 1), 1e6);
}

TEST(ClassKappa, CustomOracle) {
  const ClassKappa a = ClassKappa::custom("tanh", [](double s, int order) {
    const double t = std::tanh(s);
    if (order == 0) return t;
    if (order == 1) return 1.0 - t * t;
    if (order == 2) return -2.0 * t * (1.0 - t * t);
    throw std::domain_error("order too high");
  });
  const JetN<2> y = a(seed_variable<2>(0.3));
  EXPECT_DOUBLE_EQ(nth_derivative<0>(y), std::tanh(0.3));
  EXPECT_DOUBLE_EQ(nth_derivative<2>(y), -2.0 * std::tanh(0.3) * (1.0 - std::pow(std::tanh(0.3), 2)));
  EXPECT_THROW(a.with_gain(2.0), std::logic_error);
}

TEST(ClassKappa, RejectsBadParameters) {
  EXPECT_THROW(ClassKappa::linear(0.0), std::invalid_argument);
  EXPECT_THROW(ClassKappa::sqrt(-1.0), std::invalid_argument);
  EXPECT_THROW(ClassKappa::power(1.0, 0.0), std::invalid_argument);
  EXPECT_EQ(ClassKappa::linear(1.0).with_gain(3.0)(1.0), 3.0);
}

}  // namespace
}  // namespace iccbf
