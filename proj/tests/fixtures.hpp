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

// Chains and sampling helpers shared by the unit and acceptance tests.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "iccbf/barrier_chain.hpp"
#include "iccbf/models.hpp"

namespace iccbf::fixtures {

inline BarrierChain acc_chain(const ParameterMap& overrides = {}) {
  BuiltinModel m = builtin("acc", overrides);
  return BarrierChain(m.system, m.inputs,
                      {ClassKappa::linear(4.0), ClassKappa::sqrt(7.0), ClassKappa::linear(2.0)});
}

inline BarrierChain rendezvous_chain() {
  BuiltinModel m = builtin("rendezvous");
  return BarrierChain(m.system, m.inputs,
                      {ClassKappa::linear(0.25), ClassKappa::linear(0.85), ClassKappa::linear(0.05)});
}

inline BarrierChain scalar_chain(double gain = 1.0) {
  BuiltinModel m = builtin("scalar-example");
  return BarrierChain(m.system, m.inputs, {ClassKappa::linear(gain), ClassKappa::linear(gain)});
}

inline BarrierChain double_integrator_chain(double gain = 1.0) {
  BuiltinModel m = builtin("double-integrator");
  return BarrierChain(m.system, m.inputs, {ClassKappa::linear(gain), ClassKappa::linear(gain)});
}

inline BarrierChain chain_for(const std::string& model) {
  if (model == "acc") return acc_chain();
  if (model == "rendezvous") return rendezvous_chain();
  if (model == "scalar-example") return scalar_chain();
  return double_integrator_chain();
}

/// Uniform samples of the model's state box; for ACC the speed is limited to
/// the verification range [0, speed_limit].
inline std::vector<std::vector<double>> sample_states(const BarrierChain& chain, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  StateBox box = chain.system().state_box();
  if (chain.system().name() == "acc") box.upper[1] = chain.system().param("speed_limit");
  std::vector<std::vector<double>> out;
  for (int k = 0; k < count; ++k) {
    std::vector<double> x(box.dim());
    for (std::size_t j = 0; j < x.size(); ++j) {
      x[j] = std::uniform_real_distribution<double>(box.lower[j], box.upper[j])(rng);
    }
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace iccbf::fixtures
