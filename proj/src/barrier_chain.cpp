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

#include "iccbf/barrier_chain.hpp"

#include <algorithm>
#include <cmath>

namespace iccbf {

BarrierChain::BarrierChain(std::shared_ptr<const ControlAffineSystem> system, InputSet inputs,
                           std::vector<ClassKappa> alphas, double margin)
    : system_(std::move(system)), inputs_(std::move(inputs)), alphas_(std::move(alphas)), margin_(margin) {
  if (!system_) throw std::invalid_argument("barrier chain needs a system");
  if (alphas_.empty()) throw std::invalid_argument("barrier chain needs at least alpha_0");
  if (inputs_.dim() != system_->input_dim()) {
    throw std::invalid_argument("input set dimension does not match the system input dimension");
  }
  if (levels() + 1 > kMaxJetDepth) {
    throw std::invalid_argument("chain with N = " + std::to_string(levels()) +
                                " needs jet depth " + std::to_string(levels() + 1) +
                                " but the maximum is " + std::to_string(kMaxJetDepth));
  }
  if (!std::isfinite(margin_) || margin_ < 0.0) throw std::invalid_argument("membership margin must be >= 0");
}

void BarrierChain::check_level(int level) const {
  if (level < 0 || level > levels()) {
    throw std::out_of_range("barrier level " + std::to_string(level) + " outside 0.." +
                            std::to_string(levels()));
  }
}

double BarrierChain::value(int level, std::span<const double> x) const {
  check_level(level);
  try {
    return value_t<double>(level, x);
  } catch (const DomainError& e) {
    throw ChainEvaluationError(level, e.what());
  }
}

std::vector<double> BarrierChain::values(std::span<const double> x) const {
  std::vector<double> out(static_cast<std::size_t>(levels() + 1));
  for (int i = 0; i <= levels(); ++i) out[static_cast<std::size_t>(i)] = value(i, x);
  return out;
}

std::vector<double> BarrierChain::gradient(int level, std::span<const double> x) const {
  check_level(level);
  try {
    return iccbf::gradient<double>(
        [&](std::span<const Jet<double>> xj) { return value_t<Jet<double>>(level, xj); }, x);
  } catch (const EvaluationError& e) {
    throw ChainEvaluationError(level, e.what());
  }
}

LevelDerivatives BarrierChain::derivatives(int level, std::span<const double> x) const {
  check_level(level);
  LevelDerivatives out;
  const std::size_t n = system_->state_dim();
  const std::size_t m = system_->input_dim();
  try {
    std::vector<Jet<double>> lifted(x.begin(), x.end());
    out.gradient.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      lifted[j].d = 1.0;
      const Jet<double> r = value_t<Jet<double>>(level, std::span<const Jet<double>>(lifted));
      lifted[j].d = 0.0;
      out.gradient[j] = r.d;
      if (j == 0) out.value = r.v;
    }
  } catch (const DomainError& e) {
    throw ChainEvaluationError(level, e.what());
  }
  const std::vector<double> f = system_->drift<double>(x);
  const Matrix<double> g = system_->input_map<double>(x);
  out.lie_drift = 0.0;
  for (std::size_t k = 0; k < n; ++k) out.lie_drift += out.gradient[k] * f[k];
  out.lie_input.assign(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < n; ++k) out.lie_input[j] += out.gradient[k] * g(k, j);
  }
  return out;
}

double BarrierChain::derivative_along(int level, std::span<const double> x,
                                      std::span<const double> u) const {
  const LevelDerivatives d = derivatives(level, x);
  if (u.size() != d.lie_input.size()) throw std::invalid_argument("derivative_along: input dimension mismatch");
  double out = d.lie_drift;
  for (std::size_t j = 0; j < u.size(); ++j) out += d.lie_input[j] * u[j];
  return out;
}

double BarrierChain::sup_derivative(int level, std::span<const double> x) const {
  const LevelDerivatives d = derivatives(level, x);
  return inputs_.supremum<double>(d.lie_drift, std::span<const double>(d.lie_input));
}

double BarrierChain::certificate_value(std::span<const double> x) const {
  const int n = levels();
  const LevelDerivatives d = derivatives(n, x);
  const double c0 = d.lie_drift + alphas_[static_cast<std::size_t>(n)](d.value);
  return inputs_.supremum<double>(c0, std::span<const double>(d.lie_input));
}

Membership BarrierChain::membership(std::span<const double> x) const {
  Membership out;
  out.values = values(x);
  out.levels.resize(out.values.size());
  out.in_inner_set = true;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.levels[i] = out.values[i] >= margin_;
    out.in_inner_set = out.in_inner_set && out.levels[i];
  }
  return out;
}

double hocbf_reduction_check(const BarrierChain& chain, const std::vector<std::vector<double>>& samples) {
  if (chain.levels() < 1) throw std::invalid_argument("HOCBF reduction needs a chain with N >= 1");
  double worst = 0.0;
  for (const auto& x : samples) {
    const LevelDerivatives d0 = chain.derivatives(0, x);
    for (double lg : d0.lie_input) {
      if (lg != 0.0) {
        throw std::invalid_argument("HOCBF reduction requires L_g h = 0, found " + std::to_string(lg) +
                                    " for model " + chain.system().name());
      }
    }
    const double reduced = d0.lie_drift + chain.alpha(0)(d0.value);
    worst = std::max(worst, std::abs(chain.value(1, x) - reduced));
  }
  return worst;
}

}  // namespace iccbf
