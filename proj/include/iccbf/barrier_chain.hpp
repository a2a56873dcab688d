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
#include <stdexcept>
#include <string>
#include <vector>

#include "iccbf/autodiff.hpp"
#include "iccbf/class_kappa.hpp"
#include "iccbf/input_set.hpp"
#include "iccbf/system.hpp"

namespace iccbf {

/// Evaluation of some barrier level failed (domain error inside the model or
/// a class-K function).
class ChainEvaluationError : public std::runtime_error {
 public:
  ChainEvaluationError(int level, const std::string& what)
      : std::runtime_error("barrier level " + std::to_string(level) + ": " + what), level_(level) {}
  int level() const noexcept { return level_; }

 private:
  int level_;
};

/// Value, gradient and Lie derivatives of one barrier level at a state.
struct LevelDerivatives {
  double value = 0.0;
  std::vector<double> gradient;
  double lie_drift = 0.0;              // L_f b_i
  std::vector<double> lie_input;       // L_g b_i (length m)
};

struct Membership {
  std::vector<double> values;          // b_0 ... b_N
  std::vector<bool> levels;            // b_i >= margin
  bool in_inner_set = false;           // conjunction over all levels
};

/// The recursive barrier chain
///
///   b_0 = h,
///   b_{i+1}(x) = inf_{u in U} [ L_f b_i(x) + L_g b_i(x) u + alpha_i(b_i(x)) ],
///
/// for i = 0 ... N-1, together with alpha_N used by the terminal condition.
/// The sets C_i = {b_i >= 0} and their intersection C* follow. Evaluating b_i
/// needs i nested jet levels, its gradient i + 1, so N + 1 may not exceed
/// `kMaxJetDepth`.
///
/// Immutable after construction; all evaluations are pure.
class BarrierChain {
 public:
  /// `alphas` holds alpha_0 ... alpha_N, so N = alphas.size() - 1.
  BarrierChain(std::shared_ptr<const ControlAffineSystem> system, InputSet inputs,
               std::vector<ClassKappa> alphas, double margin = 0.0);

  int levels() const noexcept { return static_cast<int>(alphas_.size()) - 1; }
  const ControlAffineSystem& system() const noexcept { return *system_; }
  const std::shared_ptr<const ControlAffineSystem>& system_ptr() const noexcept { return system_; }
  const InputSet& inputs() const noexcept { return inputs_; }
  const ClassKappa& alpha(int i) const { return alphas_.at(static_cast<std::size_t>(i)); }
  const std::vector<ClassKappa>& alphas() const noexcept { return alphas_; }
  double margin() const noexcept { return margin_; }

  /// b_level(x); b_0 is h(x) exactly.
  double value(int level, std::span<const double> x) const;
  /// b_0(x) ... b_N(x).
  std::vector<double> values(std::span<const double> x) const;
  std::vector<double> gradient(int level, std::span<const double> x) const;
  LevelDerivatives derivatives(int level, std::span<const double> x) const;

  /// b_i'(x, u) = L_f b_i(x) + L_g b_i(x) u.
  double derivative_along(int level, std::span<const double> x, std::span<const double> u) const;
  /// sup over u in U of b_i'(x, u).
  double sup_derivative(int level, std::span<const double> x) const;
  /// sup over u in U of [ b_N'(x, u) + alpha_N(b_N(x)) ]; b_N is an ICCBF when
  /// this is non-negative on all of C*.
  double certificate_value(std::span<const double> x) const;

  Membership membership(std::span<const double> x) const;

  /// b_level evaluated at any jet depth; used to differentiate the chain.
  template <Scalar T>
  T value_t(int level, std::span<const T> x) const;

 private:
  template <Scalar T>
  void affine_terms(int level, std::span<const T> x, T& c0, std::vector<T>& c) const;

  void check_level(int level) const;

  std::shared_ptr<const ControlAffineSystem> system_;
  InputSet inputs_;
  std::vector<ClassKappa> alphas_;
  double margin_;
};

/// max over samples of |b_1(x) - (L_f h(x) + alpha_0(h(x)))|. Requires
/// L_g h = 0 at every sample (relative degree >= 2); throws otherwise.
double hocbf_reduction_check(const BarrierChain& chain,
                             const std::vector<std::vector<double>>& samples);

// ---------------------------------------------------------------------------

template <Scalar T>
T BarrierChain::value_t(int level, std::span<const T> x) const {
  if (level == 0) return system_->safety<T>(x);
  if constexpr (jet_depth_v<T> >= kMaxJetDepth) {
    throw std::logic_error("barrier level " + std::to_string(level) +
                           " exceeds the maximum jet depth at this scalar type");
  } else {
    if (jet_depth_v<T> + level > kMaxJetDepth) {
      throw std::logic_error("barrier level " + std::to_string(level) +
                             " exceeds the maximum jet depth at this scalar type");
    }
    T c0;
    std::vector<T> c;
    affine_terms<T>(level - 1, x, c0, c);
    return inputs_.infimum<T>(c0, std::span<const T>(c));
  }
}

// c0 = L_f b_i + alpha_i(b_i), c = L_g b_i, all at scalar type T.
template <Scalar T>
void BarrierChain::affine_terms(int level, std::span<const T> x, T& c0, std::vector<T>& c) const {
  if constexpr (jet_depth_v<T> >= kMaxJetDepth) {
    throw std::logic_error("barrier derivative exceeds the maximum jet depth");
  } else {
    const std::size_t n = system_->state_dim();
    const std::size_t m = system_->input_dim();
    std::vector<Jet<T>> lifted(x.begin(), x.end());
    std::vector<T> grad(n);
    T value{};
    for (std::size_t j = 0; j < n; ++j) {
      lifted[j].d = T(1.0);
      const Jet<T> r = value_t<Jet<T>>(level, std::span<const Jet<T>>(lifted));
      lifted[j].d = T(0.0);
      grad[j] = r.d;
      if (j == 0) value = r.v;
    }
    const std::vector<T> f = system_->drift<T>(x);
    const Matrix<T> g = system_->input_map<T>(x);
    T lf = grad[0] * f[0];
    for (std::size_t k = 1; k < n; ++k) lf += grad[k] * f[k];
    c.assign(m, T(0.0));
    for (std::size_t jj = 0; jj < m; ++jj) {
      T acc = grad[0] * g(0, jj);
      for (std::size_t k = 1; k < n; ++k) acc += grad[k] * g(k, jj);
      c[jj] = acc;
    }
    c0 = lf + alphas_[static_cast<std::size_t>(level)](value);
  }
}

}  // namespace iccbf
