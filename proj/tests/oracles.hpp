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

// Independent reference computations used by the unit and acceptance tests.
// None of these share code paths with the library routines they check.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "iccbf/barrier_chain.hpp"
#include "iccbf/qp_solver.hpp"

namespace iccbf::oracle {

/// Accelerated projected gradient on the dual of a strictly convex QP
///   max_{lambda >= 0}  -1/2 (F + C^T lambda)^T H^-1 (F + C^T lambda) - d^T lambda
/// with step 1/L, L = ||C H^-1 C^T||_2, and gradient-based restarts.
/// Returns the primal point z(lambda) = -H^-1 (F + C^T lambda).
inline Eigen::VectorXd dual_projected_gradient(const Eigen::MatrixXd& h, const Eigen::VectorXd& f,
                                               const Eigen::MatrixXd& c, const Eigen::VectorXd& d,
                                               int iterations = 100000) {
  const Eigen::LLT<Eigen::MatrixXd> llt(h);
  if (c.rows() == 0) return llt.solve(-f);
  const Eigen::MatrixXd hinv_ct = llt.solve(c.transpose());
  const Eigen::VectorXd hinv_f = llt.solve(f);
  const Eigen::MatrixXd m = c * hinv_ct;
  const double lipschitz = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues().maxCoeff();
  const double step = 1.0 / std::max(lipschitz, 1e-300);
  // Dual gradient at lambda: C z(lambda) - d = -C H^-1 F - M lambda - d.
  const Eigen::VectorXd offset = -c * hinv_f - d;
  Eigen::VectorXd lam = Eigen::VectorXd::Zero(c.rows());
  Eigen::VectorXd y = lam;
  double t = 1.0;
  for (int k = 0; k < iterations; ++k) {
    const Eigen::VectorXd grad = offset - m * y;
    const Eigen::VectorXd next = (y + step * grad).cwiseMax(0.0);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    if ((y - next).dot(next - lam) > 0.0) {
      y = next;
      t = 1.0;
    } else {
      y = next + ((t - 1.0) / t_next) * (next - lam);
      t = t_next;
    }
    lam = next;
  }
  return -hinv_f - hinv_ct * lam;
}

/// Brute-force infimum over a dense grid of U of c0 + c . u, with `points`
/// samples per input dimension spanning U's bounding box. Points outside U
/// are skipped; for the 1-norm ball the grid is enumerated row by row.
inline double grid_infimum(const InputSet& inputs, double c0, const std::vector<double>& c, int points) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t m = inputs.dim();
  if (inputs.kind() == InputSet::Kind::box) {
    if (m == 1) {
      const double lo = inputs.lower()[0];
      const double hi = inputs.upper()[0];
      for (int k = 0; k < points; ++k) {
        const double u = lo + (hi - lo) * k / (points - 1);
        best = std::min(best, c0 + c[0] * u);
      }
      return best;
    }
    if (m == 2) {
      for (int a = 0; a < points; ++a) {
        const double u0 = inputs.lower()[0] + (inputs.upper()[0] - inputs.lower()[0]) * a / (points - 1);
        for (int b = 0; b < points; ++b) {
          const double u1 = inputs.lower()[1] + (inputs.upper()[1] - inputs.lower()[1]) * b / (points - 1);
          best = std::min(best, c0 + c[0] * u0 + c[1] * u1);
        }
      }
      return best;
    }
  }
  if (inputs.kind() == InputSet::Kind::one_norm_ball && m == 2) {
    const double r = inputs.radius();
    const int half = (points - 1) / 2;
    const double spacing = r / half;
    for (int a = -half; a <= half; ++a) {
      const double u0 = a * spacing;
      const int reach = half - std::abs(a);
      // Row of the ball at u0: u1 in [-reach, reach] * spacing. The affine
      // function is extreme at one end of the row.
      for (int b : {-reach, reach}) {
        const double u1 = b * spacing;
        best = std::min(best, c0 + c[0] * u0 + c[1] * u1);
      }
    }
    return best;
  }
  throw std::invalid_argument("grid_infimum: unsupported input set");
}

/// Central-difference gradient with per-coordinate step `rel * (1 + |x_j|)`.
inline std::vector<double> central_difference(const std::function<double(const std::vector<double>&)>& fn,
                                              const std::vector<double>& x, double rel = 1e-6) {
  std::vector<double> g(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double step = rel * (1.0 + std::abs(x[j]));
    std::vector<double> xp = x;
    std::vector<double> xm = x;
    xp[j] += step;
    xm[j] -= step;
    g[j] = (fn(xp) - fn(xm)) / (2.0 * step);
  }
  return g;
}

/// Next level of the chain recomputed from finite-difference Lie derivatives
/// of the previous level and a grid infimum over U. Used only for spot checks.
inline double chain_level_by_grid(const BarrierChain& chain, int level, const std::vector<double>& x,
                                  int points) {
  const LevelDerivatives d = chain.derivatives(level - 1, x);
  const double c0 = d.lie_drift + chain.alpha(level - 1)(d.value);
  return grid_infimum(chain.inputs(), c0, d.lie_input, points);
}

/// A random strictly convex QP whose constraints hold at a random anchor point.
inline QPProblem random_feasible_qp(std::mt19937_64& rng, int max_dim = 4, int max_rows = 10) {
  std::uniform_int_distribution<int> dim_dist(1, max_dim);
  std::uniform_int_distribution<int> row_dist(0, max_rows);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = dim_dist(rng);
  const int p = row_dist(rng);
  QPProblem qp;
  Eigen::MatrixXd root(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) root(i, j) = normal(rng);
  }
  qp.H = root.transpose() * root + 0.5 * Eigen::MatrixXd::Identity(n, n);
  qp.F.resize(n);
  for (int i = 0; i < n; ++i) qp.F(i) = 3.0 * normal(rng);
  Eigen::VectorXd anchor(n);
  for (int i = 0; i < n; ++i) anchor(i) = normal(rng);
  qp.A.resize(p, n);
  qp.b.resize(p);
  for (int r = 0; r < p; ++r) {
    for (int j = 0; j < n; ++j) qp.A(r, j) = normal(rng);
    qp.b(r) = qp.A.row(r).dot(anchor) + unit(rng);
  }
  return qp;
}

}  // namespace iccbf::oracle
