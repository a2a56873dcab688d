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

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace iccbf {

/// minimize  1/2 z^T H z + F^T z
/// subject to  A z <= b,  lower <= z <= upper.
///
/// `lower` / `upper` may be empty (no bounds) or hold one entry per variable;
/// infinite entries are ignored.
struct QPProblem {
  Eigen::MatrixXd H;
  Eigen::VectorXd F;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  Eigen::Index num_variables() const { return F.size(); }
  double objective(const Eigen::VectorXd& z) const { return 0.5 * z.dot(H * z) + F.dot(z); }
};

enum class QPStatus { optimal, infeasible, max_iterations };

std::string to_string(QPStatus status);

/// Constraint rows are stacked as: the p rows of A, then one upper-bound row
/// per variable (index p + j), then one lower-bound row per variable
/// (index p + n + j). Bound rows exist only when bounds are given.
struct QPSolution {
  Eigen::VectorXd z;
  QPStatus status = QPStatus::infeasible;
  double objective = 0.0;
  double kkt_residual = 0.0;
  std::vector<int> active_set;      // stacked row indices, ascending
  Eigen::VectorXd multipliers;      // one per stacked row, >= 0
  Eigen::VectorXd farkas;           // infeasible only: y >= 0, y^T C ~ 0, y^T d < 0
  int iterations = 0;
  bool regularized = false;
};

struct KktResiduals {
  double primal = 0.0;           // max constraint violation
  double stationarity = 0.0;     // |H z + F + C^T lambda|_inf
  double complementarity = 0.0;  // max |lambda_i s_i|
  double dual = 0.0;             // max(-lambda_i, 0)

  double max() const;
};

/// Stacked constraint form C z <= d of a problem (see QPSolution).
void stack_constraints(const QPProblem& problem, Eigen::MatrixXd& c, Eigen::VectorXd& d);

KktResiduals kkt_residuals(const QPProblem& problem, const Eigen::VectorXd& z,
                           const Eigen::VectorXd& multipliers);

/// Dense primal active-set solver for small convex QPs.
///
/// A feasible start comes from the unconstrained minimiser, the origin, or a
/// phase-1 problem minimising the largest violation. Steps solve the
/// equality-constrained subproblem on the working set in null-space form,
/// refactorising the reduced Hessian (Cholesky) after each working-set
/// change. Ties are broken towards the lowest constraint index. A
/// semidefinite H is regularised by `regularization * I`.
///
/// Holds scratch workspace: use one instance per thread.
class QPSolver {
 public:
  struct Options {
    int max_iterations = 200;
    double regularization = 1e-9;
    double feasibility_tol = 1e-9;
  };

  QPSolver() = default;
  explicit QPSolver(Options options) : options_(options) {}

  QPSolution solve(const QPProblem& problem);

 private:
  enum class Outcome { optimal, max_iterations };

  Outcome active_set(const Eigen::MatrixXd& h, const Eigen::VectorXd& f, const Eigen::MatrixXd& c,
                     const Eigen::VectorXd& d, Eigen::VectorXd& z, std::vector<int>& working,
                     Eigen::VectorXd& lambda, int& iterations);

  Options options_;
  // Workspace reused across solves.
  Eigen::MatrixXd cw_;
  Eigen::MatrixXd basis_;
  Eigen::MatrixXd reduced_;
};

}  // namespace iccbf
