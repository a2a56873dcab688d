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

#include "iccbf/qp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace iccbf {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Phase-1 proximal weight; small enough that it never trades feasibility
// for a shorter point.
constexpr double kPhaseOneWeight = 1e-12;

double max_violation(const Eigen::MatrixXd& c, const Eigen::VectorXd& d, const Eigen::VectorXd& z) {
  double worst = -kInf;
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    if (!std::isfinite(d(i))) continue;
    worst = std::max(worst, c.row(i).dot(z) - d(i));
  }
  return worst;
}

}  // namespace

std::string to_string(QPStatus status) {
  switch (status) {
    case QPStatus::optimal:
      return "optimal";
    case QPStatus::infeasible:
      return "infeasible";
    case QPStatus::max_iterations:
      return "max-iterations";
  }
  return "unknown";
}

double KktResiduals::max() const { return std::max({primal, stationarity, complementarity, dual}); }

void stack_constraints(const QPProblem& problem, Eigen::MatrixXd& c, Eigen::VectorXd& d) {
  const Eigen::Index n = problem.num_variables();
  const Eigen::Index p = problem.A.rows();
  const bool has_upper = problem.upper.size() > 0;
  const bool has_lower = problem.lower.size() > 0;
  const Eigen::Index rows = p + (has_upper ? n : 0) + (has_lower ? n : 0);
  c = Eigen::MatrixXd::Zero(rows, n);
  d = Eigen::VectorXd::Constant(rows, kInf);
  if (p > 0) {
    c.topRows(p) = problem.A;
    d.head(p) = problem.b;
  }
  Eigen::Index r = p;
  if (has_upper) {
    for (Eigen::Index j = 0; j < n; ++j, ++r) {
      c(r, j) = 1.0;
      d(r) = problem.upper(j);
    }
  }
  if (has_lower) {
    for (Eigen::Index j = 0; j < n; ++j, ++r) {
      c(r, j) = -1.0;
      d(r) = -problem.lower(j);
    }
  }
}

KktResiduals kkt_residuals(const QPProblem& problem, const Eigen::VectorXd& z,
                           const Eigen::VectorXd& multipliers) {
  Eigen::MatrixXd c;
  Eigen::VectorXd d;
  stack_constraints(problem, c, d);
  KktResiduals r;
  Eigen::VectorXd grad = problem.H * z + problem.F;
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    const double lam = i < multipliers.size() ? multipliers(i) : 0.0;
    if (!std::isfinite(d(i))) continue;
    const double slack = d(i) - c.row(i).dot(z);
    r.primal = std::max(r.primal, -slack);
    r.complementarity = std::max(r.complementarity, std::abs(lam * slack));
    r.dual = std::max(r.dual, -lam);
    grad += lam * c.row(i).transpose();
  }
  r.stationarity = grad.size() > 0 ? grad.cwiseAbs().maxCoeff() : 0.0;
  return r;
}

QPSolver::Outcome QPSolver::active_set(const Eigen::MatrixXd& h, const Eigen::VectorXd& f,
                                       const Eigen::MatrixXd& c, const Eigen::VectorXd& d,
                                       Eigen::VectorXd& z, std::vector<int>& working,
                                       Eigen::VectorXd& lambda, int& iterations) {
  const Eigen::Index n = z.size();
  lambda = Eigen::VectorXd::Zero(c.rows());
  bool stationary = false;
  Eigen::MatrixXd y;
  Eigen::MatrixXd r;
  for (; iterations < options_.max_iterations; ++iterations) {
    const Eigen::Index q = static_cast<Eigen::Index>(working.size());
    const Eigen::VectorXd g = h * z + f;

    // Null-space basis of the working rows.
    if (q == 0) {
      basis_ = Eigen::MatrixXd::Identity(n, n);
    } else {
      cw_.resize(q, n);
      for (Eigen::Index k = 0; k < q; ++k) cw_.row(k) = c.row(working[static_cast<std::size_t>(k)]);
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(cw_.transpose());
      const Eigen::MatrixXd full_q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
      y = full_q.leftCols(q);
      basis_ = full_q.rightCols(n - q);
      r = qr.matrixQR().topLeftCorner(q, q).triangularView<Eigen::Upper>();
    }

    if (!stationary) {
      Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
      if (n - q > 0) {
        reduced_ = basis_.transpose() * h * basis_;
        Eigen::LLT<Eigen::MatrixXd> llt(reduced_);
        if (llt.info() != Eigen::Success) throw std::runtime_error("QP reduced Hessian is not positive definite");
        p = -basis_ * llt.solve(basis_.transpose() * g);
      }
      const double scale = std::max(1.0, z.cwiseAbs().maxCoeff());
      if (p.cwiseAbs().maxCoeff() <= 1e-14 * scale) {
        stationary = true;
        continue;
      }
      double alpha = 1.0;
      int blocking = -1;
      const double pnorm = p.norm();
      for (Eigen::Index i = 0; i < c.rows(); ++i) {
        if (!std::isfinite(d(i))) continue;
        if (std::find(working.begin(), working.end(), static_cast<int>(i)) != working.end()) continue;
        const double cp = c.row(i).dot(p);
        if (cp <= 1e-12 * c.row(i).norm() * pnorm) continue;
        const double step = std::max(0.0, (d(i) - c.row(i).dot(z)) / cp);
        if (step < alpha) {
          alpha = step;
          blocking = static_cast<int>(i);
        }
      }
      z += alpha * p;
      if (blocking >= 0) {
        working.push_back(blocking);
        stationary = false;
      } else {
        stationary = true;
      }
      continue;
    }

    // At the minimiser over the current face: check the multipliers.
    lambda.setZero();
    if (q == 0) return Outcome::optimal;
    const Eigen::VectorXd lam_w = r.triangularView<Eigen::Upper>().solve(-(y.transpose() * g));
    int leave = -1;
    double most_negative = -1e-10 * std::max(1.0, lam_w.cwiseAbs().maxCoeff());
    for (Eigen::Index k = 0; k < q; ++k) {
      const int row = working[static_cast<std::size_t>(k)];
      if (lam_w(k) < most_negative ||
          (leave >= 0 && lam_w(k) == most_negative && row < working[static_cast<std::size_t>(leave)])) {
        most_negative = lam_w(k);
        leave = static_cast<int>(k);
      }
    }
    if (leave < 0) {
      for (Eigen::Index k = 0; k < q; ++k) {
        lambda(working[static_cast<std::size_t>(k)]) = std::max(0.0, lam_w(k));
      }
      return Outcome::optimal;
    }
    working.erase(working.begin() + leave);
    stationary = false;
  }
  return Outcome::max_iterations;
}

QPSolution QPSolver::solve(const QPProblem& problem) {
  const Eigen::Index n = problem.num_variables();
  if (n == 0 || problem.H.rows() != n || problem.H.cols() != n) {
    throw std::invalid_argument("QP: H must be n x n with n = size(F) > 0");
  }
  if (problem.A.rows() != problem.b.size() || (problem.A.rows() > 0 && problem.A.cols() != n)) {
    throw std::invalid_argument("QP: A must be p x n with p = size(b)");
  }
  if ((problem.lower.size() != 0 && problem.lower.size() != n) ||
      (problem.upper.size() != 0 && problem.upper.size() != n)) {
    throw std::invalid_argument("QP: bounds must be empty or of size n");
  }
  const double hscale = std::max(1.0, problem.H.cwiseAbs().maxCoeff());
  if ((problem.H - problem.H.transpose()).cwiseAbs().maxCoeff() > 1e-12 * hscale) {
    throw std::invalid_argument("QP: H is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(problem.H, Eigen::EigenvaluesOnly);
  const double min_eig = eig.eigenvalues().minCoeff();
  if (min_eig < -1e-10) throw std::invalid_argument("QP: H is not positive semidefinite");

  QPSolution sol;
  Eigen::MatrixXd h = problem.H;
  if (min_eig < options_.regularization) {
    h += options_.regularization * Eigen::MatrixXd::Identity(n, n);
    sol.regularized = true;
  }

  Eigen::MatrixXd c;
  Eigen::VectorXd d;
  stack_constraints(problem, c, d);
  const Eigen::Index rows = c.rows();
  double dscale = 1.0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (std::isfinite(d(i))) dscale = std::max(dscale, std::abs(d(i)));
  }
  const double feas_tol = options_.feasibility_tol * dscale;

  // Feasible starting point.
  Eigen::VectorXd z = h.llt().solve(-problem.F);
  if (rows > 0 && max_violation(c, d, z) > feas_tol) z = Eigen::VectorXd::Zero(n);
  if (rows > 0 && max_violation(c, d, z) > feas_tol) {
    // Phase 1: minimise t subject to C z - t <= d, t >= -1.
    std::vector<Eigen::Index> finite;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (std::isfinite(d(i))) finite.push_back(i);
    }
    const Eigen::Index m1 = static_cast<Eigen::Index>(finite.size());
    Eigen::MatrixXd c1 = Eigen::MatrixXd::Zero(m1 + 1, n + 1);
    Eigen::VectorXd d1(m1 + 1);
    for (Eigen::Index k = 0; k < m1; ++k) {
      c1.row(k).head(n) = c.row(finite[static_cast<std::size_t>(k)]);
      c1(k, n) = -1.0;
      d1(k) = d(finite[static_cast<std::size_t>(k)]);
    }
    c1(m1, n) = -1.0;
    d1(m1) = 1.0;
    Eigen::MatrixXd h1 = kPhaseOneWeight * Eigen::MatrixXd::Identity(n + 1, n + 1);
    Eigen::VectorXd f1 = Eigen::VectorXd::Zero(n + 1);
    f1(n) = 1.0;
    Eigen::VectorXd z1 = Eigen::VectorXd::Zero(n + 1);
    z1(n) = std::max(-1.0, max_violation(c, d, z));
    std::vector<int> working1;
    Eigen::VectorXd lambda1;
    const Outcome out1 = active_set(h1, f1, c1, d1, z1, working1, lambda1, sol.iterations);
    if (out1 == Outcome::max_iterations) {
      sol.status = QPStatus::max_iterations;
      sol.z = z1.head(n);
      sol.objective = problem.objective(sol.z);
      sol.kkt_residual = kInf;
      return sol;
    }
    if (z1(n) > feas_tol) {
      sol.status = QPStatus::infeasible;
      sol.z = z1.head(n);
      sol.objective = problem.objective(sol.z);
      sol.kkt_residual = kInf;
      sol.farkas = Eigen::VectorXd::Zero(rows);
      for (Eigen::Index k = 0; k < m1; ++k) sol.farkas(finite[static_cast<std::size_t>(k)]) = lambda1(k);
      return sol;
    }
    z = z1.head(n);
  }

  std::vector<int> working;
  Eigen::VectorXd lambda;
  const Outcome out = active_set(h, problem.F, c, d, z, working, lambda, sol.iterations);
  sol.z = z;
  sol.objective = problem.objective(z);
  sol.multipliers = lambda;
  std::sort(working.begin(), working.end());
  sol.active_set = working;
  sol.status = out == Outcome::optimal ? QPStatus::optimal : QPStatus::max_iterations;
  QPProblem solved = problem;
  solved.H = h;
  sol.kkt_residual = kkt_residuals(solved, z, lambda).max();
  return sol;
}

}  // namespace iccbf
