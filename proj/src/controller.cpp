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

#include <cmath>
#include <stdexcept>

#include "iccbf/autodiff.hpp"

namespace iccbf {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

double row_residual(const LevelDerivatives& d, double alpha_value, std::span<const double> u) {
  return std::max(0.0, -(d.lie_drift + dot(d.lie_input, u) + alpha_value));
}

// Rows A w <= b of U expressed in the scaled variable w = u / scale, placed in
// the first m columns of a problem with `cols` variables.
void append_input_rows(const InputSet& inputs, double scale, Eigen::Index cols, Eigen::MatrixXd& a,
                       Eigen::VectorXd& b) {
  const Eigen::Index m = static_cast<Eigen::Index>(inputs.dim());
  const Eigen::Index start = a.rows();
  const Eigen::Index extra = inputs.a().rows();
  a.conservativeResize(start + extra, cols);
  b.conservativeResize(start + extra);
  a.bottomRows(extra).setZero();
  a.block(start, 0, extra, m) = inputs.a();
  b.tail(extra) = inputs.b() / scale;
}

void append_row(Eigen::MatrixXd& a, Eigen::VectorXd& b, const Eigen::RowVectorXd& row, double rhs) {
  const Eigen::Index r = a.rows();
  a.conservativeResize(r + 1, row.size());
  b.conservativeResize(r + 1);
  a.row(r) = row;
  b(r) = rhs;
}

}  // namespace

std::string to_string(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::iccbf_qp:
      return "iccbf-qp";
    case ControllerKind::clf_cbf_qp_clipped:
      return "clf-cbf-qp-clipped";
    case ControllerKind::iccbf_clf_relaxed:
      return "iccbf-clf-relaxed";
  }
  return "unknown";
}

ControllerKind controller_kind_from_string(const std::string& name) {
  for (ControllerKind k :
       {ControllerKind::iccbf_qp, ControllerKind::clf_cbf_qp_clipped, ControllerKind::iccbf_clf_relaxed}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown controller kind '" + name + "'");
}

Controller::Controller(std::shared_ptr<const BarrierChain> chain, ControllerSpec spec)
    : chain_(std::move(chain)), spec_(spec) {
  if (!chain_) throw std::invalid_argument("controller needs a barrier chain");
  if (!(spec_.clf_rate > 0.0) || !(spec_.delta_penalty > 0.0) || !(spec_.k_penalty > 0.0) ||
      !(spec_.cbf_gain > 0.0) || !(spec_.control_scale > 0.0)) {
    throw std::invalid_argument("controller rates, penalties and scale must be positive");
  }
  const bool needs_clf = spec_.kind != ControllerKind::iccbf_qp;
  if (needs_clf && !chain_->system().has_lyapunov()) {
    throw std::invalid_argument("controller " + to_string(spec_.kind) + " needs a model with a CLF; " +
                                chain_->system().name() + " has none");
  }
  if (spec_.kind == ControllerKind::iccbf_clf_relaxed &&
      chain_->alpha(chain_->levels()).kind() != ClassKappa::Kind::linear) {
    throw std::invalid_argument("iccbf-clf-relaxed needs a linear alpha_N");
  }
}

Controller::LieTerms Controller::lyapunov_terms(std::span<const double> x) const {
  const ControlAffineSystem& sys = chain_->system();
  LieTerms out;
  out.value = sys.lyapunov<double>(x);
  const std::vector<double> grad =
      gradient<double>([&](std::span<const Jet<double>> xj) { return sys.lyapunov<Jet<double>>(xj); }, x);
  const std::vector<double> f = sys.drift<double>(x);
  const Matrix<double> g = sys.input_map<double>(x);
  out.drift = dot(grad, f);
  out.input.assign(sys.input_dim(), 0.0);
  for (std::size_t j = 0; j < sys.input_dim(); ++j) {
    for (std::size_t k = 0; k < sys.state_dim(); ++k) out.input[j] += grad[k] * g(k, j);
  }
  return out;
}

std::vector<double> Controller::desired_control(std::span<const double> x) const {
  const std::size_t m = chain_->system().input_dim();
  std::vector<double> ud(m, 0.0);
  if (!chain_->system().has_lyapunov()) return ud;
  const LieTerms v = lyapunov_terms(x);
  const double norm2 = dot(v.input, v.input);
  if (norm2 <= 1e-300) return ud;
  const double scale = -(spec_.clf_rate * v.value + v.drift) / norm2;
  for (std::size_t j = 0; j < m; ++j) ud[j] = scale * v.input[j];
  return ud;
}

ControlResult Controller::compute(std::span<const double> x) {
  switch (spec_.kind) {
    case ControllerKind::iccbf_qp:
      return iccbf_qp_control(x);
    case ControllerKind::clf_cbf_qp_clipped:
      return clf_cbf_qp_clipped_control(x);
    case ControllerKind::iccbf_clf_relaxed:
      return iccbf_clf_relaxed_control(x);
  }
  throw std::logic_error("unhandled controller kind");
}

ControlResult Controller::iccbf_qp_control(std::span<const double> x) {
  const BarrierChain& chain = *chain_;
  const InputSet& inputs = chain.inputs();
  const Eigen::Index m = static_cast<Eigen::Index>(inputs.dim());
  const double s = spec_.control_scale;
  const int n = chain.levels();

  ControlResult out;
  out.desired = desired_control(x);
  const LevelDerivatives d = chain.derivatives(n, x);
  const double alpha_b = chain.alpha(n)(d.value);
  out.barrier = d.value;

  // min 1/2 |s w - u_d|^2 / s^2  <=>  H = I, F = -u_d / s.
  QPProblem qp;
  qp.H = Eigen::MatrixXd::Identity(m, m);
  qp.F = -Eigen::Map<const Eigen::VectorXd>(out.desired.data(), m) / s;
  qp.A.resize(0, m);
  qp.b.resize(0);
  Eigen::RowVectorXd row(m);
  for (Eigen::Index j = 0; j < m; ++j) row(j) = -d.lie_input[static_cast<std::size_t>(j)] * s;
  append_row(qp.A, qp.b, row, d.lie_drift + alpha_b);
  append_input_rows(inputs, s, m, qp.A, qp.b);

  const QPSolution sol = solver_.solve(qp);
  out.status = sol.status;
  out.kkt_residual = sol.kkt_residual;
  out.active_set = sol.active_set;
  if (sol.status != QPStatus::optimal) {
    out.u = inputs.project(out.desired);
    out.barrier_residual = row_residual(d, alpha_b, out.u);
    return out;
  }
  out.u.resize(static_cast<std::size_t>(m));
  for (Eigen::Index j = 0; j < m; ++j) out.u[static_cast<std::size_t>(j)] = s * sol.z(j);
  out.barrier_residual = row_residual(d, alpha_b, out.u);
  return out;
}

ControlResult Controller::clf_cbf_qp_clipped_control(std::span<const double> x) {
  const BarrierChain& chain = *chain_;
  const InputSet& inputs = chain.inputs();
  const Eigen::Index m = static_cast<Eigen::Index>(inputs.dim());
  const double s = spec_.control_scale;

  ControlResult out;
  const LevelDerivatives h = chain.derivatives(0, x);
  const LieTerms v = lyapunov_terms(x);
  out.barrier = h.value;

  // Variables (w, delta), cost 1/2 |w|^2 + p delta^2.
  QPProblem qp;
  qp.H = Eigen::MatrixXd::Identity(m + 1, m + 1);
  qp.H(m, m) = 2.0 * spec_.delta_penalty;
  qp.F = Eigen::VectorXd::Zero(m + 1);
  qp.A.resize(0, m + 1);
  qp.b.resize(0);
  Eigen::RowVectorXd clf(m + 1);
  Eigen::RowVectorXd cbf(m + 1);
  for (Eigen::Index j = 0; j < m; ++j) {
    clf(j) = v.input[static_cast<std::size_t>(j)] * s;
    cbf(j) = -h.lie_input[static_cast<std::size_t>(j)] * s;
  }
  clf(m) = -1.0;
  cbf(m) = 0.0;
  append_row(qp.A, qp.b, clf, -spec_.clf_rate * v.value - v.drift);
  append_row(qp.A, qp.b, cbf, h.lie_drift + spec_.cbf_gain * h.value);
  qp.lower = Eigen::VectorXd::Constant(m + 1, -std::numeric_limits<double>::infinity());
  qp.lower(m) = 0.0;

  const QPSolution sol = solver_.solve(qp);
  out.status = sol.status;
  out.kkt_residual = sol.kkt_residual;
  out.active_set = sol.active_set;
  std::vector<double> raw(static_cast<std::size_t>(m), 0.0);
  if (sol.status == QPStatus::optimal) {
    for (Eigen::Index j = 0; j < m; ++j) raw[static_cast<std::size_t>(j)] = s * sol.z(j);
    out.delta = sol.z(m);
  }
  out.barrier_residual = row_residual(h, spec_.cbf_gain * h.value, raw);
  out.u = inputs.project(raw);
  out.clipped = out.u != raw;
  return out;
}

ControlResult Controller::iccbf_clf_relaxed_control(std::span<const double> x) {
  const BarrierChain& chain = *chain_;
  const InputSet& inputs = chain.inputs();
  const Eigen::Index m = static_cast<Eigen::Index>(inputs.dim());
  const double s = spec_.control_scale;
  const int n = chain.levels();
  const double base_gain = chain.alpha(n).gain();

  ControlResult out;
  const LevelDerivatives b = chain.derivatives(n, x);
  const LieTerms v = lyapunov_terms(x);
  out.barrier = b.value;

  // Variables (w, delta, k), cost 1/2 |w|^2 + p_delta delta + p_k k.
  const Eigen::Index nv = m + 2;
  QPProblem qp;
  qp.H = Eigen::MatrixXd::Zero(nv, nv);
  qp.H.topLeftCorner(m, m).setIdentity();
  qp.F = Eigen::VectorXd::Zero(nv);
  qp.F(m) = spec_.delta_penalty;
  qp.F(m + 1) = spec_.k_penalty;
  qp.A.resize(0, nv);
  qp.b.resize(0);
  Eigen::RowVectorXd clf = Eigen::RowVectorXd::Zero(nv);
  Eigen::RowVectorXd barrier = Eigen::RowVectorXd::Zero(nv);
  for (Eigen::Index j = 0; j < m; ++j) {
    clf(j) = v.input[static_cast<std::size_t>(j)] * s;
    barrier(j) = -b.lie_input[static_cast<std::size_t>(j)] * s;
  }
  clf(m) = -1.0;
  barrier(m + 1) = -b.value;
  append_row(qp.A, qp.b, clf, -spec_.clf_rate * v.value - v.drift);
  append_row(qp.A, qp.b, barrier, b.lie_drift + base_gain * b.value);
  append_input_rows(inputs, s, nv, qp.A, qp.b);
  qp.lower = Eigen::VectorXd::Constant(nv, -std::numeric_limits<double>::infinity());
  qp.lower(m) = 0.0;
  qp.lower(m + 1) = 0.0;

  const QPSolution sol = solver_.solve(qp);
  out.status = sol.status;
  out.kkt_residual = sol.kkt_residual;
  out.active_set = sol.active_set;
  if (sol.status != QPStatus::optimal) {
    out.u.assign(static_cast<std::size_t>(m), 0.0);
    out.barrier_residual = row_residual(b, base_gain * b.value, out.u);
    return out;
  }
  out.u.resize(static_cast<std::size_t>(m));
  for (Eigen::Index j = 0; j < m; ++j) out.u[static_cast<std::size_t>(j)] = s * sol.z(j);
  out.delta = sol.z(m);
  out.k = sol.z(m + 1);
  out.barrier_residual = row_residual(b, (base_gain + out.k) * b.value, out.u);
  return out;
}

}  // namespace iccbf
