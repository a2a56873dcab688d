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

#include "iccbf/input_set.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace iccbf {
namespace {

constexpr double kVertexTol = 1e-10;

// Calls visit(indices) for every size-k subset of {0, ..., n-1}, in
// lexicographic order.
void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(const std::vector<std::size_t>&)>& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(idx);
    if (k == 0) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

double row_scale(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, Eigen::Index r) {
  return std::max(1.0, std::max(a.row(r).cwiseAbs().maxCoeff(), std::abs(b(r))));
}

bool satisfies(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& u,
               double tol) {
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    if (a.row(r).dot(u) - b(r) > tol * row_scale(a, b, r)) return false;
  }
  return true;
}

// Exhaustive vertex enumeration: every size-m row subset with full rank
// yields a candidate; keep the feasible ones, deduplicated.
std::vector<std::vector<double>> enumerate_vertices(const Eigen::MatrixXd& a,
                                                    const Eigen::VectorXd& b) {
  const auto m = static_cast<std::size_t>(a.cols());
  const auto p = static_cast<std::size_t>(a.rows());
  std::vector<std::vector<double>> out;
  for_each_subset(p, m, [&](const std::vector<std::size_t>& rows) {
    Eigen::MatrixXd sub(m, m);
    Eigen::VectorXd rhs(m);
    for (std::size_t i = 0; i < m; ++i) {
      sub.row(static_cast<Eigen::Index>(i)) = a.row(static_cast<Eigen::Index>(rows[i]));
      rhs(static_cast<Eigen::Index>(i)) = b(static_cast<Eigen::Index>(rows[i]));
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
    if (lu.rank() < static_cast<Eigen::Index>(m)) return;
    const Eigen::VectorXd u = lu.solve(rhs);
    if (!satisfies(a, b, u, kVertexTol)) return;
    for (const auto& v : out) {
      double dist = 0.0;
      for (std::size_t j = 0; j < m; ++j) dist = std::max(dist, std::abs(v[j] - u(static_cast<Eigen::Index>(j))));
      if (dist <= 1e-12 * std::max(1.0, u.cwiseAbs().maxCoeff())) return;
    }
    out.emplace_back(u.data(), u.data() + m);
  });
  return out;
}

// With rank(A) = m the recession cone {d : A d <= 0} is pointed; it is
// non-trivial iff it has an extreme ray, which is cut out by m - 1
// independent rows.
bool is_bounded(const Eigen::MatrixXd& a) {
  const auto m = static_cast<std::size_t>(a.cols());
  Eigen::FullPivLU<Eigen::MatrixXd> full(a);
  if (full.rank() < static_cast<Eigen::Index>(m)) return false;
  bool bounded = true;
  for_each_subset(static_cast<std::size_t>(a.rows()), m - 1, [&](const std::vector<std::size_t>& rows) {
    if (!bounded) return;
    Eigen::MatrixXd sub(static_cast<Eigen::Index>(m - 1), static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      sub.row(static_cast<Eigen::Index>(i)) = a.row(static_cast<Eigen::Index>(rows[i]));
    }
    Eigen::VectorXd dir;
    if (m == 1) {
      dir = Eigen::VectorXd::Ones(1);
    } else {
      Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
      if (lu.rank() < static_cast<Eigen::Index>(m - 1)) return;
      dir = lu.kernel().col(0);
    }
    for (const double sign : {1.0, -1.0}) {
      const Eigen::VectorXd d = sign * dir.normalized();
      if (((a * d).array() <= 1e-12).all()) bounded = false;
    }
  });
  return bounded;
}

}  // namespace

InputSet InputSet::box(std::vector<double> lower, std::vector<double> upper) {
  if (lower.empty() || lower.size() != upper.size()) {
    throw std::invalid_argument("box input set needs matching non-empty bounds");
  }
  for (std::size_t j = 0; j < lower.size(); ++j) {
    if (!std::isfinite(lower[j]) || !std::isfinite(upper[j]) || !(lower[j] <= upper[j])) {
      throw std::invalid_argument("box input set bounds must be finite with lower <= upper");
    }
  }
  InputSet s;
  s.kind_ = Kind::box;
  s.dim_ = lower.size();
  s.lower_ = std::move(lower);
  s.upper_ = std::move(upper);
  const auto m = static_cast<Eigen::Index>(s.dim_);
  s.a_ = Eigen::MatrixXd::Zero(2 * m, m);
  s.b_.resize(2 * m);
  for (Eigen::Index j = 0; j < m; ++j) {
    s.a_(2 * j, j) = 1.0;
    s.b_(2 * j) = s.upper_[static_cast<std::size_t>(j)];
    s.a_(2 * j + 1, j) = -1.0;
    s.b_(2 * j + 1) = -s.lower_[static_cast<std::size_t>(j)];
  }
  // Corners in binary order: bit j selects upper_[j].
  const std::size_t count = std::size_t{1} << s.dim_;
  s.vertices_.reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    std::vector<double> v(s.dim_);
    for (std::size_t j = 0; j < s.dim_; ++j) v[j] = (mask >> j) & 1U ? s.upper_[j] : s.lower_[j];
    s.vertices_.push_back(std::move(v));
  }
  return s;
}

InputSet InputSet::one_norm_ball(std::size_t dim, double radius) {
  if (dim == 0 || !(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("1-norm ball needs dim >= 1 and a positive finite radius");
  }
  InputSet s;
  s.kind_ = Kind::one_norm_ball;
  s.dim_ = dim;
  s.radius_ = radius;
  s.lower_.assign(dim, -radius);
  s.upper_.assign(dim, radius);
  const std::size_t rows = std::size_t{1} << dim;
  const auto m = static_cast<Eigen::Index>(dim);
  s.a_.resize(static_cast<Eigen::Index>(rows), m);
  s.b_ = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(rows), radius);
  for (std::size_t mask = 0; mask < rows; ++mask) {
    for (std::size_t j = 0; j < dim; ++j) {
      s.a_(static_cast<Eigen::Index>(mask), static_cast<Eigen::Index>(j)) = (mask >> j) & 1U ? -1.0 : 1.0;
    }
  }
  for (std::size_t j = 0; j < dim; ++j) {
    for (const double sign : {1.0, -1.0}) {
      std::vector<double> v(dim, 0.0);
      v[j] = sign * radius;
      s.vertices_.push_back(std::move(v));
    }
  }
  return s;
}

InputSet InputSet::polytope(Eigen::MatrixXd a, Eigen::VectorXd b) {
  if (a.cols() == 0 || a.rows() != b.size() || a.rows() < a.cols() + 1) {
    throw std::invalid_argument("polytope needs A (p x m) and B (p) with p >= m + 1");
  }
  if (!a.allFinite() || !b.allFinite()) throw std::invalid_argument("polytope data must be finite");
  if (!is_bounded(a)) throw std::invalid_argument("polytope input set is unbounded");
  InputSet s;
  s.kind_ = Kind::polytope;
  s.dim_ = static_cast<std::size_t>(a.cols());
  s.vertices_ = enumerate_vertices(a, b);
  if (s.vertices_.empty()) throw std::invalid_argument("polytope input set is empty");
  s.a_ = std::move(a);
  s.b_ = std::move(b);
  s.lower_.assign(s.dim_, std::numeric_limits<double>::infinity());
  s.upper_.assign(s.dim_, -std::numeric_limits<double>::infinity());
  for (const auto& v : s.vertices_) {
    for (std::size_t j = 0; j < s.dim_; ++j) {
      s.lower_[j] = std::min(s.lower_[j], v[j]);
      s.upper_[j] = std::max(s.upper_[j], v[j]);
    }
  }
  return s;
}

bool InputSet::contains(std::span<const double> u, double tol) const {
  if (u.size() != dim_) return false;
  const Eigen::Map<const Eigen::VectorXd> uv(u.data(), static_cast<Eigen::Index>(u.size()));
  return satisfies(a_, b_, uv, tol);
}

std::vector<double> InputSet::project(std::span<const double> u) const {
  if (u.size() != dim_) throw std::invalid_argument("projection: dimension mismatch");
  std::vector<double> out(u.begin(), u.end());
  switch (kind_) {
    case Kind::box:
      for (std::size_t j = 0; j < dim_; ++j) out[j] = std::clamp(out[j], lower_[j], upper_[j]);
      return out;
    case Kind::one_norm_ball: {
      // Soft thresholding with a sort-based threshold search.
      double norm1 = 0.0;
      for (double x : out) norm1 += std::abs(x);
      if (norm1 <= radius_) return out;
      std::vector<double> mags(dim_);
      for (std::size_t j = 0; j < dim_; ++j) mags[j] = std::abs(out[j]);
      std::sort(mags.begin(), mags.end(), std::greater<>());
      double cumulative = 0.0;
      double theta = 0.0;
      for (std::size_t k = 0; k < dim_; ++k) {
        cumulative += mags[k];
        const double t = (cumulative - radius_) / static_cast<double>(k + 1);
        if (mags[k] > t) theta = t;
      }
      for (auto& x : out) x = std::copysign(std::max(std::abs(x) - theta, 0.0), x);
      return out;
    }
    case Kind::polytope:
      break;
  }
  // Polytope: nearest point by cyclic projections onto the halfspaces
  // (Dykstra), which converges to the Euclidean projection.
  const auto m = static_cast<Eigen::Index>(dim_);
  Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(u.data(), m);
  std::vector<Eigen::VectorXd> corr(static_cast<std::size_t>(a_.rows()), Eigen::VectorXd::Zero(m));
  for (int sweep = 0; sweep < 10000; ++sweep) {
    double change = 0.0;
    for (Eigen::Index r = 0; r < a_.rows(); ++r) {
      const Eigen::VectorXd y = x + corr[static_cast<std::size_t>(r)];
      const double viol = a_.row(r).dot(y) - b_(r);
      Eigen::VectorXd next = y;
      if (viol > 0.0) next -= viol / a_.row(r).squaredNorm() * a_.row(r).transpose();
      corr[static_cast<std::size_t>(r)] = y - next;
      change = std::max(change, (next - x).cwiseAbs().maxCoeff());
      x = next;
    }
    if (change < 1e-14) break;
  }
  return {x.data(), x.data() + m};
}

std::string InputSet::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::box:
      os << "box";
      for (std::size_t j = 0; j < dim_; ++j) os << " [" << lower_[j] << ", " << upper_[j] << "]";
      break;
    case Kind::one_norm_ball:
      os << "1-norm ball radius " << radius_ << " in R^" << dim_;
      break;
    case Kind::polytope:
      os << "polytope with " << a_.rows() << " rows, " << vertices_.size() << " vertices";
      break;
  }
  return os.str();
}

}  // namespace iccbf
