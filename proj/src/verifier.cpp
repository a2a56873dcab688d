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

#include "iccbf/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <thread>

#include "iccbf/simulation.hpp"

namespace iccbf {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::uint32_t> first_primes(std::size_t count) {
  std::vector<std::uint32_t> primes;
  for (std::uint32_t c = 2; primes.size() < count; ++c) {
    bool prime = true;
    for (std::uint32_t p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

double radical_inverse(std::uint64_t k, std::uint32_t base) {
  double inv = 1.0 / base;
  double factor = inv;
  double out = 0.0;
  while (k > 0) {
    out += static_cast<double>(k % base) * factor;
    k /= base;
    factor *= inv;
  }
  return out;
}

// Runs fn(i) for i in [0, count) on `threads` workers, each taking a
// contiguous block. fn must only write to slot i of its outputs.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t block = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w * block; i < std::min(count, (w + 1) * block); ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

bool inside_box(const StateBox& box, std::span<const double> x) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!(x[j] >= box.lower[j] && x[j] <= box.upper[j])) return false;
  }
  return true;
}

bool in_inner_set(const BarrierChain& chain, std::span<const double> x) {
  try {
    return chain.membership(x).in_inner_set;
  } catch (const ChainEvaluationError&) {
    return false;
  }
}

using StateObjective = std::function<double(const BarrierChain&, std::span<const double>)>;

// Objective restricted to C* within the domain; +inf elsewhere.
double restricted(const BarrierChain& chain, const StateBox& domain, const StateObjective& fn,
                  std::span<const double> x) {
  if (!inside_box(domain, x)) return kInf;
  try {
    if (!chain.membership(x).in_inner_set) return kInf;
    const double v = fn(chain, x);
    return std::isnan(v) ? kInf : v;
  } catch (const ChainEvaluationError&) {
    return kInf;
  }
}

void check_options(const BarrierChain& chain, const VerifyOptions& o) {
  if (o.domain.dim() != chain.system().state_dim()) throw std::invalid_argument("verify domain has the wrong dimension");
  for (std::size_t j = 0; j < o.domain.dim(); ++j) {
    if (!(o.domain.lower[j] < o.domain.upper[j])) throw std::invalid_argument("verify domain must have lower < upper");
  }
  if (o.budget < 1000) throw std::invalid_argument("verify budget must be at least 1000 samples");
  if (o.starts < 0 || o.iterations < 0) throw std::invalid_argument("starts and iterations must be non-negative");
}

struct Minimum {
  double value = kInf;
  std::vector<double> state;
  std::size_t drawn = 0;
  std::size_t in_set = 0;
  double sample_value = kInf;
  std::vector<TracePoint> trace;
};

Minimum minimise_over_inner_set(const BarrierChain& chain, const VerifyOptions& o, const StateObjective& fn) {
  check_options(chain, o);
  const HaltonSequence seq(o.domain.dim(), o.seed);
  std::vector<double> values(o.budget, kInf);
  parallel_for(o.budget, o.threads, [&](std::size_t i) {
    const std::vector<double> x = seq.point_in(i + 1, o.domain);
    values[i] = restricted(chain, o.domain, fn, x);
  });

  Minimum out;
  out.drawn = o.budget;
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < o.budget; ++i) {
    if (values[i] < kInf) order.push_back(i);
  }
  out.in_set = order.size();
  if (order.empty()) {
    throw EmptyInnerSetError("no sample of " + std::to_string(o.budget) + " fell inside C* for model " +
                             chain.system().name());
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  out.value = values[order.front()];
  out.sample_value = out.value;
  out.state = seq.point_in(order.front() + 1, o.domain);

  const std::size_t starts = std::min<std::size_t>(static_cast<std::size_t>(o.starts), order.size());
  std::vector<double> step(o.domain.dim());
  for (std::size_t j = 0; j < step.size(); ++j) step[j] = 0.05 * (o.domain.upper[j] - o.domain.lower[j]);
  std::vector<NelderMeadResult> results(starts);
  parallel_for(starts, o.threads, [&](std::size_t s) {
    const std::vector<double> x0 = seq.point_in(order[s] + 1, o.domain);
    results[s] = nelder_mead([&](std::span<const double> x) { return restricted(chain, o.domain, fn, x); }, x0, step,
                             o.iterations, o.keep_trace);
  });
  for (std::size_t s = 0; s < starts; ++s) {
    if (results[s].value < out.value) {
      out.value = results[s].value;
      out.state = results[s].x;
    }
    for (TracePoint& p : results[s].trace) {
      p.start = static_cast<int>(s);
      out.trace.push_back(std::move(p));
    }
  }
  return out;
}

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

HaltonSequence::HaltonSequence(std::size_t dim, std::uint64_t seed) : primes_(first_primes(dim)), shift_(dim) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (double& s : shift_) s = unit(rng);
}

std::vector<double> HaltonSequence::point(std::uint64_t k) const {
  std::vector<double> p(shift_.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double v = radical_inverse(k, primes_[j]) + shift_[j];
    p[j] = v >= 1.0 ? v - 1.0 : v;
  }
  return p;
}

std::vector<double> HaltonSequence::point_in(std::uint64_t k, const StateBox& box) const {
  std::vector<double> p = point(k);
  for (std::size_t j = 0; j < p.size(); ++j) p[j] = box.lower[j] + (box.upper[j] - box.lower[j]) * p[j];
  return p;
}

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::span<const double> start, std::span<const double> step, int iterations,
                             bool keep_trace) {
  const std::size_t n = start.size();
  std::vector<std::vector<double>> simplex(n + 1, std::vector<double>(start.begin(), start.end()));
  std::vector<double> values(n + 1);
  values[0] = objective(simplex[0]);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double>& v = simplex[j + 1];
    double h = step[j];
    for (int attempt = 0; attempt < 20; ++attempt) {
      v[j] = start[j] + h;
      values[j + 1] = objective(v);
      if (values[j + 1] < kInf) break;
      v[j] = start[j] - h;
      values[j + 1] = objective(v);
      if (values[j + 1] < kInf) break;
      h *= 0.5;
    }
  }

  auto combine = [&](const std::vector<double>& a, const std::vector<double>& b, double t) {
    // a + t (b - a)
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = a[j] + t * (b[j] - a[j]);
    return out;
  };

  NelderMeadResult result;
  std::vector<std::size_t> idx(n + 1);
  for (int it = 0; it < iterations; ++it) {
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = idx.front();
    const std::size_t worst = idx.back();
    const std::size_t second = idx[n - 1];

    std::vector<double> centroid(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[idx[k]][j] / static_cast<double>(n);
    }
    const std::vector<double> xr = combine(centroid, simplex[worst], -1.0);
    const double fr = objective(xr);
    if (fr < values[best]) {
      const std::vector<double> xe = combine(centroid, simplex[worst], -2.0);
      const double fe = objective(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        values[worst] = fe;
      } else {
        simplex[worst] = xr;
        values[worst] = fr;
      }
    } else if (fr < values[second]) {
      simplex[worst] = xr;
      values[worst] = fr;
    } else {
      bool accepted = false;
      if (fr < values[worst]) {
        const std::vector<double> xc = combine(centroid, xr, 0.5);
        const double fc = objective(xc);
        if (fc <= fr) {
          simplex[worst] = xc;
          values[worst] = fc;
          accepted = true;
        }
      } else {
        const std::vector<double> xc = combine(centroid, simplex[worst], 0.5);
        const double fc = objective(xc);
        if (fc < values[worst]) {
          simplex[worst] = xc;
          values[worst] = fc;
          accepted = true;
        }
      }
      if (!accepted) {
        for (std::size_t k = 0; k <= n; ++k) {
          if (k == best) continue;
          simplex[k] = combine(simplex[best], simplex[k], 0.5);
          values[k] = objective(simplex[k]);
        }
      }
    }
    if (keep_trace) {
      const std::size_t b = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
      result.trace.push_back({0, it, simplex[b], values[b]});
    }
  }
  const std::size_t b = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  result.x = simplex[b];
  result.value = values[b];
  return result;
}

CertificateReport certify(const BarrierChain& chain, const VerifyOptions& options) {
  const Minimum m = minimise_over_inner_set(
      chain, options, [](const BarrierChain& c, std::span<const double> x) { return c.certificate_value(x); });
  CertificateReport r;
  r.gamma = m.value;
  r.argmin_state = m.state;
  r.is_iccbf = m.value >= -options.tolerance;
  r.samples_used = m.drawn;
  r.samples_in_set = m.in_set;
  r.sample_gamma = m.sample_value;
  r.refinement_trace = m.trace;
  r.simple = detect_simple(chain, options);
  r.is_simple = r.simple.is_simple;
  return r;
}

SimpleCheck detect_simple(const BarrierChain& chain, const VerifyOptions& options) {
  const int n = chain.levels();
  VerifyOptions o = options;
  o.keep_trace = false;
  const Minimum m = minimise_over_inner_set(
      chain, o, [n](const BarrierChain& c, std::span<const double> x) { return c.value(n, x); });
  SimpleCheck s;
  s.witness = m.state;
  s.witness_value = m.value;
  s.threshold = options.boundary_scale * norm2(chain.gradient(n, m.state));
  s.is_simple = m.value > s.threshold;
  return s;
}

// ---------------------------------------------------------------------------

std::string to_string(BoundaryLabel label) {
  switch (label) {
    case BoundaryLabel::interior:
      return "interior";
    case BoundaryLabel::boundary_feasible:
      return "boundary-feasible";
    case BoundaryLabel::boundary_infeasible:
      return "boundary-infeasible";
    case BoundaryLabel::exterior:
      return "exterior";
  }
  return "unknown";
}

std::vector<double> Grid2D::node(std::size_t ix, std::size_t iy) const {
  std::vector<double> x = base;
  x[axis_x] = nx > 1 ? x_lower + (x_upper - x_lower) * static_cast<double>(ix) / static_cast<double>(nx - 1) : x_lower;
  x[axis_y] = ny > 1 ? y_lower + (y_upper - y_lower) * static_cast<double>(iy) / static_cast<double>(ny - 1) : y_lower;
  return x;
}

GridLabels boundary_partition(const BarrierChain& chain, int level, const Grid2D& grid) {
  const std::size_t n = chain.system().state_dim();
  if (grid.base.size() != n || grid.axis_x >= n || grid.axis_y >= n || grid.axis_x == grid.axis_y) {
    throw std::invalid_argument("grid slice does not match the state dimension");
  }
  if (grid.nx < 2 || grid.ny < 2) throw std::invalid_argument("grid needs at least 2 x 2 nodes");
  if (level < -1 || level > chain.levels()) throw std::out_of_range("boundary partition level out of range");

  auto scalar = [&](std::span<const double> x) -> double {
    try {
      if (level >= 0) return chain.value(level, x);
      const std::vector<double> v = chain.values(x);
      return *std::min_element(v.begin(), v.end());
    } catch (const ChainEvaluationError&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  auto inside = [](double v) { return v >= 0.0; };

  GridLabels out;
  out.grid = grid;
  out.values.resize(grid.nx * grid.ny);
  out.labels.assign(grid.nx * grid.ny, BoundaryLabel::exterior);
  for (std::size_t iy = 0; iy < grid.ny; ++iy) {
    for (std::size_t ix = 0; ix < grid.nx; ++ix) out.values[iy * grid.nx + ix] = scalar(grid.node(ix, iy));
  }
  for (std::size_t iy = 0; iy < grid.ny; ++iy) {
    for (std::size_t ix = 0; ix < grid.nx; ++ix) {
      const std::size_t id = iy * grid.nx + ix;
      if (!inside(out.values[id])) continue;
      std::optional<std::pair<std::size_t, std::size_t>> outside;
      const long dx[4] = {-1, 1, 0, 0};
      const long dy[4] = {0, 0, -1, 1};
      for (int k = 0; k < 4 && !outside; ++k) {
        const long jx = static_cast<long>(ix) + dx[k];
        const long jy = static_cast<long>(iy) + dy[k];
        if (jx < 0 || jy < 0 || jx >= static_cast<long>(grid.nx) || jy >= static_cast<long>(grid.ny)) continue;
        if (!inside(out.values[static_cast<std::size_t>(jy) * grid.nx + static_cast<std::size_t>(jx)])) {
          outside = std::make_pair(static_cast<std::size_t>(jx), static_cast<std::size_t>(jy));
        }
      }
      if (!outside) {
        out.labels[id] = BoundaryLabel::interior;
        continue;
      }
      std::vector<double> a = grid.node(ix, iy);
      std::vector<double> b = grid.node(outside->first, outside->second);
      for (int it = 0; it < 80; ++it) {
        std::vector<double> mid(n);
        for (std::size_t j = 0; j < n; ++j) mid[j] = 0.5 * (a[j] + b[j]);
        if (mid == a || mid == b) break;
        if (inside(scalar(mid))) {
          a = mid;
        } else {
          b = mid;
        }
      }
      int active = level;
      if (level < 0) {
        const std::vector<double> v = chain.values(a);
        active = static_cast<int>(std::min_element(v.begin(), v.end()) - v.begin());
      }
      bool feasible = false;
      try {
        feasible = chain.sup_derivative(active, a) >= 0.0;
      } catch (const ChainEvaluationError&) {
        feasible = false;
      }
      out.labels[id] = feasible ? BoundaryLabel::boundary_feasible : BoundaryLabel::boundary_infeasible;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

NagumoResult nagumo_spotcheck(const BarrierChain& chain, Controller& controller,
                              const std::vector<std::vector<double>>& samples, double eps, double threshold) {
  NagumoResult r;
  for (const auto& x : samples) {
    const Membership m = chain.membership(x);
    std::vector<int> active;
    for (std::size_t i = 0; i < m.values.size(); ++i) {
      if (std::abs(m.values[i]) <= eps) active.push_back(static_cast<int>(i));
    }
    bool near_inside = true;
    for (double v : m.values) near_inside = near_inside && v >= -eps;
    if (active.empty() || !near_inside) {
      ++r.rejected;
      continue;
    }
    ++r.checked;
    const ControlResult u = controller.compute(x);
    if (!u.feasible()) {
      ++r.infeasible;
      ++r.violations;
      continue;
    }
    bool violated = false;
    for (int i : active) {
      const double rate = chain.derivative_along(i, x, u.u);
      r.worst = std::min(r.worst, rate);
      violated = violated || rate < threshold;
    }
    if (violated) ++r.violations;
  }
  return r;
}

std::vector<std::vector<double>> sample_inner_boundary(const BarrierChain& chain, const StateBox& domain,
                                                       std::size_t count, std::uint64_t seed) {
  const HaltonSequence seq(domain.dim(), seed);
  std::vector<std::vector<double>> in_pts;
  std::vector<std::vector<double>> out_pts;
  for (std::uint64_t k = 1; k <= 4 * count + 1000; ++k) {
    std::vector<double> x = seq.point_in(k, domain);
    (in_inner_set(chain, x) ? in_pts : out_pts).push_back(std::move(x));
  }
  if (in_pts.empty()) throw EmptyInnerSetError("no sample inside C* when drawing boundary points");
  if (out_pts.empty()) throw std::runtime_error("C* covers the whole domain; it has no boundary there");

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<std::size_t> pick_in(0, in_pts.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_out(0, out_pts.size() - 1);
  std::vector<std::vector<double>> result;
  result.reserve(count);
  const std::size_t n = domain.dim();
  while (result.size() < count) {
    std::vector<double> a = in_pts[pick_in(rng)];
    std::vector<double> b = out_pts[pick_out(rng)];
    for (int it = 0; it < 200; ++it) {
      std::vector<double> mid(n);
      for (std::size_t j = 0; j < n; ++j) mid[j] = 0.5 * (a[j] + b[j]);
      if (mid == a || mid == b) break;
      if (in_inner_set(chain, mid)) {
        a = std::move(mid);
      } else {
        b = std::move(mid);
      }
    }
    result.push_back(std::move(a));
  }
  return result;
}

// ---------------------------------------------------------------------------

void write_report(std::ostream& os, const CertificateReport& r) {
  auto vec = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t j = 0; j < v.size(); ++j) s += (j ? " " : "") + format_double(v[j]);
    return s;
  };
  auto flag = [](bool b) { return b ? "true" : "false"; };
  os << "key,value\n";
  os << "method," << r.method << "\n";
  os << "gamma," << format_double(r.gamma) << "\n";
  os << "argmin_state," << vec(r.argmin_state) << "\n";
  os << "is_iccbf," << flag(r.is_iccbf) << "\n";
  os << "is_simple," << flag(r.is_simple) << "\n";
  os << "simple_witness," << vec(r.simple.witness) << "\n";
  os << "simple_witness_value," << format_double(r.simple.witness_value) << "\n";
  os << "simple_threshold," << format_double(r.simple.threshold) << "\n";
  os << "samples_used," << r.samples_used << "\n";
  os << "samples_in_set," << r.samples_in_set << "\n";
  os << "sample_gamma," << format_double(r.sample_gamma) << "\n";
  os << "refinement_points," << r.refinement_trace.size() << "\n";
}

void write_trace_csv(std::ostream& os, const CertificateReport& r) {
  const std::size_t n = r.argmin_state.size();
  os << "start,iteration";
  for (std::size_t j = 1; j <= n; ++j) os << ",x_" << j;
  os << ",value\n";
  for (const TracePoint& p : r.refinement_trace) {
    os << p.start << ',' << p.iteration;
    for (double v : p.state) os << ',' << format_double(v);
    os << ',' << format_double(p.value) << "\n";
  }
}

void write_grid_csv(std::ostream& os, const GridLabels& g) {
  os << "x_" << g.grid.axis_x + 1 << ",x_" << g.grid.axis_y + 1 << ",b,label\n";
  for (std::size_t iy = 0; iy < g.grid.ny; ++iy) {
    for (std::size_t ix = 0; ix < g.grid.nx; ++ix) {
      const std::vector<double> x = g.grid.node(ix, iy);
      os << format_double(x[g.grid.axis_x]) << ',' << format_double(x[g.grid.axis_y]) << ','
         << format_double(g.value_at(ix, iy)) << ',' << to_string(g.at(ix, iy)) << "\n";
    }
  }
}

}  // namespace iccbf
