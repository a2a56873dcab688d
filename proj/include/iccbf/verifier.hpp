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

#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "iccbf/barrier_chain.hpp"
#include "iccbf/controller.hpp"

namespace iccbf {

/// No quasi-random sample fell inside C*.
class EmptyInnerSetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scrambled Halton sequence: the radical inverse in the first `dim` primes,
/// shifted modulo 1 by a seeded random vector. Point k is independent of the
/// number of points drawn, so shorter runs see a prefix of longer ones.
class HaltonSequence {
 public:
  HaltonSequence(std::size_t dim, std::uint64_t seed);

  std::size_t dim() const noexcept { return shift_.size(); }
  /// Point with index k >= 1 in [0, 1)^dim.
  std::vector<double> point(std::uint64_t k) const;
  /// Point k mapped affinely into the box.
  std::vector<double> point_in(std::uint64_t k, const StateBox& box) const;

 private:
  std::vector<std::uint32_t> primes_;
  std::vector<double> shift_;
};

struct VerifyOptions {
  StateBox domain;
  std::size_t budget = 100000;  // quasi-random samples drawn
  int starts = 50;              // Nelder-Mead starts from the worst samples
  int iterations = 500;         // Nelder-Mead iterations per start
  std::uint64_t seed = 0;
  int threads = 1;
  double tolerance = 1e-6;      // is_iccbf <=> gamma >= -tolerance
  double boundary_scale = 1e-4; // simple-ICCBF boundary band, times |grad b_N|
  bool keep_trace = true;
};

struct TracePoint {
  int start = 0;
  int iteration = 0;
  std::vector<double> state;
  double value = 0.0;
};

struct SimpleCheck {
  bool is_simple = false;
  std::vector<double> witness;  // state in C* closest to the boundary of C_N
  double witness_value = 0.0;   // b_N(witness)
  double threshold = 0.0;       // boundary band at the witness
};

struct CertificateReport {
  std::string method = "sampling+refinement";
  double gamma = 0.0;
  std::vector<double> argmin_state;
  bool is_iccbf = false;
  bool is_simple = false;
  SimpleCheck simple;
  std::size_t samples_used = 0;
  std::size_t samples_in_set = 0;
  double sample_gamma = 0.0;  // best value before refinement
  std::vector<TracePoint> refinement_trace;
};

/// gamma = min over C* of sup_u [b_N'(x, u) + alpha_N(b_N(x))], estimated by
/// sampling `budget` scrambled Halton points of the domain, keeping those in
/// C*, then refining from the `starts` lowest samples with Nelder-Mead that
/// rejects points leaving C* or the domain. Throws EmptyInnerSetError if no
/// sample lies in C*. Results are merged in start order, so the report does
/// not depend on `threads`.
CertificateReport certify(const BarrierChain& chain, const VerifyOptions& options);

/// Minimises b_N over C* the same way; the chain is simple when the minimum
/// exceeds boundary_scale * |grad b_N| at the minimiser.
SimpleCheck detect_simple(const BarrierChain& chain, const VerifyOptions& options);

/// Nelder-Mead on an objective that returns +inf for rejected points.
struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::vector<TracePoint> trace;  // best vertex after each iteration
};
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::span<const double> start, std::span<const double> step, int iterations,
                             bool keep_trace = false);

// ---------------------------------------------------------------------------
// Boundary diagnostics

enum class BoundaryLabel { interior, boundary_feasible, boundary_infeasible, exterior };

std::string to_string(BoundaryLabel label);

/// Regular grid over two state coordinates; the others are fixed at `base`.
struct Grid2D {
  std::size_t axis_x = 0;
  std::size_t axis_y = 1;
  double x_lower = 0.0, x_upper = 1.0;
  double y_lower = 0.0, y_upper = 1.0;
  std::size_t nx = 100, ny = 100;
  std::vector<double> base;

  std::vector<double> node(std::size_t ix, std::size_t iy) const;
};

struct GridLabels {
  Grid2D grid;
  std::vector<double> values;        // row-major, index iy * nx + ix
  std::vector<BoundaryLabel> labels;

  BoundaryLabel at(std::size_t ix, std::size_t iy) const { return labels[iy * grid.nx + ix]; }
  double value_at(std::size_t ix, std::size_t iy) const { return values[iy * grid.nx + ix]; }
};

/// Labels nodes of C_level: exterior when b_level < 0; boundary when inside
/// with an outside 4-neighbour, feasible iff sup_u b_level'(x, u) >= 0 at the
/// zero crossing found by bisection towards that neighbour; interior
/// otherwise. `level` = -1 labels C* using min_i b_i and the level attaining
/// the minimum at the crossing.
GridLabels boundary_partition(const BarrierChain& chain, int level, const Grid2D& grid);

// ---------------------------------------------------------------------------
// Nagumo spot-check

struct NagumoResult {
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::size_t rejected = 0;     // no level within eps of zero, or outside C*
  std::size_t infeasible = 0;   // controller reported an infeasible QP
  double worst = 0.0;           // most negative active-level derivative seen
};

/// For each sample with some |b_i| <= eps, evaluates b_i'(x, u(x)) for the
/// active levels under the controller and counts samples where one is below
/// `threshold`.
NagumoResult nagumo_spotcheck(const BarrierChain& chain, Controller& controller,
                              const std::vector<std::vector<double>>& samples, double eps = 1e-9,
                              double threshold = -1e-6);

/// States on the boundary of C* within the domain: bisection between a
/// sampled inside point and a sampled outside point until they are adjacent
/// doubles, keeping the inside end.
std::vector<std::vector<double>> sample_inner_boundary(const BarrierChain& chain, const StateBox& domain,
                                                       std::size_t count, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Serialisation

/// key,value rows; vectors are space-separated within a field.
void write_report(std::ostream& os, const CertificateReport& report);
/// start,iteration,x_1..x_n,value.
void write_trace_csv(std::ostream& os, const CertificateReport& report);
/// x_a,x_b,b,label.
void write_grid_csv(std::ostream& os, const GridLabels& labels);

}  // namespace iccbf
