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
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iccbf/barrier_chain.hpp"
#include "iccbf/controller.hpp"
#include "iccbf/simulation.hpp"
#include "iccbf/verifier.hpp"

namespace iccbf {

/// Malformed, incomplete or inconsistent scenario file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A quantity with a unit expression such as "0.25 kN", "10 deg" or
/// "398600 km^3/s^2", converted to the unit `target` (e.g. "N", "rad",
/// "m^3/s^2"). Units are products and quotients of m, km, cm, mm, kg, g, s,
/// min, h, N, kN, mN, rad, deg, with optional integer powers; "1" is
/// dimensionless. Throws ConfigError on unknown units or mismatched
/// dimensions.
double convert_quantity(const std::string& text, const std::string& target);

struct AlphaConfig {
  std::string kind = "linear";  // linear | sqrt | power
  double gain = 1.0;
  double exponent = 1.0;        // power only

  ClassKappa build() const;
  bool operator==(const AlphaConfig&) const = default;
};

struct ModelConfig {
  std::string name;
  ParameterMap parameters;  // overrides in the model's documented SI units
  bool operator==(const ModelConfig&) const = default;
};

struct ChainConfig {
  std::vector<AlphaConfig> alphas;  // alpha_0 ... alpha_N
  double margin = 0.0;
  bool operator==(const ChainConfig&) const = default;
};

struct ControllerConfig {
  std::string kind = "iccbf-qp";
  double clf_rate = 10.0;
  double delta_penalty = 0.1;
  double k_penalty = 50.0;
  double cbf_gain = 2.0;
  double control_scale = 1.0;

  ControllerSpec build() const;
  bool operator==(const ControllerConfig&) const = default;
};

struct SimConfig {
  std::vector<double> x0;
  double t_end = 40.0;
  double dt = 1e-2;
  std::optional<double> goal_range;
  bool per_stage_control = false;
  double eps_num = 1e-4;

  SimulationOptions build() const;
  bool operator==(const SimConfig&) const = default;
};

struct VerifyConfig {
  std::vector<double> lower;
  std::vector<double> upper;
  std::size_t budget = 100000;
  int starts = 50;
  int iterations = 500;
  std::uint64_t seed = 0;
  int threads = 1;
  double tolerance = 1e-6;
  std::size_t nagumo_samples = 0;  // boundary spot-check after certification; 0 skips it
  std::uint64_t nagumo_seed = 1;

  VerifyOptions build() const;
  bool operator==(const VerifyConfig&) const = default;
};

struct GridConfig {
  std::size_t axis_x = 0;
  std::size_t axis_y = 1;
  std::vector<double> lower;  // {x_lower, y_lower}
  std::vector<double> upper;  // {x_upper, y_upper}
  std::size_t nx = 400;
  std::size_t ny = 400;
  std::vector<double> base;   // values of the other coordinates; empty = zeros

  Grid2D build(std::size_t state_dim) const;
  bool operator==(const GridConfig&) const = default;
};

/// One scenario file. Sections other than model and chain are optional, but
/// each subcommand requires its own (sim, verify, grid).
struct ScenarioConfig {
  ModelConfig model;
  ChainConfig chain;
  ControllerConfig controller;
  std::optional<SimConfig> sim;
  std::optional<VerifyConfig> verify;
  std::optional<GridConfig> grid;
  std::string output_directory = "out";

  bool operator==(const ScenarioConfig&) const = default;
};

/// Strict YAML parsing: unknown keys, wrong types, unknown models or
/// parameters, unit mismatches and dimension mismatches raise ConfigError.
ScenarioConfig parse_config(const std::string& yaml_text);
ScenarioConfig load_config(const std::filesystem::path& path);

/// YAML with every number written to round-trip exactly (SI values, no units).
std::string emit_config(const ScenarioConfig& config);

/// Chain built from the model and chain sections.
std::shared_ptr<const BarrierChain> build_chain(const ScenarioConfig& config);

}  // namespace iccbf
