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

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "iccbf/config.hpp"

namespace iccbf {

/// Process exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitConfigError = 2 };

struct RunResult {
  int exit_code = kExitOk;
  std::vector<std::filesystem::path> files;
  std::string message;  // one-line human summary
};

/// Closed-loop run from sim.x0. Writes trajectory.csv, events.csv and
/// summary.csv into `out_dir`; exit 0 iff the run logged no safety
/// violation, infeasible QP or blowup.
RunResult run_simulate(const ScenarioConfig& config, const std::filesystem::path& out_dir);

/// Certification over verify.domain. Writes certificate.csv and
/// refinement_trace.csv, plus nagumo.csv when verify.nagumo_samples > 0;
/// exit 0 iff the chain is certified.
RunResult run_verify(const ScenarioConfig& config, const std::filesystem::path& out_dir);

/// Boundary labels on the grid slice: grid_level_<i>.csv for every level
/// and grid_inner.csv for C*.
RunResult run_boundary_grid(const ScenarioConfig& config, const std::filesystem::path& out_dir);

/// Built-in models with their parameters, units and defaults.
void write_model_list(std::ostream& os);

}  // namespace iccbf
