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

#include "iccbf/scenario.hpp"

#include <fstream>
#include <sstream>

#include "iccbf/models.hpp"

namespace iccbf {
namespace {

std::filesystem::path open_output(const std::filesystem::path& dir, const std::string& name, std::ofstream& os) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path path = dir / name;
  os.open(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os.imbue(std::locale::classic());
  return path;
}

template <typename Writer>
std::filesystem::path write_file(const std::filesystem::path& dir, const std::string& name, Writer&& writer) {
  std::ofstream os;
  const std::filesystem::path path = open_output(dir, name, os);
  writer(os);
  os.close();
  if (!os) throw std::runtime_error("failed writing " + path.string());
  return path;
}

}  // namespace

RunResult run_simulate(const ScenarioConfig& config, const std::filesystem::path& out_dir) {
  if (!config.sim) throw ConfigError("simulate needs a 'sim' section");
  const auto chain = build_chain(config);
  Controller controller(chain, config.controller.build());
  const Trajectory traj = simulate(controller, config.sim->x0, config.sim->build());
  const RunSummary summary = summarize(traj, chain->inputs());

  RunResult r;
  r.files.push_back(write_file(out_dir, "trajectory.csv", [&](std::ostream& os) { write_trajectory_csv(os, traj); }));
  r.files.push_back(write_file(out_dir, "events.csv", [&](std::ostream& os) { write_events_csv(os, traj); }));
  r.files.push_back(write_file(out_dir, "summary.csv", [&](std::ostream& os) { write_summary_csv(os, summary); }));
  r.exit_code = traj.failed ? kExitFailure : kExitOk;
  std::ostringstream msg;
  msg << config.model.name << " " << config.controller.kind << ": t=" << format_double(summary.final_time)
      << " min_h=" << format_double(summary.min_h) << " events=" << traj.events.size()
      << (traj.failed ? " FAILED" : " ok");
  r.message = msg.str();
  return r;
}

RunResult run_verify(const ScenarioConfig& config, const std::filesystem::path& out_dir) {
  if (!config.verify) throw ConfigError("verify needs a 'verify' section");
  const auto chain = build_chain(config);
  const VerifyOptions options = config.verify->build();
  const CertificateReport report = certify(*chain, options);

  RunResult r;
  r.files.push_back(write_file(out_dir, "certificate.csv", [&](std::ostream& os) { write_report(os, report); }));
  r.files.push_back(
      write_file(out_dir, "refinement_trace.csv", [&](std::ostream& os) { write_trace_csv(os, report); }));
  std::ostringstream msg;
  msg << config.model.name << ": gamma=" << format_double(report.gamma)
      << " is_iccbf=" << (report.is_iccbf ? "true" : "false");
  if (config.verify->nagumo_samples > 0) {
    Controller controller(chain, config.controller.build());
    const auto samples =
        sample_inner_boundary(*chain, options.domain, config.verify->nagumo_samples, config.verify->nagumo_seed);
    const NagumoResult n = nagumo_spotcheck(*chain, controller, samples);
    r.files.push_back(write_file(out_dir, "nagumo.csv", [&](std::ostream& os) {
      os << "key,value\n";
      os << "checked," << n.checked << "\n";
      os << "violations," << n.violations << "\n";
      os << "rejected," << n.rejected << "\n";
      os << "infeasible," << n.infeasible << "\n";
      os << "worst," << format_double(n.worst) << "\n";
    }));
    msg << " nagumo_violations=" << n.violations << "/" << n.checked;
  }
  r.exit_code = report.is_iccbf ? kExitOk : kExitFailure;
  r.message = msg.str();
  return r;
}

RunResult run_boundary_grid(const ScenarioConfig& config, const std::filesystem::path& out_dir) {
  if (!config.grid) throw ConfigError("boundary-grid needs a 'grid' section");
  const auto chain = build_chain(config);
  const Grid2D grid = config.grid->build(chain->system().state_dim());
  RunResult r;
  std::ostringstream msg;
  msg << config.model.name << ":";
  for (int level = -1; level <= chain->levels(); ++level) {
    const GridLabels labels = boundary_partition(*chain, level, grid);
    const std::string name = level < 0 ? "grid_inner.csv" : "grid_level_" + std::to_string(level) + ".csv";
    r.files.push_back(write_file(out_dir, name, [&](std::ostream& os) { write_grid_csv(os, labels); }));
    std::size_t infeasible = 0;
    for (BoundaryLabel l : labels.labels) infeasible += l == BoundaryLabel::boundary_infeasible ? 1 : 0;
    msg << " " << (level < 0 ? std::string("C*") : "C_" + std::to_string(level)) << "[infeasible=" << infeasible
        << "]";
  }
  r.message = msg.str();
  return r;
}

void write_model_list(std::ostream& os) {
  for (const std::string& name : builtin_model_names()) {
    os << name << "\n";
    for (const ParameterSpec& p : builtin_parameters(name)) {
      os << "  " << p.name << " = " << format_double(p.default_value) << " [" << p.unit << "]  " << p.description
         << "\n";
    }
  }
}

}  // namespace iccbf
