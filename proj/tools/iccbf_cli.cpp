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

// Command-line entry point: iccbf <simulate|verify|boundary-grid|list-models>.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <optional>
#include <thread>

#include "iccbf/scenario.hpp"

namespace {

using iccbf::RunResult;
using iccbf::ScenarioConfig;

struct BatchOptions {
  std::vector<std::string> configs;
  std::string out;
  std::optional<std::uint64_t> seed;
  int parallel = 1;
};

using Runner = RunResult (*)(const ScenarioConfig&, const std::filesystem::path&);

// Output directory of one run: --out, else $ICCBF_OUT_DIR, else the config's
// output.directory. Batches of several configs get one subdirectory each.
std::filesystem::path output_dir(const BatchOptions& b, const ScenarioConfig& c, const std::string& config_path) {
  std::filesystem::path base;
  if (!b.out.empty()) {
    base = b.out;
  } else if (const char* env = std::getenv("ICCBF_OUT_DIR"); env != nullptr && *env != '\0') {
    base = env;
  } else {
    return c.output_directory;
  }
  if (b.configs.size() > 1) base /= std::filesystem::path(config_path).stem();
  return base;
}

int run_one(const BatchOptions& b, const std::string& path, Runner runner, std::mutex& io) {
  ScenarioConfig config;
  try {
    config = iccbf::load_config(path);
    if (b.seed && config.verify) config.verify->seed = *b.seed;
  } catch (const iccbf::ConfigError& e) {
    std::lock_guard lock(io);
    std::cerr << "config error: " << e.what() << "\n";
    return iccbf::kExitConfigError;
  }
  try {
    const std::filesystem::path dir = output_dir(b, config, path);
    const RunResult r = runner(config, dir);
    std::lock_guard lock(io);
    std::cout << path << ": " << r.message << "\n";
    for (const auto& f : r.files) std::cout << "  wrote " << f.string() << "\n";
    return r.exit_code;
  } catch (const iccbf::ConfigError& e) {
    std::lock_guard lock(io);
    std::cerr << "config error: " << path << ": " << e.what() << "\n";
    return iccbf::kExitConfigError;
  } catch (const std::exception& e) {
    std::lock_guard lock(io);
    std::cerr << "error: " << path << ": " << e.what() << "\n";
    return iccbf::kExitFailure;
  }
}

// Exit code of a batch: 2 if any config was rejected, else 1 if any run
// failed, else 0.
int run_batch(const BatchOptions& b, Runner runner) {
  std::vector<int> codes(b.configs.size(), 0);
  std::mutex io;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < b.configs.size(); i = next++) codes[i] = run_one(b, b.configs[i], runner, io);
  };
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, b.parallel)), b.configs.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  int code = iccbf::kExitOk;
  for (int c : codes) {
    if (c == iccbf::kExitConfigError) return c;
    code = std::max(code, c);
  }
  return code;
}

void add_batch_options(CLI::App* cmd, BatchOptions& b) {
  cmd->add_option("-c,--config", b.configs, "Scenario file(s)")->required()->check(CLI::ExistingFile);
  cmd->add_option("-o,--out", b.out, "Output directory (overrides $ICCBF_OUT_DIR and the config)");
  cmd->add_option("--seed", b.seed, "Override verify.seed");
  cmd->add_option("--parallel", b.parallel, "Scenarios run concurrently")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Input constrained control barrier functions: simulation, certification and boundary diagnostics"};
  app.require_subcommand(1);

  BatchOptions sim_opts;
  BatchOptions verify_opts;
  BatchOptions grid_opts;
  CLI::App* sim = app.add_subcommand("simulate", "Closed-loop simulation");
  CLI::App* verify = app.add_subcommand("verify", "Certify the barrier chain over the verify domain");
  CLI::App* grid = app.add_subcommand("boundary-grid", "Label grid nodes of every level set and of C*");
  CLI::App* list = app.add_subcommand("list-models", "List built-in models and their parameters");
  add_batch_options(sim, sim_opts);
  add_batch_options(verify, verify_opts);
  add_batch_options(grid, grid_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? iccbf::kExitOk : iccbf::kExitConfigError;
  }

  if (list->parsed()) {
    iccbf::write_model_list(std::cout);
    return iccbf::kExitOk;
  }
  if (sim->parsed()) return run_batch(sim_opts, &iccbf::run_simulate);
  if (verify->parsed()) return run_batch(verify_opts, &iccbf::run_verify);
  return run_batch(grid_opts, &iccbf::run_boundary_grid);
}
