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

#include "iccbf/config.hpp"

#include <yaml-cpp/yaml.h>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "iccbf/models.hpp"

namespace iccbf {
namespace {

// Exponents of metre, kilogram, second and radian.
using Dimension = std::array<int, 4>;

struct Unit {
  double factor = 1.0;
  Dimension dim{0, 0, 0, 0};
};

const std::map<std::string, Unit>& unit_table() {
  static const std::map<std::string, Unit> table = {
      {"m", {1.0, {1, 0, 0, 0}}},
      {"km", {1e3, {1, 0, 0, 0}}},
      {"cm", {1e-2, {1, 0, 0, 0}}},
      {"mm", {1e-3, {1, 0, 0, 0}}},
      {"kg", {1.0, {0, 1, 0, 0}}},
      {"g", {1e-3, {0, 1, 0, 0}}},
      {"s", {1.0, {0, 0, 1, 0}}},
      {"min", {60.0, {0, 0, 1, 0}}},
      {"h", {3600.0, {0, 0, 1, 0}}},
      {"N", {1.0, {1, 1, -2, 0}}},
      {"kN", {1e3, {1, 1, -2, 0}}},
      {"mN", {1e-3, {1, 1, -2, 0}}},
      {"rad", {1.0, {0, 0, 0, 1}}},
      {"deg", {std::numbers::pi / 180.0, {0, 0, 0, 1}}},
      {"1", {1.0, {0, 0, 0, 0}}},
  };
  return table;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

Unit parse_unit(const std::string& expr) {
  const std::string text = trim(expr);
  if (text.empty()) throw ConfigError("empty unit expression");
  Unit out;
  std::size_t pos = 0;
  int sign = 1;
  while (pos <= text.size()) {
    const std::size_t next = text.find_first_of("*/", pos);
    const std::string term = trim(text.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
    std::string name = term;
    int power = 1;
    if (const auto caret = term.find('^'); caret != std::string::npos) {
      name = trim(term.substr(0, caret));
      const std::string p = trim(term.substr(caret + 1));
      const auto res = std::from_chars(p.data(), p.data() + p.size(), power);
      if (res.ec != std::errc() || res.ptr != p.data() + p.size()) {
        throw ConfigError("bad unit power in '" + expr + "'");
      }
    }
    const auto it = unit_table().find(name);
    if (it == unit_table().end()) throw ConfigError("unknown unit '" + name + "' in '" + expr + "'");
    out.factor *= std::pow(it->second.factor, sign * power);
    for (std::size_t k = 0; k < 4; ++k) out.dim[k] += sign * power * it->second.dim[k];
    if (next == std::string::npos) break;
    sign = text[next] == '/' ? -1 : 1;
    pos = next + 1;
  }
  return out;
}

std::string dimension_text(const Dimension& d) {
  static const char* names[4] = {"m", "kg", "s", "rad"};
  std::string s;
  for (std::size_t k = 0; k < 4; ++k) {
    if (d[k] == 0) continue;
    if (!s.empty()) s += "*";
    s += names[k];
    if (d[k] != 1) s += "^" + std::to_string(d[k]);
  }
  return s.empty() ? "1" : s;
}

// ---------------------------------------------------------------------------
// YAML helpers

void check_keys(const YAML::Node& node, const std::string& where, const std::set<std::string>& allowed) {
  if (!node.IsMap()) throw ConfigError(where + ": expected a mapping");
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& where) {
  if (!node.IsScalar()) throw ConfigError(where + ": expected a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(where + ": cannot read '" + node.Scalar() + "'");
  }
}

double number(const YAML::Node& node, const std::string& where) {
  const double v = scalar<double>(node, where);
  if (!std::isfinite(v)) throw ConfigError(where + ": must be finite");
  return v;
}

// A number in `unit`, or a string "<value> <unit>" converted to it.
double quantity(const YAML::Node& node, const std::string& where, const std::string& unit) {
  if (!node.IsScalar()) throw ConfigError(where + ": expected a scalar");
  double v = 0.0;
  const std::string& text = node.Scalar();
  try {
    v = node.as<double>();
  } catch (const YAML::Exception&) {
    try {
      v = convert_quantity(text, unit);
    } catch (const ConfigError& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  if (!std::isfinite(v)) throw ConfigError(where + ": must be finite");
  return v;
}

std::vector<double> number_list(const YAML::Node& node, const std::string& where) {
  if (!node.IsSequence()) throw ConfigError(where + ": expected a list");
  std::vector<double> out;
  for (std::size_t i = 0; i < node.size(); ++i) out.push_back(number(node[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

const YAML::Node required(const YAML::Node& node, const std::string& key, const std::string& where) {
  const YAML::Node child = node[key];
  if (!child) throw ConfigError(where + ": missing '" + key + "'");
  return child;
}

template <typename T>
T positive_count(const YAML::Node& node, const std::string& where) {
  const long long v = scalar<long long>(node, where);
  if (v <= 0) throw ConfigError(where + ": must be positive");
  return static_cast<T>(v);
}

// ---------------------------------------------------------------------------
// Sections

ModelConfig parse_model(const YAML::Node& node) {
  check_keys(node, "model", {"name", "parameters"});
  ModelConfig m;
  m.name = scalar<std::string>(required(node, "name", "model"), "model.name");
  const auto names = builtin_model_names();
  if (std::find(names.begin(), names.end(), m.name) == names.end()) {
    throw ConfigError("model.name: unknown model '" + m.name + "'");
  }
  if (const YAML::Node params = node["parameters"]) {
    if (!params.IsMap()) throw ConfigError("model.parameters: expected a mapping");
    const std::vector<ParameterSpec> specs = builtin_parameters(m.name);
    for (const auto& kv : params) {
      const std::string key = kv.first.as<std::string>();
      const auto spec = std::find_if(specs.begin(), specs.end(), [&](const ParameterSpec& s) { return s.name == key; });
      if (spec == specs.end()) throw ConfigError("model.parameters: unknown parameter '" + key + "' for " + m.name);
      m.parameters[key] = quantity(kv.second, "model.parameters." + key, spec->unit);
    }
  }
  return m;
}

AlphaConfig parse_alpha(const YAML::Node& node, const std::string& where) {
  check_keys(node, where, {"kind", "gain", "exponent"});
  AlphaConfig a;
  a.kind = scalar<std::string>(required(node, "kind", where), where + ".kind");
  a.gain = number(required(node, "gain", where), where + ".gain");
  if (a.kind == "power") {
    a.exponent = number(required(node, "exponent", where), where + ".exponent");
  } else if (node["exponent"]) {
    throw ConfigError(where + ": exponent is only valid for kind 'power'");
  }
  if (a.kind != "linear" && a.kind != "sqrt" && a.kind != "power") {
    throw ConfigError(where + ".kind: expected linear, sqrt or power");
  }
  if (!(a.gain > 0.0)) throw ConfigError(where + ".gain: must be positive");
  if (!(a.exponent > 0.0)) throw ConfigError(where + ".exponent: must be positive");
  return a;
}

ChainConfig parse_chain(const YAML::Node& node) {
  check_keys(node, "chain", {"levels", "alphas", "margin"});
  ChainConfig c;
  const YAML::Node alphas = required(node, "alphas", "chain");
  if (!alphas.IsSequence() || alphas.size() == 0) throw ConfigError("chain.alphas: expected a non-empty list");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    c.alphas.push_back(parse_alpha(alphas[i], "chain.alphas[" + std::to_string(i) + "]"));
  }
  if (const YAML::Node levels = node["levels"]) {
    const long long n = scalar<long long>(levels, "chain.levels");
    if (n < 0 || static_cast<std::size_t>(n) + 1 != c.alphas.size()) {
      throw ConfigError("chain.levels: N = " + std::to_string(n) + " needs N + 1 = " + std::to_string(n + 1) +
                        " alphas, got " + std::to_string(c.alphas.size()));
    }
  }
  if (const YAML::Node margin = node["margin"]) c.margin = number(margin, "chain.margin");
  return c;
}

ControllerConfig parse_controller(const YAML::Node& node) {
  check_keys(node, "controller", {"kind", "clf_rate", "delta_penalty", "k_penalty", "cbf_gain", "control_scale"});
  ControllerConfig c;
  if (node["kind"]) c.kind = scalar<std::string>(node["kind"], "controller.kind");
  try {
    controller_kind_from_string(c.kind);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("controller.kind: ") + e.what());
  }
  if (node["clf_rate"]) c.clf_rate = number(node["clf_rate"], "controller.clf_rate");
  if (node["delta_penalty"]) c.delta_penalty = number(node["delta_penalty"], "controller.delta_penalty");
  if (node["k_penalty"]) c.k_penalty = number(node["k_penalty"], "controller.k_penalty");
  if (node["cbf_gain"]) c.cbf_gain = number(node["cbf_gain"], "controller.cbf_gain");
  if (node["control_scale"]) c.control_scale = number(node["control_scale"], "controller.control_scale");
  return c;
}

SimConfig parse_sim(const YAML::Node& node) {
  check_keys(node, "sim", {"x0", "t_end", "dt", "goal_range", "per_stage_control", "eps_num"});
  SimConfig s;
  s.x0 = number_list(required(node, "x0", "sim"), "sim.x0");
  if (node["t_end"]) s.t_end = quantity(node["t_end"], "sim.t_end", "s");
  if (node["dt"]) s.dt = quantity(node["dt"], "sim.dt", "s");
  if (node["goal_range"]) s.goal_range = quantity(node["goal_range"], "sim.goal_range", "m");
  if (node["per_stage_control"]) s.per_stage_control = scalar<bool>(node["per_stage_control"], "sim.per_stage_control");
  if (node["eps_num"]) s.eps_num = number(node["eps_num"], "sim.eps_num");
  if (!(s.t_end > 0.0)) throw ConfigError("sim.t_end: must be positive");
  if (!(s.dt > 0.0)) throw ConfigError("sim.dt: must be positive");
  return s;
}

VerifyConfig parse_verify(const YAML::Node& node) {
  check_keys(node, "verify", {"domain", "budget", "starts", "iterations", "seed", "threads", "tolerance",
                              "nagumo_samples", "nagumo_seed"});
  VerifyConfig v;
  const YAML::Node domain = required(node, "domain", "verify");
  check_keys(domain, "verify.domain", {"lower", "upper"});
  v.lower = number_list(required(domain, "lower", "verify.domain"), "verify.domain.lower");
  v.upper = number_list(required(domain, "upper", "verify.domain"), "verify.domain.upper");
  if (node["budget"]) v.budget = positive_count<std::size_t>(node["budget"], "verify.budget");
  if (node["starts"]) v.starts = static_cast<int>(scalar<long long>(node["starts"], "verify.starts"));
  if (node["iterations"]) v.iterations = static_cast<int>(scalar<long long>(node["iterations"], "verify.iterations"));
  if (node["seed"]) v.seed = scalar<std::uint64_t>(node["seed"], "verify.seed");
  if (node["threads"]) v.threads = positive_count<int>(node["threads"], "verify.threads");
  if (node["tolerance"]) v.tolerance = number(node["tolerance"], "verify.tolerance");
  if (node["nagumo_samples"]) {
    v.nagumo_samples = static_cast<std::size_t>(scalar<long long>(node["nagumo_samples"], "verify.nagumo_samples"));
  }
  if (node["nagumo_seed"]) v.nagumo_seed = scalar<std::uint64_t>(node["nagumo_seed"], "verify.nagumo_seed");
  if (v.budget < 1000) throw ConfigError("verify.budget: must be at least 1000");
  if (v.starts < 0 || v.iterations < 0) throw ConfigError("verify: starts and iterations must be non-negative");
  if (v.lower.size() != v.upper.size()) throw ConfigError("verify.domain: lower and upper differ in length");
  for (std::size_t j = 0; j < v.lower.size(); ++j) {
    if (!(v.lower[j] < v.upper[j])) throw ConfigError("verify.domain: need lower < upper in every coordinate");
  }
  return v;
}

GridConfig parse_grid(const YAML::Node& node) {
  check_keys(node, "grid", {"axes", "lower", "upper", "resolution", "base"});
  GridConfig g;
  if (const YAML::Node axes = node["axes"]) {
    if (!axes.IsSequence() || axes.size() != 2) throw ConfigError("grid.axes: expected two state indices");
    const long long ax = scalar<long long>(axes[0], "grid.axes[0]");
    const long long ay = scalar<long long>(axes[1], "grid.axes[1]");
    if (ax < 0 || ay < 0 || ax == ay) throw ConfigError("grid.axes: need two distinct non-negative indices");
    g.axis_x = static_cast<std::size_t>(ax);
    g.axis_y = static_cast<std::size_t>(ay);
  }
  g.lower = number_list(required(node, "lower", "grid"), "grid.lower");
  g.upper = number_list(required(node, "upper", "grid"), "grid.upper");
  if (g.lower.size() != 2 || g.upper.size() != 2) throw ConfigError("grid: lower and upper need two entries");
  if (!(g.lower[0] < g.upper[0]) || !(g.lower[1] < g.upper[1])) throw ConfigError("grid: need lower < upper");
  if (const YAML::Node res = node["resolution"]) {
    if (!res.IsSequence() || res.size() != 2) throw ConfigError("grid.resolution: expected [nx, ny]");
    g.nx = positive_count<std::size_t>(res[0], "grid.resolution[0]");
    g.ny = positive_count<std::size_t>(res[1], "grid.resolution[1]");
    if (g.nx < 2 || g.ny < 2) throw ConfigError("grid.resolution: need at least 2 nodes per axis");
  }
  if (node["base"]) g.base = number_list(node["base"], "grid.base");
  return g;
}

// Checks that need the model: dimensions, chain depth, controller needs.
void validate(const ScenarioConfig& c) {
  std::shared_ptr<const BarrierChain> chain;
  try {
    chain = build_chain(c);
    Controller(chain, c.controller.build());
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  const std::size_t n = chain->system().state_dim();
  if (c.sim) {
    if (c.sim->x0.size() != n) throw ConfigError("sim.x0: expected " + std::to_string(n) + " entries");
    if (!chain->system().state_box().contains(c.sim->x0)) throw ConfigError("sim.x0: outside the model's state box");
    if (c.sim->goal_range && !chain->system().goal_distance(c.sim->x0)) {
      throw ConfigError("sim.goal_range: model " + c.model.name + " has no goal");
    }
  }
  if (c.verify && c.verify->lower.size() != n) {
    throw ConfigError("verify.domain: expected " + std::to_string(n) + " entries");
  }
  if (c.grid) {
    if (c.grid->axis_x >= n || c.grid->axis_y >= n) throw ConfigError("grid.axes: index beyond the state dimension");
    if (!c.grid->base.empty() && c.grid->base.size() != n) {
      throw ConfigError("grid.base: expected " + std::to_string(n) + " entries");
    }
  }
}

void emit_list(YAML::Emitter& out, const std::vector<double>& v) {
  out << YAML::Flow << YAML::BeginSeq;
  for (double x : v) out << x;
  out << YAML::EndSeq;
}

}  // namespace

double convert_quantity(const std::string& text, const std::string& target) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), value);
  if (res.ec != std::errc()) throw ConfigError("'" + text + "' does not start with a number");
  const std::string unit_text = trim(std::string(res.ptr, t.data() + t.size()));
  const Unit to = parse_unit(target);
  if (unit_text.empty()) return value;
  const Unit from = parse_unit(unit_text);
  if (from.dim != to.dim) {
    throw ConfigError("unit '" + unit_text + "' has dimension " + dimension_text(from.dim) + ", expected " +
                      dimension_text(to.dim) + " (" + target + ")");
  }
  return value * from.factor / to.factor;
}

ClassKappa AlphaConfig::build() const {
  if (kind == "linear") return ClassKappa::linear(gain);
  if (kind == "sqrt") return ClassKappa::sqrt(gain);
  if (kind == "power") return ClassKappa::power(gain, exponent);
  throw ConfigError("unknown class-K kind '" + kind + "'");
}

ControllerSpec ControllerConfig::build() const {
  ControllerSpec s;
  s.kind = controller_kind_from_string(kind);
  s.clf_rate = clf_rate;
  s.delta_penalty = delta_penalty;
  s.k_penalty = k_penalty;
  s.cbf_gain = cbf_gain;
  s.control_scale = control_scale;
  return s;
}

SimulationOptions SimConfig::build() const {
  SimulationOptions o;
  o.t_end = t_end;
  o.dt = dt;
  o.goal_range = goal_range;
  o.per_stage_control = per_stage_control;
  o.eps_num = eps_num;
  return o;
}

VerifyOptions VerifyConfig::build() const {
  VerifyOptions o;
  o.domain = StateBox{lower, upper};
  o.budget = budget;
  o.starts = starts;
  o.iterations = iterations;
  o.seed = seed;
  o.threads = threads;
  o.tolerance = tolerance;
  return o;
}

Grid2D GridConfig::build(std::size_t state_dim) const {
  Grid2D g;
  g.axis_x = axis_x;
  g.axis_y = axis_y;
  g.x_lower = lower.at(0);
  g.y_lower = lower.at(1);
  g.x_upper = upper.at(0);
  g.y_upper = upper.at(1);
  g.nx = nx;
  g.ny = ny;
  g.base = base.empty() ? std::vector<double>(state_dim, 0.0) : base;
  return g;
}

ScenarioConfig parse_config(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("YAML syntax error: ") + e.what());
  }
  try {
    check_keys(root, "config", {"model", "chain", "controller", "sim", "verify", "grid", "output"});
    ScenarioConfig c;
    c.model = parse_model(required(root, "model", "config"));
    c.chain = parse_chain(required(root, "chain", "config"));
    if (root["controller"]) c.controller = parse_controller(root["controller"]);
    if (root["sim"]) c.sim = parse_sim(root["sim"]);
    if (root["verify"]) c.verify = parse_verify(root["verify"]);
    if (root["grid"]) c.grid = parse_grid(root["grid"]);
    if (const YAML::Node out = root["output"]) {
      check_keys(out, "output", {"directory"});
      c.output_directory = scalar<std::string>(required(out, "directory", "output"), "output.directory");
    }
    validate(c);
    return c;
  } catch (const YAML::Exception& e) {
    throw ConfigError(e.what());
  }
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_config(text.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string emit_config(const ScenarioConfig& c) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "model" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << c.model.name;
  if (!c.model.parameters.empty()) {
    out << YAML::Key << "parameters" << YAML::Value << YAML::BeginMap;
    for (const auto& [k, v] : c.model.parameters) out << YAML::Key << k << YAML::Value << v;
    out << YAML::EndMap;
  }
  out << YAML::EndMap;

  out << YAML::Key << "chain" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "levels" << YAML::Value << c.chain.alphas.size() - 1;
  out << YAML::Key << "alphas" << YAML::Value << YAML::BeginSeq;
  for (const AlphaConfig& a : c.chain.alphas) {
    out << YAML::Flow << YAML::BeginMap << YAML::Key << "kind" << YAML::Value << a.kind;
    out << YAML::Key << "gain" << YAML::Value << a.gain;
    if (a.kind == "power") out << YAML::Key << "exponent" << YAML::Value << a.exponent;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::Key << "margin" << YAML::Value << c.chain.margin;
  out << YAML::EndMap;

  const ControllerConfig& k = c.controller;
  out << YAML::Key << "controller" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "kind" << YAML::Value << k.kind;
  out << YAML::Key << "clf_rate" << YAML::Value << k.clf_rate;
  out << YAML::Key << "delta_penalty" << YAML::Value << k.delta_penalty;
  out << YAML::Key << "k_penalty" << YAML::Value << k.k_penalty;
  out << YAML::Key << "cbf_gain" << YAML::Value << k.cbf_gain;
  out << YAML::Key << "control_scale" << YAML::Value << k.control_scale;
  out << YAML::EndMap;

  if (c.sim) {
    const SimConfig& s = *c.sim;
    out << YAML::Key << "sim" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "x0" << YAML::Value;
    emit_list(out, s.x0);
    out << YAML::Key << "t_end" << YAML::Value << s.t_end;
    out << YAML::Key << "dt" << YAML::Value << s.dt;
    if (s.goal_range) out << YAML::Key << "goal_range" << YAML::Value << *s.goal_range;
    out << YAML::Key << "per_stage_control" << YAML::Value << s.per_stage_control;
    out << YAML::Key << "eps_num" << YAML::Value << s.eps_num;
    out << YAML::EndMap;
  }
  if (c.verify) {
    const VerifyConfig& v = *c.verify;
    out << YAML::Key << "verify" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "domain" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "lower" << YAML::Value;
    emit_list(out, v.lower);
    out << YAML::Key << "upper" << YAML::Value;
    emit_list(out, v.upper);
    out << YAML::EndMap;
    out << YAML::Key << "budget" << YAML::Value << v.budget;
    out << YAML::Key << "starts" << YAML::Value << v.starts;
    out << YAML::Key << "iterations" << YAML::Value << v.iterations;
    out << YAML::Key << "seed" << YAML::Value << v.seed;
    out << YAML::Key << "threads" << YAML::Value << v.threads;
    out << YAML::Key << "tolerance" << YAML::Value << v.tolerance;
    out << YAML::Key << "nagumo_samples" << YAML::Value << v.nagumo_samples;
    out << YAML::Key << "nagumo_seed" << YAML::Value << v.nagumo_seed;
    out << YAML::EndMap;
  }
  if (c.grid) {
    const GridConfig& g = *c.grid;
    out << YAML::Key << "grid" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "axes" << YAML::Value << YAML::Flow << YAML::BeginSeq << g.axis_x << g.axis_y << YAML::EndSeq;
    out << YAML::Key << "lower" << YAML::Value;
    emit_list(out, g.lower);
    out << YAML::Key << "upper" << YAML::Value;
    emit_list(out, g.upper);
    out << YAML::Key << "resolution" << YAML::Value << YAML::Flow << YAML::BeginSeq << g.nx << g.ny << YAML::EndSeq;
    if (!g.base.empty()) {
      out << YAML::Key << "base" << YAML::Value;
      emit_list(out, g.base);
    }
    out << YAML::EndMap;
  }
  out << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "directory" << YAML::Value << YAML::DoubleQuoted << c.output_directory;
  out << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

std::shared_ptr<const BarrierChain> build_chain(const ScenarioConfig& config) {
  BuiltinModel m = builtin(config.model.name, config.model.parameters);
  std::vector<ClassKappa> alphas;
  for (const AlphaConfig& a : config.chain.alphas) alphas.push_back(a.build());
  return std::make_shared<const BarrierChain>(m.system, m.inputs, std::move(alphas), config.chain.margin);
}

}  // namespace iccbf
