// Copyright 2026 The posg-occupancy Authors.
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

// posg: parse, solve, evaluate, verify and sweep POSG models.

#include <chrono>
#include <filesystem>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "posg/error.hpp"
#include "posg/evaluate.hpp"
#include "posg/format.hpp"
#include "posg/model.hpp"
#include "posg/occupancy.hpp"
#include "posg/parse.hpp"
#include "posg/policies.hpp"
#include "posg/rng.hpp"
#include "posg/solve.hpp"
#include "posg/verify.hpp"

namespace {

enum Exit {
  kOk = 0,
  kPropertyFailure = 1,
  kParse = 2,
  kCap = 3,
  kUnknownSuite = 4,
  kBadSweep = 5,
};

struct Flags {
  std::string model_path;
  std::string criterion;
  int horizon = 0;
  std::uint64_t seed = 0;
  std::vector<double> start;
  std::optional<double> tolerance;
  std::optional<std::uint64_t> cap;
  std::string out;
  // verify
  std::vector<std::string> suites{"all"};
  int samples = 100;
  bool corrupt = false;
  // sweep
  int grid = 101;
  // evaluate
  std::int64_t episodes = 0;
  bool pure = false;
};

// Model with the command-line overrides applied.
posg::PosgModel load(const Flags& f) {
  posg::PosgModel m = posg::load_posg(f.model_path);
  if (!f.criterion.empty()) {
    m = posg::with_criterion(m, posg::parse_criterion(f.criterion));
  }
  if (f.horizon > 0) m = posg::with_horizon(m, f.horizon);
  if (!f.start.empty()) m = posg::with_start(m, f.start);
  return m;
}

posg::SolveOptions solve_options(const Flags& f) {
  posg::SolveOptions o;
  if (f.cap) {
    o.agent_cap = *f.cap;
    o.joint_cap = std::max(o.joint_cap, *f.cap);
  }
  if (f.tolerance) o.tolerance = *f.tolerance;
  return o;
}

void write_output(const Flags& f, const std::string& text) {
  if (f.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(f.out, std::ios::binary);
  if (!os) throw posg::PosgError("cannot write '" + f.out + "'");
  os << text;
}

int cmd_parse(const Flags& f) {
  const posg::PosgModel m = load(f);
  nlohmann::ordered_json j;
  j["agents"] = m.n_agents;
  j["states"] = m.num_states();
  j["public_observations"] = m.num_public_obs();
  std::vector<int> actions, obs;
  for (int i = 0; i < m.n_agents; ++i) {
    actions.push_back(m.num_actions(i));
    obs.push_back(m.num_private_obs(i));
  }
  j["actions"] = actions;
  j["private_observations"] = obs;
  j["discount"] = m.discount;
  j["horizon"] = m.horizon;
  j["criterion"] = std::string(posg::criterion_name(m.criterion));
  std::vector<std::string> start;
  for (double p : m.start) start.push_back(posg::format_double(p));
  j["start"] = start;
  std::cout << j.dump() << "\n";
  return kOk;
}

int cmd_solve(const Flags& f) {
  const posg::PosgModel m = load(f);
  const auto begin = std::chrono::steady_clock::now();
  const posg::Equilibrium eq = posg::solve(m, m.horizon, solve_options(f));
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - begin)
                        .count();
  nlohmann::ordered_json j;
  j["criterion"] = std::string(posg::criterion_name(eq.criterion));
  j["horizon"] = m.horizon;
  std::vector<std::string> values;
  for (double v : eq.values) values.push_back(posg::format_double(v));
  j["values"] = values;
  auto mixtures = nlohmann::ordered_json::array();
  for (const auto& mixture : eq.mixtures) {
    nlohmann::ordered_json agent = nlohmann::ordered_json::object();
    for (const auto& [k, w] : mixture) {
      agent[std::to_string(k)] = posg::format_double(w);
    }
    mixtures.push_back(agent);
  }
  j["mixtures"] = mixtures;
  j["method"] = eq.method;
  j["iterations"] = eq.iterations;
  j["residual"] = posg::format_double(eq.residual);
  j["runtime_ms"] = posg::format_double(ms);
  std::cout << j.dump() << "\n";
  return kOk;
}

int cmd_evaluate(const Flags& f) {
  const posg::PosgModel m = load(f);
  posg::Rng rng(posg::stream_seed(f.seed, 0));
  posg::JointPolicy policy;
  for (int i = 0; i < m.n_agents; ++i) {
    policy.push_back(f.pure ? posg::random_pure_policy(m, i, m.horizon, rng)
                            : posg::random_policy(m, i, m.horizon, rng));
  }
  std::optional<posg::SimResult> sim;
  if (f.episodes > 0) sim = posg::simulate(m, policy, f.episodes, f.seed);
  const posg::OccupancyState s0 = posg::initial_occupancy(m);
  std::ostringstream os;
  os << "agent,value,bellman_residual" << (sim ? ",sim_mean,sim_std_error" : "")
     << "\n";
  for (int i = 0; i < m.n_agents; ++i) {
    const auto tables = posg::evaluate_history(m, policy, i);
    os << i + 1 << ","
       << posg::format_double(posg::evaluate_occupancy(m, policy, s0, i)) << ","
       << posg::format_double(posg::bellman_residual(m, policy, tables));
    if (sim) {
      os << "," << posg::format_double(sim->mean[i]) << ","
         << posg::format_double(sim->std_error[i]);
    }
    os << "\n";
  }
  write_output(f, os.str());
  return kOk;
}

int cmd_verify(const Flags& f) {
  for (const auto& s : f.suites) {
    if (!posg::is_known_suite(s)) {
      std::cerr << "posg: unknown suite '" << s << "'\n";
      return kUnknownSuite;
    }
  }
  const posg::PosgModel m = load(f);
  posg::VerifyOptions o;
  o.samples = f.samples;
  o.seed = f.seed;
  o.corrupt = f.corrupt;
  o.solve = solve_options(f);
  if (f.tolerance) {
    o.exact_tolerance = *f.tolerance;
    o.solver_tolerance = *f.tolerance;
  }
  const std::string fixture =
      std::filesystem::path(f.model_path).filename().string();
  const auto reports = posg::run_suite(m, fixture, f.suites, o);
  bool ok = true;
  std::ostringstream os;
  for (const auto& r : reports) {
    os << r.to_json() << "\n";
    if (!r.diagnostic && !r.passed) ok = false;
  }
  write_output(f, os.str());
  return ok ? kOk : kPropertyFailure;
}

int cmd_sweep(const Flags& f) {
  if (f.grid < 2) {
    std::cerr << "posg: sweep needs --grid >= 2\n";
    return kBadSweep;
  }
  const posg::PosgModel m = load(f);
  if (m.num_states() != 2) {
    std::cerr << "posg: grid sweep needs a 2-state model, got "
              << m.num_states() << " states\n";
    return kBadSweep;
  }
  if (m.criterion == posg::Criterion::kGeneral) {
    std::cerr << "posg: sweep needs a zerosum, common or stackelberg model\n";
    return kBadSweep;
  }
  const posg::SolveOptions options = solve_options(f);
  const bool components = m.criterion == posg::Criterion::kZeroSum;
  std::ostringstream os;
  os << "belief,value";
  std::vector<std::string> rows;
  int leaders = 0;
  for (int k = 0; k < f.grid; ++k) {
    const double b = static_cast<double>(k) / (f.grid - 1);
    const posg::PosgModel mb = posg::with_start(m, {b, 1.0 - b});
    const posg::OccupancyState s = posg::initial_occupancy(mb);
    const posg::MasterGame game(mb, s, options);
    const posg::Equilibrium eq = game.solve(m.criterion);
    std::string row = posg::format_double(b) + "," +
                      posg::format_double(eq.values[0]);
    if (components) {
      // Concave component of each pure leader policy.
      const posg::MatrixGame a = game.normal_form(0);
      leaders = a.rows;
      for (int r = 0; r < a.rows; ++r) {
        double lowest = a.at(r, 0);
        for (int c = 1; c < a.cols; ++c) lowest = std::min(lowest, a.at(r, c));
        row += "," + posg::format_double(lowest);
      }
    }
    rows.push_back(row);
  }
  for (int r = 0; r < leaders; ++r) os << ",leader" << r;
  os << "\n";
  for (const auto& row : rows) os << row << "\n";
  write_output(f, os.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Occupancy-state solvers and checks for finite-horizon POSGs"};
  app.require_subcommand(1);
  Flags f;
  app.add_option("--seed", f.seed, "random seed")->capture_default_str();
  app.add_option("--tolerance", f.tolerance, "tolerance override");
  app.add_option("--cap", f.cap, "per-agent enumeration cap");

  auto model_options = [&](CLI::App* cmd) {
    cmd->add_option("model", f.model_path, "model file")->required();
    cmd->add_option("--criterion", f.criterion,
                    "zerosum, common, stackelberg or general");
    cmd->add_option("--horizon", f.horizon, "planning horizon");
    cmd->add_option("--start", f.start, "start belief")->expected(1, -1);
    cmd->add_option("--seed", f.seed, "random seed");
    cmd->add_option("--tolerance", f.tolerance, "tolerance override");
    cmd->add_option("--cap", f.cap, "per-agent enumeration cap");
  };

  auto* parse = app.add_subcommand("parse", "parse a model and print a summary");
  model_options(parse);
  auto* solve = app.add_subcommand("solve", "solve from the start belief");
  model_options(solve);
  auto* evaluate =
      app.add_subcommand("evaluate", "evaluate a seeded random joint policy");
  model_options(evaluate);
  evaluate->add_option("--episodes", f.episodes, "Monte Carlo episodes");
  evaluate->add_flag("--pure", f.pure, "draw pure policies");
  evaluate->add_option("--out", f.out, "output CSV path");
  auto* verify = app.add_subcommand("verify", "run verification suites");
  model_options(verify);
  verify->add_option("--suite", f.suites,
                     "sufficiency, best-response, slave, master, lipschitz "
                     "or all")
      ->expected(1, -1);
  verify->add_option("--samples", f.samples, "samples per property");
  verify->add_flag("--corrupt", f.corrupt,
                   "inject faults into the checked computations");
  verify->add_option("--out", f.out, "output path");
  auto* sweep = app.add_subcommand("sweep", "value over a 2-state belief grid");
  model_options(sweep);
  sweep->add_option("--grid", f.grid, "number of belief points");
  sweep->add_option("--out", f.out, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kParse;
  }

  try {
    if (*parse) return cmd_parse(f);
    if (*solve) return cmd_solve(f);
    if (*evaluate) return cmd_evaluate(f);
    if (*verify) return cmd_verify(f);
    if (*sweep) return cmd_sweep(f);
  } catch (const posg::CapExceededError& e) {
    std::cerr << "posg: " << e.what() << "\n";
    return kCap;
  } catch (const std::exception& e) {
    std::cerr << "posg: " << e.what() << "\n";
    return kParse;
  }
  return kOk;
}
