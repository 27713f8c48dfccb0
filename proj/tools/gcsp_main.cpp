// Copyright 2026 The gcsp Authors
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


// Command-line front end over the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gcsp/gcsp.h"

namespace {

using Json = nlohmann::ordered_json;

// Carries a status out of a failed C call.
struct Failure {
  gcsp_status status;
  std::string message;
};

void Check(gcsp_status status) {
  if (status != GCSP_OK) throw Failure{status, gcsp_last_error()};
}

void InputFailure(const std::string& message) { throw Failure{GCSP_ERR_INPUT, message}; }

struct StringDeleter {
  void operator()(char* s) const { gcsp_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct InstanceDeleter {
  void operator()(gcsp_instance* p) const { gcsp_instance_free(p); }
};
struct SolutionDeleter {
  void operator()(gcsp_solution* p) const { gcsp_solution_free(p); }
};
struct GadgetDeleter {
  void operator()(gcsp_gadget* p) const { gcsp_gadget_free(p); }
};
using Instance = std::unique_ptr<gcsp_instance, InstanceDeleter>;
using Solution = std::unique_ptr<gcsp_solution, SolutionDeleter>;
using Gadget = std::unique_ptr<gcsp_gadget, GadgetDeleter>;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) InputFailure("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.flush();
  if (!out) InputFailure("cannot write " + path);
}

// Writes to `path`, or to stdout when `path` is empty or "-".
void Emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    WriteFile(path, text);
  }
}

Instance LoadInstance(const std::string& path) {
  gcsp_instance* p = nullptr;
  Check(gcsp_instance_load(path.c_str(), &p));
  return Instance(p);
}

Solution LoadSolution(const std::string& path) {
  const std::string text = ReadFile(path);
  gcsp_solution* p = nullptr;
  Check(gcsp_solution_from_json(text.c_str(), &p));
  return Solution(p);
}

std::string Take(char* s) {
  OwnedString owned(s);
  return owned ? std::string(owned.get()) : std::string();
}

std::string Number(double x) {
  std::ostringstream s;
  s.precision(10);
  s << x;
  return s.str();
}

struct SolveArgs {
  std::string instance;
  int level = 2;
  std::string config;
  std::string out;
  std::string report;
};

void RunSolve(const SolveArgs& a, std::optional<std::uint64_t> seed) {
  Instance instance = LoadInstance(a.instance);
  Json config = a.config.empty() ? Json::object() : Json::parse(ReadFile(a.config));
  if (seed) config["seed"] = *seed;
  gcsp_solution* raw = nullptr;
  char* report = nullptr;
  Check(gcsp_solve(instance.get(), a.level, config.dump().c_str(), &raw, &report));
  Solution solution(raw);
  const std::string report_text = Take(report);
  std::string solution_text;
  {
    char* s = nullptr;
    Check(gcsp_solution_to_json(solution.get(), &s));
    solution_text = Take(s);
  }
  if (!a.out.empty()) WriteFile(a.out, solution_text);
  if (!a.report.empty()) WriteFile(a.report, report_text);
  const Json r = Json::parse(report_text);
  double objective = 0.0;
  Check(gcsp_solution_objective(solution.get(), instance.get(), &objective));
  std::cout << "objective " << Number(objective) << "\nstatus " << r.value("status", "")
            << "\niterations " << r.value("iterations", 0) << '\n';
  if (a.out.empty()) std::cout << solution_text;
}

struct RoundArgs {
  std::string solution;
  std::string instance;
  int trials = 32;
  double delta_cap = 1.0;
  double alpha = 0.05;
  int depth = 4;
  std::string strategy = "sampled";
  std::string out;
  std::string stats;
};

void RunRound(const RoundArgs& a, std::uint64_t seed) {
  Instance instance = LoadInstance(a.instance);
  Solution solution = LoadSolution(a.solution);
  Json config = {{"trials", a.trials}, {"seed", seed},    {"delta_cap", a.delta_cap},
                 {"alpha", a.alpha},   {"depth", a.depth}, {"strategy", a.strategy}};
  char* raw = nullptr;
  Check(gcsp_round(solution.get(), instance.get(), config.dump().c_str(), &raw));
  const std::string text = Take(raw);
  const Json r = Json::parse(text);
  std::ostringstream csv;
  csv << "trial,value\n";
  int t = 0;
  for (const auto& v : r.at("trial_values")) csv << t++ << ',' << v.dump() << '\n';
  if (!a.stats.empty()) WriteFile(a.stats, csv.str());
  Emit(a.out, text);
  if (!a.out.empty() && a.out != "-") {
    std::cout << "value " << r.at("best").at("value").dump() << '\n';
  }
}

struct LandscapeArgs {
  std::string payoff;
  int resolution = 200;
  int rounds = 40;
  std::vector<double> epsilons = {0.0025, 0.01, 0.04, 0.09};
  std::string out;
  std::string csv;
};

void RunLandscape(const LandscapeArgs& a) {
  char* raw = nullptr;
  if (a.payoff == "sqrt-eps") {
    Check(gcsp_sqrt_eps(a.epsilons.data(), static_cast<int>(a.epsilons.size()), a.resolution,
                        &raw));
  } else {
    const Json options = {{"resolution", a.resolution}, {"refinement_rounds", a.rounds}};
    Check(gcsp_landscape(a.payoff.c_str(), options.dump().c_str(),
                         a.csv.empty() ? nullptr : a.csv.c_str(), &raw));
  }
  Emit(a.out, Take(raw));
}

struct DictArgs {
  std::string solution;
  std::string instance;
  int r = 3;
  double epsilon = 0.1;
  double tau = 1.0;
  std::string mode = "boolean";
  bool soundness = false;
  std::string out;
  std::string completeness_out;
  std::string soundness_out;
  std::string soundness_csv;
};

void RunDict(const DictArgs& a) {
  Instance instance = LoadInstance(a.instance);
  Solution solution = LoadSolution(a.solution);
  gcsp_gadget* raw = nullptr;
  Check(gcsp_gadget_build(solution.get(), instance.get(), a.r, a.epsilon, &raw));
  Gadget gadget(raw);
  char* s = nullptr;
  if (!a.out.empty()) {
    Check(gcsp_gadget_to_json(gadget.get(), &s));
    WriteFile(a.out, Take(s));
  }
  Check(gcsp_gadget_completeness(gadget.get(), &s));
  const std::string completeness = Take(s);
  Emit(a.completeness_out, completeness);
  if (a.soundness || !a.soundness_out.empty() || !a.soundness_csv.empty()) {
    const Json options = {{"tau", a.tau}, {"mode", a.mode}};
    Check(gcsp_gadget_soundness(gadget.get(), options.dump().c_str(),
                                a.soundness_csv.empty() ? nullptr : a.soundness_csv.c_str(), &s));
    Emit(a.soundness_out, Take(s));
  }
}

struct BenchArgs {
  std::string config;
  std::string out;
  std::string csv;
};

void RunBench(const BenchArgs& a) {
  char* json = nullptr;
  char* csv = nullptr;
  Check(gcsp_bench(a.config.c_str(), &json, &csv));
  const std::string json_text = Take(json);
  const std::string csv_text = Take(csv);
  if (!a.out.empty()) WriteFile(a.out, json_text);
  Emit(a.csv, csv_text);
}

struct OracleArgs {
  std::string instance;
  bool unconstrained = false;
  std::string out;
};

void RunOracle(const OracleArgs& a) {
  Instance instance = LoadInstance(a.instance);
  char* raw = nullptr;
  Check(gcsp_brute_force(instance.get(), a.unconstrained ? 0 : 1, &raw));
  Emit(a.out, Take(raw));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cardinality-constrained CSP relaxation, rounding and certification toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(gcsp_version()));
  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed,
                 "Master seed; trial t uses SplitMix64(seed + (t + 1) * golden)")
      ->check(CLI::NonNegativeNumber);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve the moment relaxation of an instance");
  solve_cmd->add_option("instance", solve.instance, "Edge list or instance JSON")->required();
  solve_cmd->add_option("--level", solve.level, "Relaxation level")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--config", solve.config, "Solver settings (JSON)");
  solve_cmd->add_option("-o,--out", solve.out, "Solution file (JSON)");
  solve_cmd->add_option("--report", solve.report, "Solve report file (JSON)");

  RoundArgs round;
  auto* round_cmd = app.add_subcommand("round", "Condition, round and repair a solution");
  round_cmd->add_option("solution", round.solution, "Solution JSON")->required();
  round_cmd->add_option("-i,--instance", round.instance, "Instance the solution belongs to")
      ->required();
  round_cmd->add_option("--trials", round.trials, "Rounding trials")->check(CLI::PositiveNumber);
  round_cmd->add_option("--delta-cap", round.delta_cap, "Largest imbalance repair will fix");
  round_cmd->add_option("--alpha", round.alpha, "Target average mutual information");
  round_cmd->add_option("--depth", round.depth, "Conditioning depth");
  round_cmd->add_option("--strategy", round.strategy, "Conditioning strategy")
      ->check(CLI::IsMember({"sampled", "exhaustive"}));
  round_cmd->add_option("-o,--out", round.out, "Assignment file (JSON)");
  round_cmd->add_option("--stats", round.stats, "Per-trial values (CSV)");

  LandscapeArgs land;
  auto* land_cmd = app.add_subcommand("landscape", "Worst-case ratio certificate");
  land_cmd->add_option("payoff", land.payoff, "cut, 2sat or sqrt-eps")
      ->required()
      ->check(CLI::IsMember({"cut", "2sat", "sqrt-eps"}));
  land_cmd->add_option("--resolution", land.resolution, "Grid points per axis")
      ->check(CLI::PositiveNumber);
  land_cmd->add_option("--rounds", land.rounds, "Refinement rounds");
  land_cmd->add_option("--epsilons", land.epsilons, "Epsilons for sqrt-eps")->delimiter(',');
  land_cmd->add_option("-o,--out", land.out, "Certificate file (JSON)");
  land_cmd->add_option("--csv", land.csv, "Grid cells (CSV)");

  DictArgs dict;
  auto* dict_cmd = app.add_subcommand("dict", "Dictatorship gadget from a solution");
  dict_cmd->add_option("solution", dict.solution, "Solution JSON (level >= 2)")->required();
  dict_cmd->add_option("-i,--instance", dict.instance, "Instance the solution belongs to")
      ->required();
  dict_cmd->add_option("-r,--rounds", dict.r, "Hypercube dimension R")->check(CLI::PositiveNumber);
  dict_cmd->add_option("-e,--epsilon", dict.epsilon, "Noise rate")->check(CLI::Range(0.0, 1.0));
  dict_cmd->add_option("--tau", dict.tau, "Influence bound for soundness");
  dict_cmd->add_option("--mode", dict.mode, "Soundness enumeration mode")
      ->check(CLI::IsMember({"boolean", "grid"}));
  dict_cmd->add_flag("--soundness", dict.soundness, "Run the soundness enumeration");
  dict_cmd->add_option("-o,--out", dict.out, "Gadget file (JSON)");
  dict_cmd->add_option("--completeness-out", dict.completeness_out, "Completeness report");
  dict_cmd->add_option("--soundness-out", dict.soundness_out, "Soundness report");
  dict_cmd->add_option("--soundness-csv", dict.soundness_csv, "Per-function soundness rows");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run the pipeline against brute force");
  bench_cmd->add_option("config", bench.config, "Bench config (JSON)")->required();
  bench_cmd->add_option("-o,--out", bench.out, "Full results (JSON)");
  bench_cmd->add_option("--csv", bench.csv, "Summary table (CSV); stdout by default");

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact optimum by enumeration");
  oracle_cmd->add_option("instance", oracle.instance, "Edge list or instance JSON")->required();
  oracle_cmd->add_flag("--unconstrained", oracle.unconstrained, "Ignore the cardinality constraint");
  oracle_cmd->add_option("-o,--out", oracle.out, "Result file (JSON)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return GCSP_ERR_INPUT;
  }

  try {
    if (*solve_cmd) RunSolve(solve, seed);
    if (*round_cmd) RunRound(round, seed.value_or(0));
    if (*land_cmd) RunLandscape(land);
    if (*dict_cmd) RunDict(dict);
    if (*bench_cmd) RunBench(bench);
    if (*oracle_cmd) RunOracle(oracle);
  } catch (const Failure& f) {
    std::cerr << "gcsp: error: " << f.message << '\n';
    return f.status;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "gcsp: error: " << e.what() << '\n';
    return GCSP_ERR_INPUT;
  } catch (const std::exception& e) {
    std::cerr << "gcsp: error: " << e.what() << '\n';
    return GCSP_ERR_INTERNAL;
  }
  return 0;
}
