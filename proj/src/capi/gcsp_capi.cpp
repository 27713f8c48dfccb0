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


#include "gcsp/gcsp.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "gcsp/bench.hpp"
#include "gcsp/dictator.hpp"
#include "gcsp/error.hpp"
#include "gcsp/gaussian.hpp"
#include "gcsp/independence.hpp"
#include "gcsp/landscape.hpp"
#include "gcsp/lasserre.hpp"
#include "gcsp/oracle.hpp"
#include "gcsp/rounding.hpp"
#include "gcsp/sdp_solver.hpp"
#include "gcsp/serialize.hpp"

struct gcsp_instance {
  gcsp::CspInstance value;
};
struct gcsp_solution {
  gcsp::MomentSolution value;
};
struct gcsp_gadget {
  gcsp::DictGadget value;
};

namespace {

using gcsp::Json;

thread_local std::string g_last_error;

gcsp_status Fail(gcsp_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs `body`, mapping library exceptions onto status codes.
template <class F>
gcsp_status Guard(F&& body) {
  try {
    g_last_error.clear();
    body();
    return GCSP_OK;
  } catch (const gcsp::Error& e) {
    return Fail(static_cast<gcsp_status>(e.kind()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return Fail(GCSP_ERR_INPUT, std::string("json: ") + e.what());
  } catch (const std::bad_alloc&) {
    return Fail(GCSP_ERR_CAPACITY, "out of memory");
  } catch (const std::exception& e) {
    return Fail(GCSP_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(GCSP_ERR_INTERNAL, "unknown failure");
  }
}

void Require(bool ok, const char* what) {
  if (!ok) throw gcsp::InputError(what);
}

char* Dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

char* DumpJson(const Json& j) { return Dup(j.dump(2) + "\n"); }

Json ParseOptional(const char* text) {
  if (!text || !*text) return Json::object();
  Json j = Json::parse(text);
  Require(j.is_object(), "config must be a JSON object");
  return j;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw gcsp::InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::ofstream OpenOutput(const char* path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw gcsp::InputError(std::string("cannot write ") + path);
  return out;
}

gcsp::AxisRange Range(const Json& j, const char* key, gcsp::AxisRange fallback) {
  if (!j.contains(key)) return fallback;
  const Json& r = j[key];
  Require(r.is_array() && r.size() == 2, "axis range must be [lo, hi]");
  return {r[0].get<double>(), r[1].get<double>()};
}

}  // namespace

extern "C" {

const char* gcsp_version(void) { return GCSP_VERSION_STRING; }

const char* gcsp_last_error(void) { return g_last_error.c_str(); }

void gcsp_string_free(char* s) { std::free(s); }

gcsp_status gcsp_instance_load(const char* path, gcsp_instance** out) {
  return Guard([&] {
    Require(path && out, "null argument");
    const std::string p(path);
    if (std::filesystem::path(p).extension() == ".json") {
      *out = new gcsp_instance{gcsp::InstanceFromJson(Json::parse(ReadFile(p)))};
    } else {
      *out = new gcsp_instance{gcsp::LoadEdgeListFile(p)};
    }
  });
}

gcsp_status gcsp_instance_parse_edges(const char* text, gcsp_instance** out) {
  return Guard([&] {
    Require(text && out, "null argument");
    *out = new gcsp_instance{gcsp::LoadEdgeList(text)};
  });
}

gcsp_status gcsp_instance_from_json(const char* json, gcsp_instance** out) {
  return Guard([&] {
    Require(json && out, "null argument");
    *out = new gcsp_instance{gcsp::InstanceFromJson(Json::parse(json))};
  });
}

gcsp_status gcsp_instance_generate(const char* generator_json, gcsp_instance** out) {
  return Guard([&] {
    Require(generator_json && out, "null argument");
    *out = new gcsp_instance{gcsp::GenerateFromJson(Json::parse(generator_json))};
  });
}

gcsp_status gcsp_instance_to_json(const gcsp_instance* instance, char** out) {
  return Guard([&] {
    Require(instance && out, "null argument");
    *out = DumpJson(gcsp::ToJson(instance->value));
  });
}

gcsp_status gcsp_instance_size(const gcsp_instance* instance, int* n, int* terms) {
  return Guard([&] {
    Require(instance, "null argument");
    if (n) *n = instance->value.n();
    if (terms) *terms = static_cast<int>(instance->value.payoffs().size());
  });
}

gcsp_status gcsp_instance_evaluate(const gcsp_instance* instance, const int* values, int n,
                                   double* value) {
  return Guard([&] {
    Require(instance && values && value, "null argument");
    Require(n == instance->value.n(), "assignment length differs from n");
    *value = instance->value.Evaluate(std::vector<int>(values, values + n));
  });
}

void gcsp_instance_free(gcsp_instance* instance) { delete instance; }

gcsp_status gcsp_relaxation_to_json(const gcsp_instance* instance, int level, int literal,
                                    char** out) {
  return Guard([&] {
    Require(instance && out, "null argument");
    const auto relaxation = gcsp::BuildRelaxation(instance->value, level, literal != 0);
    *out = DumpJson(gcsp::ToJson(relaxation, literal == 0));
  });
}

gcsp_status gcsp_solve(const gcsp_instance* instance, int level, const char* config_json,
                       gcsp_solution** out, char** report) {
  return Guard([&] {
    Require(instance && out, "null argument");
    const gcsp::SolverConfig config = gcsp::SolverConfigFromJson(ParseOptional(config_json));
    const auto relaxation = gcsp::BuildRelaxation(instance->value, level, false);
    auto [solution, solve_report] = gcsp::Solve(relaxation, instance->value, config);
    if (report) {
      Json j = gcsp::ToJson(solve_report);
      j["feasibility"] = gcsp::ToJson(gcsp::CheckFeasibility(solution, instance->value));
      *report = DumpJson(j);
    }
    *out = new gcsp_solution{std::move(solution)};
  });
}

gcsp_status gcsp_solution_from_json(const char* json, gcsp_solution** out) {
  return Guard([&] {
    Require(json && out, "null argument");
    *out = new gcsp_solution{gcsp::SolutionFromJson(Json::parse(json))};
  });
}

gcsp_status gcsp_solution_to_json(const gcsp_solution* solution, char** out) {
  return Guard([&] {
    Require(solution && out, "null argument");
    *out = DumpJson(gcsp::ToJson(solution->value));
  });
}

gcsp_status gcsp_solution_level(const gcsp_solution* solution, int* level) {
  return Guard([&] {
    Require(solution && level, "null argument");
    *level = solution->value.level;
  });
}

gcsp_status gcsp_solution_objective(const gcsp_solution* solution, const gcsp_instance* instance,
                                    double* value) {
  return Guard([&] {
    Require(solution && instance && value, "null argument");
    *value = gcsp::ObjectiveOf(solution->value, instance->value);
  });
}

gcsp_status gcsp_solution_check(const gcsp_solution* solution, const gcsp_instance* instance,
                                char** report) {
  return Guard([&] {
    Require(solution && instance && report, "null argument");
    *report = DumpJson(gcsp::ToJson(gcsp::CheckFeasibility(solution->value, instance->value)));
  });
}

gcsp_status gcsp_solution_independence(const gcsp_solution* solution,
                                       const gcsp_instance* instance, char** out) {
  return Guard([&] {
    Require(solution && instance && out, "null argument");
    *out = DumpJson(gcsp::ToJson(gcsp::AlphaIndependence(solution->value, instance->value)));
  });
}

void gcsp_solution_free(gcsp_solution* solution) { delete solution; }

gcsp_status gcsp_round(const gcsp_solution* solution, const gcsp_instance* instance,
                       const char* config_json, char** result) {
  return Guard([&] {
    Require(solution && instance && result, "null argument");
    const auto config = gcsp::PipelineConfigFromJson(ParseOptional(config_json));
    *result = DumpJson(gcsp::ToJson(gcsp::RoundSolution(solution->value, instance->value, config)));
  });
}

gcsp_status gcsp_pipeline(const gcsp_instance* instance, const char* config_json, char** result) {
  return Guard([&] {
    Require(instance && result, "null argument");
    const auto config = gcsp::PipelineConfigFromJson(ParseOptional(config_json));
    *result = DumpJson(gcsp::ToJson(gcsp::Pipeline(instance->value, config)));
  });
}

gcsp_status gcsp_landscape(const char* payoff, const char* options_json, const char* csv_path,
                           char** certificate) {
  return Guard([&] {
    Require(payoff && certificate, "null argument");
    const gcsp::PayoffKind kind = gcsp::ParsePayoffKind(payoff);
    const Json j = ParseOptional(options_json);
    gcsp::RatioSearchOptions options;
    options.resolution = j.value("resolution", options.resolution);
    options.refinement_rounds = j.value("refinement_rounds", options.refinement_rounds);
    options.refine_best = j.value("refine_best", options.refine_best);
    options.min_sdp_value = j.value("min_sdp_value", options.min_sdp_value);
    options.mu1 = Range(j, "mu1", options.mu1);
    options.mu2 = Range(j, "mu2", options.mu2);
    options.rho = Range(j, "rho", options.rho);
    std::ofstream csv;
    std::function<void(const gcsp::GridCell&)> on_cell;
    if (csv_path) {
      csv = OpenOutput(csv_path);
      csv << "mu1,mu2,rho_bar,sep,sdp,ratio\n";
      on_cell = [&csv](const gcsp::GridCell& c) {
        csv << gcsp::DecimalString(c.config.mu1) << ',' << gcsp::DecimalString(c.config.mu2) << ','
            << gcsp::DecimalString(c.config.rho) << ',' << gcsp::DecimalString(c.separation)
            << ',' << gcsp::DecimalString(c.sdp) << ',' << gcsp::DecimalString(c.ratio) << '\n';
      };
    }
    const auto cert = gcsp::RatioSearch(kind, options, on_cell);
    if (csv_path) {
      csv.flush();
      if (!csv) throw gcsp::InputError(std::string("write failed: ") + csv_path);
    }
    *certificate = DumpJson(gcsp::ToJson(cert));
  });
}

gcsp_status gcsp_sqrt_eps(const double* epsilons, int count, int resolution, char** curve) {
  return Guard([&] {
    Require(epsilons && curve && count > 0, "need at least one epsilon");
    const std::vector<double> eps(epsilons, epsilons + count);
    *curve = DumpJson(gcsp::ToJson(gcsp::SqrtEpsCurveOf(eps, resolution)));
  });
}

gcsp_status gcsp_gadget_build(const gcsp_solution* solution, const gcsp_instance* instance, int r,
                              double epsilon, gcsp_gadget** out) {
  return Guard([&] {
    Require(solution && instance && out, "null argument");
    *out = new gcsp_gadget{gcsp::BuildGadget(solution->value, instance->value, epsilon, r)};
  });
}

gcsp_status gcsp_gadget_to_json(const gcsp_gadget* gadget, char** out) {
  return Guard([&] {
    Require(gadget && out, "null argument");
    *out = DumpJson(gcsp::ToJson(gadget->value));
  });
}

gcsp_status gcsp_gadget_completeness(const gcsp_gadget* gadget, char** report) {
  return Guard([&] {
    Require(gadget && report, "null argument");
    *report = DumpJson(gcsp::ToJson(gcsp::Completeness(gadget->value)));
  });
}

gcsp_status gcsp_gadget_soundness(const gcsp_gadget* gadget, const char* options_json,
                                  const char* csv_path, char** result) {
  return Guard([&] {
    Require(gadget && result, "null argument");
    const Json j = ParseOptional(options_json);
    gcsp::SoundnessOptions options;
    options.tau = j.value("tau", options.tau);
    options.balance_tolerance = j.value("balance_tolerance", options.balance_tolerance);
    options.grid_points = j.value("grid_points", options.grid_points);
    const std::string mode = j.value("mode", std::string("boolean"));
    if (mode == "boolean") {
      options.mode = gcsp::SoundnessMode::kBooleanExhaustive;
    } else if (mode == "grid") {
      options.mode = gcsp::SoundnessMode::kGrid;
    } else {
      throw gcsp::InputError("unknown soundness mode '" + mode + "'");
    }
    options.keep_rows = csv_path != nullptr;
    const auto sound = gcsp::SoundnessEnumerate(gadget->value, options);
    if (csv_path) {
      std::ofstream csv = OpenOutput(csv_path);
      csv << "function_id,balance,max_influence,value\n";
      for (const auto& row : sound.rows) {
        csv << row.id << ',' << gcsp::DecimalString(row.balance) << ','
            << gcsp::DecimalString(row.max_influence) << ',' << gcsp::DecimalString(row.value)
            << '\n';
      }
      if (!csv) throw gcsp::InputError(std::string("write failed: ") + csv_path);
    }
    *result = DumpJson(gcsp::ToJson(sound));
  });
}

void gcsp_gadget_free(gcsp_gadget* gadget) { delete gadget; }

gcsp_status gcsp_brute_force(const gcsp_instance* instance, int respect_cardinality,
                             char** result) {
  return Guard([&] {
    Require(instance && result, "null argument");
    *result = DumpJson(gcsp::ToJson(gcsp::BruteForce(instance->value, respect_cardinality != 0)));
  });
}

gcsp_status gcsp_bench(const char* config_path, char** json, char** csv) {
  return Guard([&] {
    Require(config_path, "null argument");
    const std::string text = ReadFile(config_path);
    const auto base = std::filesystem::path(config_path).parent_path().string();
    const auto bench = gcsp::RunBench(Json::parse(text), base.empty() ? "." : base);
    if (json) *json = DumpJson(gcsp::ToJson(bench));
    if (csv) *csv = Dup(gcsp::BenchCsv(bench));
  });
}

gcsp_status gcsp_bvn_cdf(double t1, double t2, double rho, double* value) {
  return Guard([&] {
    Require(value, "null argument");
    *value = gcsp::BvnCdf(t1, t2, rho);
  });
}

gcsp_status gcsp_inverse_normal_cdf(double p, double* value) {
  return Guard([&] {
    Require(value, "null argument");
    if (!(p >= 0.0 && p <= 1.0)) throw gcsp::InputError("probability outside [0, 1]");
    *value = gcsp::InverseNormalCdf(p);
  });
}

}  // extern "C"
