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

#include "gcsp/serialize.hpp"

#include <charconv>
#include <cmath>

#include "gcsp/error.hpp"

namespace gcsp {
namespace {

constexpr const char* kInstanceSchema = "gcsp.instance/1";
constexpr const char* kSolutionSchema = "gcsp.solution/1";

Json Edge(const EdgeConfig& c) { return Json{{"mu1", c.mu1}, {"mu2", c.mu2}, {"rho", c.rho}}; }

Json Triplets(const std::vector<MatrixEntry>& entries) {
  Json out = Json::array();
  for (const auto& e : entries) out.push_back(Json::array({e.row, e.col, e.coef}));
  return out;
}

Json Stats(const TrialStats& s) { return Json{{"mean", s.mean}, {"variance", s.variance}}; }

const Json& Field(const Json& json, const char* key) {
  if (!json.is_object() || !json.contains(key)) {
    throw InputError(std::string("missing field '") + key + "'");
  }
  return json.at(key);
}

template <class T>
T Get(const Json& json, const char* key) {
  try {
    return Field(json, key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

std::string DecimalString(double x) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw InputError("cannot format number");
  return std::string(buf, end);
}

double ParseDecimal(const Json& value, const char* what) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    const std::string s = value.get<std::string>();
    double x = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec == std::errc() && end == s.data() + s.size()) return x;
  }
  throw InputError(std::string("field '") + what + "' is not a decimal");
}

Json ToJson(const CspInstance& instance) {
  Json j;
  j["schema"] = kInstanceSchema;
  j["kind"] = std::string(ProblemKindName(instance.kind()));
  j["kind_parameter"] = DecimalString(instance.kind_parameter());
  j["n"] = instance.n();
  j["q"] = instance.q();
  Json card = Json::array();
  for (double c : instance.cardinality().proportions) card.push_back(DecimalString(c));
  j["cardinality"] = card;
  Json vw = Json::array();
  for (double w : instance.vertex_weights()) vw.push_back(DecimalString(w));
  j["vertex_weights"] = vw;
  Json terms = Json::array();
  for (const auto& t : instance.payoffs()) {
    terms.push_back({{"scope", t.scope}, {"table", t.table}, {"weight", DecimalString(t.weight)}});
  }
  j["payoffs"] = terms;
  return j;
}

CspInstance InstanceFromJson(const Json& j) {
  if (!j.is_object()) throw InputError("instance JSON must be an object");
  if (j.contains("schema") && j["schema"] != kInstanceSchema) {
    throw InputError("unsupported instance schema");
  }
  const ProblemKind kind = ParseProblemKind(Get<std::string>(j, "kind"));
  const double parameter =
      j.contains("kind_parameter") ? ParseDecimal(j["kind_parameter"], "kind_parameter") : 0.0;
  const int n = Get<int>(j, "n");
  const int q = j.contains("q") ? Get<int>(j, "q") : 2;
  CardinalityFunction card;
  for (const auto& c : Field(j, "cardinality")) card.proportions.push_back(ParseDecimal(c, "cardinality"));
  std::vector<double> weights;
  for (const auto& w : Field(j, "vertex_weights")) weights.push_back(ParseDecimal(w, "vertex_weights"));
  std::vector<PayoffTerm> terms;
  for (const auto& t : Field(j, "payoffs")) {
    PayoffTerm term;
    term.scope = Get<std::vector<int>>(t, "scope");
    term.table = Get<std::vector<double>>(t, "table");
    term.weight = ParseDecimal(Field(t, "weight"), "weight");
    terms.push_back(std::move(term));
  }
  return CspInstance(n, q, std::move(terms), std::move(weights), std::move(card), kind, parameter);
}

Json ToJson(const Relaxation& relaxation, bool reduced) {
  Json j;
  j["schema"] = "gcsp.program/1";
  j["level"] = relaxation.level;
  const ConicProgram& p = reduced ? relaxation.reduced : relaxation.program;
  j["form"] = reduced ? "monomial" : "indicator";
  Json index = Json::array();
  if (reduced) {
    for (std::uint64_t m : relaxation.monomials) {
      Json vars = Json::array();
      for (int i = 0; i < 64; ++i) {
        if ((m >> i) & 1U) vars.push_back(i);
      }
      index.push_back(vars);
    }
  } else {
    for (const auto& idx : relaxation.index_set.entries()) {
      index.push_back({{"subset", idx.variables()}, {"values", idx.values()}});
    }
  }
  j["index"] = index;
  j["dim"] = p.dim;
  j["sense"] = p.sense == Sense::kMaximize ? "max" : "min";
  j["objective"] = Triplets(p.objective);
  Json cons = Json::array();
  for (const auto& c : p.constraints) cons.push_back({{"terms", Triplets(c.terms)}, {"rhs", c.rhs}});
  j["constraints"] = cons;
  return j;
}

Json ToJson(const MomentSolution& s) {
  Json j;
  j["schema"] = kSolutionSchema;
  j["n"] = s.index_set.n();
  j["level"] = s.level;
  j["objective_value"] = s.objective_value;
  j["dim"] = s.gram.rows();
  Json lower = Json::array();
  for (Eigen::Index r = 0; r < s.gram.rows(); ++r) {
    for (Eigen::Index c = 0; c <= r; ++c) lower.push_back(s.gram(r, c));
  }
  j["gram_lower"] = lower;
  return j;
}

MomentSolution SolutionFromJson(const Json& j) {
  if (!j.is_object()) throw InputError("solution JSON must be an object");
  if (j.contains("schema") && j["schema"] != kSolutionSchema) {
    throw InputError("unsupported solution schema");
  }
  MomentSolution s;
  const int n = Get<int>(j, "n");
  s.level = Get<int>(j, "level");
  if (n < 1 || n > 64 || s.level < 1) throw InputError("solution has invalid n or level");
  if (IndexSet::CountFor(n, s.level) > kIndexCap) throw CapacityError("solution index set over cap");
  s.index_set = IndexSet(n, s.level);
  s.objective_value = j.contains("objective_value") ? Get<double>(j, "objective_value") : 0.0;
  const auto lower = Get<std::vector<double>>(j, "gram_lower");
  const int dim = s.index_set.size();
  if (lower.size() != static_cast<std::size_t>(dim) * (dim + 1) / 2) {
    throw InputError("gram_lower has the wrong length for n and level");
  }
  s.gram.resize(dim, dim);
  std::size_t k = 0;
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c <= r; ++c) s.gram(r, c) = s.gram(c, r) = lower[k++];
  }
  return s;
}

Json ToJson(const SolveReport& r) {
  return Json{{"status", std::string(SolveStatusName(r.status))},
              {"iterations", r.iterations},
              {"primal_residual", r.primal_residual},
              {"dual_residual", r.dual_residual},
              {"objective", r.objective},
              {"dual_objective", r.dual_objective},
              {"min_eigenvalue", r.min_eigenvalue}};
}

Json ToJson(const FeasibilityReport& r) {
  return Json{{"min_eigenvalue", r.min_eigenvalue},
              {"psd_violation", r.psd_violation},
              {"consistency_violation", r.consistency_violation},
              {"cardinality_violation", r.cardinality_violation},
              {"passed", r.passed}};
}

Json ToJson(const std::vector<ConditioningStep>& steps) {
  Json out = Json::array();
  for (const auto& s : steps) {
    out.push_back({{"pivot", s.pivot}, {"value", s.value}, {"probability", s.probability}});
  }
  return out;
}

Json ToJson(const PairCorrelationSummary& s) {
  Json j{{"average_mi_bits", s.average_mi}, {"max_mi_bits", s.max_mi}};
  if (!s.pairs.empty()) j["pairs"] = s.pairs;
  return j;
}

Json ToJson(const RoundedAssignment& a) {
  Json j{{"labels", a.labels}, {"value", a.value}, {"balance", a.balance},
         {"seed", std::to_string(a.seed)}};
  if (a.repair.attempted) {
    j["repair"] = {{"refused", a.repair.refused},
                   {"moved", a.repair.moved},
                   {"value_before", a.repair.value_before},
                   {"value_after", a.repair.value_after},
                   {"balance_before", a.repair.balance_before},
                   {"note", a.repair.note}};
  }
  return j;
}

Json ToJson(const PipelineResult& r) {
  Json j{{"best", ToJson(r.best)},
         {"sdp_value", r.sdp_value},
         {"achieved_alpha", r.achieved_alpha},
         {"alpha_reached", r.alpha_reached},
         {"conditioning", ToJson(r.steps)},
         {"raw_balance", Stats(r.raw_balance)},
         {"raw_value", Stats(r.raw_value)},
         {"repaired_value", Stats(r.repaired_value)},
         {"trial_values", r.trial_values}};
  // Rounding an existing solution runs no solver.
  if (r.solve_report.iterations > 0) j["solve"] = ToJson(r.solve_report);
  return j;
}

Json ToJson(const RatioCertificate& c) {
  Json trace = Json::array();
  for (const auto& t : c.trace) {
    trace.push_back({{"seed_cell", t.seed_cell}, {"round", t.round}, {"config", Edge(t.config)},
                     {"ratio", t.ratio}, {"step", t.step}});
  }
  return Json{{"schema", "gcsp.certificate/1"},
              {"payoff", c.payoff},
              {"resolution", c.resolution},
              {"cells", c.cells},
              {"valid_cells", c.valid_cells},
              {"grid_minimum", c.grid_minimum},
              {"minimum", c.minimum},
              {"argmin", Edge(c.argmin)},
              {"lipschitz_local", c.lipschitz},
              {"lipschitz_global", c.lipschitz_global},
              {"error_bar", c.error_bar},
              {"trace", trace}};
}

Json ToJson(const SqrtEpsCurve& c) {
  Json pts = Json::array();
  for (const auto& p : c.points) {
    pts.push_back({{"epsilon", p.epsilon}, {"worst_separation", p.worst_separation},
                   {"argmax", Edge(p.argmax)}});
  }
  return Json{{"points", pts}, {"exponent", c.exponent}, {"coefficient", c.coefficient}};
}

Json ToJson(const DictGadget& g) {
  return Json{{"schema", "gcsp.gadget/1"},
              {"R", g.r},
              {"epsilon", g.epsilon},
              {"source_value", g.source_value},
              {"source_bias", g.source_bias},
              {"source_vertex_weights", g.source_vertex_weights},
              {"vertex_weights", g.vertex_weights},
              {"edge_weights", g.edge_weights}};
}

Json ToJson(const CompletenessReport& r) {
  return Json{{"sdp_value", r.sdp_value},
              {"dictator_values", r.dictator_values},
              {"dictator_balances", r.dictator_balances},
              {"min_value", r.min_value},
              {"worst_dictator", r.worst_dictator},
              {"max_abs_balance", r.max_abs_balance},
              {"passed", r.passed},
              {"message", r.message}};
}

Json ToJson(const SoundnessResult& r) {
  Json j{{"tau", r.tau}, {"evaluated", r.evaluated}, {"admissible", r.admissible},
         {"empty", r.empty}};
  if (!r.empty) {
    j["max_value"] = r.max_value;
    j["witness_id"] = r.witness_id;
    j["witness"] = r.witness.values;
  }
  return j;
}

Json ToJson(const ExactResult& r) {
  return Json{{"optimum", r.optimum},
              {"witness", r.witness},
              {"optima", r.optima},
              {"enumerated", r.enumerated},
              {"feasible", r.feasible}};
}

SolverConfig SolverConfigFromJson(const Json& j, SolverConfig c) {
  if (!j.is_object()) throw InputError("solver config must be an object");
  if (j.contains("max_iterations")) c.max_iterations = Get<int>(j, "max_iterations");
  if (j.contains("primal_tolerance")) c.primal_tolerance = Get<double>(j, "primal_tolerance");
  if (j.contains("dual_tolerance")) c.dual_tolerance = Get<double>(j, "dual_tolerance");
  if (j.contains("step")) c.step = Get<double>(j, "step");
  if (j.contains("over_relaxation")) c.over_relaxation = Get<double>(j, "over_relaxation");
  if (j.contains("check_every")) c.check_every = Get<int>(j, "check_every");
  if (j.contains("adaptive_step")) c.adaptive_step = Get<bool>(j, "adaptive_step");
  if (j.contains("polish_rounds")) c.polish_rounds = Get<int>(j, "polish_rounds");
  if (j.contains("seed")) c.seed = Get<std::uint64_t>(j, "seed");
  ValidateSolverConfig(c);
  return c;
}

PipelineConfig PipelineConfigFromJson(const Json& j, PipelineConfig c) {
  if (!j.is_object()) throw InputError("pipeline config must be an object");
  if (j.contains("level")) c.level = Get<int>(j, "level");
  if (j.contains("trials")) c.trials = Get<int>(j, "trials");
  if (j.contains("seed")) c.seed = Get<std::uint64_t>(j, "seed");
  if (j.contains("delta_cap")) c.delta_cap = Get<double>(j, "delta_cap");
  if (j.contains("alpha")) c.decorrelate.alpha = Get<double>(j, "alpha");
  if (j.contains("depth")) c.decorrelate.depth = Get<int>(j, "depth");
  if (j.contains("strategy")) {
    const auto s = Get<std::string>(j, "strategy");
    if (s == "sampled") {
      c.decorrelate.strategy = DecorrelateStrategy::kSampled;
    } else if (s == "exhaustive") {
      c.decorrelate.strategy = DecorrelateStrategy::kExhaustive;
    } else {
      throw InputError("unknown strategy '" + s + "'");
    }
  }
  if (j.contains("include_diagonal")) {
    c.decorrelate.independence.include_diagonal = Get<bool>(j, "include_diagonal");
  }
  if (j.contains("solver")) c.solver = SolverConfigFromJson(j["solver"], c.solver);
  if (c.level < 1) throw InputError("level must be >= 1");
  if (c.trials < 1) throw InputError("trials must be >= 1");
  if (c.decorrelate.depth < 0) throw InputError("depth must be >= 0");
  if (!(c.decorrelate.alpha >= 0.0)) throw InputError("alpha must be non-negative");
  if (!(c.delta_cap >= 0.0)) throw InputError("delta_cap must be non-negative");
  return c;
}

CspInstance GenerateFromJson(const Json& j) {
  if (!j.is_object()) throw InputError("generator description must be an object");
  GenerateParams params;
  if (j.contains("p")) params.edge_probability = Get<double>(j, "p");
  if (j.contains("epsilon")) params.planted_epsilon = Get<double>(j, "epsilon");
  if (j.contains("edges")) params.planted_edges = Get<int>(j, "edges");
  if (j.contains("kind")) params.kind = ParseProblemKind(Get<std::string>(j, "kind"));
  if (j.contains("kind_parameter")) params.kind_parameter = Get<double>(j, "kind_parameter");
  const std::uint64_t seed = j.contains("seed") ? Get<std::uint64_t>(j, "seed") : 0;
  return Generate(ParseFamily(Get<std::string>(j, "family")), Get<int>(j, "n"), seed, params);
}

}  // namespace gcsp
