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

#include "gcsp/bench.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "gcsp/error.hpp"
#include "gcsp/oracle.hpp"

namespace gcsp {
namespace {

double Since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

CspInstance LoadEntry(const Json& entry, const std::string& base_dir) {
  if (entry.contains("path")) {
    std::filesystem::path p = entry["path"].get<std::string>();
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    return LoadEdgeListFile(p.string());
  }
  if (entry.contains("generate")) return GenerateFromJson(entry["generate"]);
  if (entry.contains("instance")) return InstanceFromJson(entry["instance"]);
  throw InputError("bench entry needs 'path', 'generate' or 'instance'");
}

double EdgeIdentityError(const MomentSolution& s, const CspInstance& instance) {
  double worst = 0.0;
  for (const auto& term : instance.payoffs()) {
    if (term.scope.size() != 2) continue;
    const int i = term.scope[0], j = term.scope[1];
    const int v[] = {i, j};
    const LocalDistribution mu = LocalDistributionOf(s, v);
    const double differ = mu.probabilities[1] + mu.probabilities[2];
    const double dist2 = SignedInnerProduct(s, i, i) + SignedInnerProduct(s, j, j) -
                         2.0 * SignedInnerProduct(s, i, j);
    worst = std::max(worst, std::abs(differ - dist2 / 4.0));
  }
  return worst;
}

}  // namespace

BenchResult RunBench(const Json& config, const std::string& base_dir) {
  try {
    if (!config.is_object()) throw InputError("bench config must be an object");
    if (!config.contains("instances") || !config["instances"].is_array() ||
        config["instances"].empty()) {
      throw InputError("bench config lists no instances");
    }
    const PipelineConfig pc = PipelineConfigFromJson(config);
    BenchResult result;
    const auto t_all = std::chrono::steady_clock::now();
    for (const Json& entry : config["instances"]) {
      const auto t0 = std::chrono::steady_clock::now();
      const CspInstance instance = LoadEntry(entry, base_dir);
      BenchRow row;
      row.id = entry.value("id", "instance" + std::to_string(result.rows.size()));
      row.kind = std::string(ProblemKindName(instance.kind()));
      row.n = instance.n();
      row.terms = static_cast<int>(instance.payoffs().size());

      const Relaxation relaxation = BuildRelaxation(instance, pc.level, false);
      auto [solution, report] = Solve(relaxation, instance, pc.solver);
      row.sdp_value = solution.objective_value;
      row.solve_status = std::string(SolveStatusName(report.status));
      row.iterations = report.iterations;
      row.feasibility = CheckFeasibility(solution, instance);
      row.edge_identity_error = EdgeIdentityError(solution, instance);

      const PipelineResult pr = RoundSolution(solution, instance, pc);
      row.achieved_alpha = pr.achieved_alpha;
      row.rounded_value = pr.best.repair.value_before;
      row.repaired_value = pr.best.value;
      row.repair_refused = pr.best.repair.refused;
      row.balance_variance = pr.raw_balance.variance;
      row.optimum = BruteForce(instance, true).optimum;
      row.ratio = row.optimum > 0.0 ? row.repaired_value / row.optimum : 1.0;
      row.seconds = Since(t0);
      result.rows.push_back(std::move(row));
    }
    result.seconds = Since(t_all);
    return result;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bench config: ") + e.what());
  }
}

Json ToJson(const BenchResult& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"id", row.id},
                    {"kind", row.kind},
                    {"n", row.n},
                    {"terms", row.terms},
                    {"sdp_value", row.sdp_value},
                    {"solve_status", row.solve_status},
                    {"iterations", row.iterations},
                    {"feasibility", ToJson(row.feasibility)},
                    {"edge_identity_error", row.edge_identity_error},
                    {"achieved_alpha", row.achieved_alpha},
                    {"rounded_value", row.rounded_value},
                    {"repaired_value", row.repaired_value},
                    {"repair_refused", row.repair_refused},
                    {"balance_variance", row.balance_variance},
                    {"optimum", row.optimum},
                    {"ratio", row.ratio},
                    {"seconds", row.seconds}});
  }
  return Json{{"schema", "gcsp.bench/1"}, {"rows", rows}, {"seconds", r.seconds}};
}

std::string BenchCsv(const BenchResult& r) {
  std::ostringstream out;
  out.precision(10);
  out << "id,kind,n,terms,sdp_value,achieved_alpha,rounded_value,repaired_value,optimum,ratio,"
         "status,min_eigenvalue,consistency,cardinality,edge_identity_error,seconds\n";
  for (const auto& row : r.rows) {
    out << row.id << ',' << row.kind << ',' << row.n << ',' << row.terms << ',' << row.sdp_value
        << ',' << row.achieved_alpha << ',' << row.rounded_value << ',' << row.repaired_value
        << ',' << row.optimum << ',' << row.ratio << ',' << row.solve_status << ','
        << row.feasibility.min_eigenvalue << ',' << row.feasibility.consistency_violation << ','
        << row.feasibility.cardinality_violation << ',' << row.edge_identity_error << ',' << row.seconds
        << '\n';
  }
  return out.str();
}

}  // namespace gcsp
