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

#ifndef GCSP_SERIALIZE_HPP_
#define GCSP_SERIALIZE_HPP_

#include <string>
#include <vector>

#include <json.hpp>

#include "gcsp/dictator.hpp"
#include "gcsp/independence.hpp"
#include "gcsp/instance.hpp"
#include "gcsp/landscape.hpp"
#include "gcsp/lasserre.hpp"
#include "gcsp/oracle.hpp"
#include "gcsp/rounding.hpp"
#include "gcsp/sdp_solver.hpp"

namespace gcsp {

using Json = nlohmann::ordered_json;

// Shortest round-trip decimal form; weights travel as strings.
std::string DecimalString(double x);
// Accepts a JSON number or a decimal string.
double ParseDecimal(const Json& value, const char* what);

Json ToJson(const CspInstance& instance);
CspInstance InstanceFromJson(const Json& json);

// Index set, sparse constraints and objective as (row, col, coef) triplets.
Json ToJson(const Relaxation& relaxation, bool reduced);

// Lower triangle of the gram, row-major.
Json ToJson(const MomentSolution& solution);
MomentSolution SolutionFromJson(const Json& json);

Json ToJson(const SolveReport& report);
Json ToJson(const FeasibilityReport& report);
Json ToJson(const std::vector<ConditioningStep>& steps);
Json ToJson(const PairCorrelationSummary& summary);
Json ToJson(const RoundedAssignment& assignment);
Json ToJson(const PipelineResult& result);
Json ToJson(const RatioCertificate& certificate);
Json ToJson(const SqrtEpsCurve& curve);
Json ToJson(const DictGadget& gadget);
Json ToJson(const CompletenessReport& report);
Json ToJson(const SoundnessResult& result);
Json ToJson(const ExactResult& result);

SolverConfig SolverConfigFromJson(const Json& json, SolverConfig base = {});

// Keys: level, trials, seed, delta_cap, alpha, depth, strategy
// ("sampled" | "exhaustive"), include_diagonal, solver.
PipelineConfig PipelineConfigFromJson(const Json& json, PipelineConfig base = {});

// Keys: family, n, seed, p, epsilon, edges, kind, kind_parameter.
CspInstance GenerateFromJson(const Json& json);

}  // namespace gcsp

#endif  // GCSP_SERIALIZE_HPP_
