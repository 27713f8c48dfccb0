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

#include "gcsp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <utility>

#include "gcsp/error.hpp"

namespace gcsp {
namespace {

constexpr double kSumTolerance = 1e-9;

bool IsBisection(ProblemKind kind) {
  return kind == ProblemKind::kMaxCutBisection || kind == ProblemKind::kMinCutBisection;
}

CardinalityFunction DefaultCardinality(ProblemKind kind, double parameter) {
  if (kind == ProblemKind::kAlphaCut) return {{parameter, 1.0 - parameter}};
  if (kind == ProblemKind::kMax2Sat && parameter > 0.0) return {{parameter, 1.0 - parameter}};
  return {{0.5, 0.5}};
}

void NormalizeWeights(std::vector<PayoffTerm>& terms) {
  double total = 0.0;
  for (const auto& t : terms) total += t.weight;
  if (terms.empty()) throw InputError("no payoff terms");
  if (!(total > 0.0)) throw InputError("payoff weights sum to zero");
  for (auto& t : terms) t.weight /= total;
}

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::string_view ProblemKindName(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kMaxCutBisection: return "maxcut-bisection";
    case ProblemKind::kMinCutBisection: return "mincut-bisection";
    case ProblemKind::kAlphaCut: return "alpha-cut";
    case ProblemKind::kMax2Sat: return "max2sat";
  }
  return "?";
}

ProblemKind ParseProblemKind(std::string_view name) {
  if (name == "maxcut-bisection") return ProblemKind::kMaxCutBisection;
  if (name == "mincut-bisection") return ProblemKind::kMinCutBisection;
  if (name == "alpha-cut") return ProblemKind::kAlphaCut;
  if (name == "max2sat") return ProblemKind::kMax2Sat;
  throw InputError("unknown problem kind '" + std::string(name) + "'");
}

double PayoffTerm::Value(std::span<const int> local, int q) const {
  std::size_t index = 0;
  for (int a : local) index = index * q + a;
  return table[index];
}

PayoffTerm CutTerm(int u, int v, double weight) {
  return PayoffTerm{{u, v}, {0.0, 1.0, 1.0, 0.0}, weight};
}

PayoffTerm ClauseTerm(int u, bool u_positive, int v, bool v_positive, double weight) {
  PayoffTerm term{{u, v}, {1.0, 1.0, 1.0, 1.0}, weight};
  const int u_false = u_positive ? 1 : 0;
  const int v_false = v_positive ? 1 : 0;
  term.table[u_false * 2 + v_false] = 0.0;
  return term;
}

CspInstance::CspInstance(int n, int q, std::vector<PayoffTerm> payoffs,
                         std::vector<double> vertex_weights,
                         CardinalityFunction cardinality, ProblemKind kind,
                         double kind_parameter)
    : n_(n),
      q_(q),
      payoffs_(std::move(payoffs)),
      vertex_weights_(std::move(vertex_weights)),
      cardinality_(std::move(cardinality)),
      kind_(kind),
      kind_parameter_(kind_parameter) {
  if (n_ < 1) throw InputError("instance needs at least one variable");
  if (q_ < 2) throw InputError("domain size must be at least 2");
  if (payoffs_.empty()) throw InputError("no payoff terms");

  double payoff_total = 0.0;
  for (const auto& term : payoffs_) {
    if (term.scope.empty()) throw InputError("payoff term with empty scope");
    std::set<int> seen;
    for (int v : term.scope) {
      if (v < 0 || v >= n_) throw InputError("payoff scope variable out of range");
      if (!seen.insert(v).second) throw InputError("payoff scope repeats a variable");
    }
    std::size_t expected = 1;
    for (std::size_t i = 0; i < term.scope.size(); ++i) expected *= q_;
    if (term.table.size() != expected) throw InputError("payoff table has wrong size");
    for (double p : term.table) {
      if (!(p >= 0.0 && p <= 1.0)) throw InputError("payoff value outside [0,1]");
    }
    if (!(term.weight >= 0.0)) throw InputError("negative payoff weight");
    payoff_total += term.weight;
  }
  if (std::abs(payoff_total - 1.0) > kSumTolerance) {
    throw InputError("payoff weights must sum to 1");
  }

  if (static_cast<int>(vertex_weights_.size()) != n_) {
    throw InputError("vertex weight count does not match n");
  }
  double vertex_total = 0.0;
  for (double w : vertex_weights_) {
    if (!(w >= 0.0)) throw InputError("negative vertex weight");
    vertex_total += w;
  }
  if (std::abs(vertex_total - 1.0) > kSumTolerance) {
    throw InputError("vertex weights must sum to 1");
  }

  if (static_cast<int>(cardinality_.proportions.size()) != q_) {
    throw InputError("cardinality function must have q entries");
  }
  double card_total = 0.0;
  for (double c : cardinality_.proportions) {
    if (!(c >= 0.0 && c <= 1.0)) throw InputError("cardinality proportion outside [0,1]");
    card_total += c;
  }
  if (std::abs(card_total - 1.0) > kSumTolerance) {
    throw InputError("cardinality proportions must sum to 1");
  }
}

bool CspInstance::uniform_vertex_weights() const {
  const double u = 1.0 / n_;
  return std::all_of(vertex_weights_.begin(), vertex_weights_.end(),
                     [u](double w) { return std::abs(w - u) < 1e-12; });
}

double CspInstance::Evaluate(std::span<const int> assignment) const {
  if (static_cast<int>(assignment.size()) != n_) {
    throw InputError("assignment length does not match n");
  }
  double value = 0.0;
  std::vector<int> local;
  for (const auto& term : payoffs_) {
    std::size_t index = 0;
    for (int v : term.scope) {
      const int a = assignment[v];
      if (a < 0 || a >= q_) throw InputError("assignment value outside [q]");
      index = index * q_ + a;
    }
    value += term.weight * term.table[index];
  }
  return value;
}

std::vector<double> CspInstance::Balance(std::span<const int> assignment) const {
  if (static_cast<int>(assignment.size()) != n_) {
    throw InputError("assignment length does not match n");
  }
  std::vector<double> freq(q_, 0.0);
  for (int i = 0; i < n_; ++i) freq.at(assignment[i]) += vertex_weights_[i];
  return freq;
}

std::vector<double> CspInstance::WeightedDegrees() const {
  std::vector<double> degree(n_, 0.0);
  for (const auto& term : payoffs_) {
    for (int v : term.scope) degree[v] += term.weight;
  }
  return degree;
}

CspInstance LoadEdgeList(std::string_view text) {
  ProblemKind kind = ProblemKind::kMaxCutBisection;
  double parameter = 0.0;
  int declared_n = -1;
  std::vector<std::pair<int, double>> vertex_entries;
  std::vector<PayoffTerm> terms;
  int max_id = -1;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  auto fail = [&](const std::string& msg) {
    return InputError("line " + std::to_string(line_no) + ": " + msg);
  };
  auto parse_literal = [&](const std::string& tok, bool& positive) {
    positive = true;
    std::string body = tok;
    if (!body.empty() && (body[0] == '-' || body[0] == '~')) {
      positive = false;
      body = body.substr(1);
    }
    std::size_t used = 0;
    int id = -1;
    try {
      id = std::stoi(body, &used);
    } catch (const std::exception&) {
      throw fail("expected vertex id, got '" + tok + "'");
    }
    if (used != body.size() || id < 0) throw fail("bad vertex id '" + tok + "'");
    return id;
  };

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = Trim(raw);
    if (line.empty()) continue;
    std::istringstream fields(line);
    if (line[0] == '#') {
      std::string hash, key;
      fields >> hash >> key;
      if (hash != "#") {
        key = hash.substr(1);
      }
      if (key == "kind") {
        std::string name;
        if (!(fields >> name)) throw fail("kind directive without a value");
        kind = ParseProblemKind(name);
        if (kind == ProblemKind::kAlphaCut) {
          if (!(fields >> parameter) || !(parameter > 0.0 && parameter < 1.0)) {
            throw fail("alpha-cut needs a fraction in (0,1)");
          }
        } else if (kind == ProblemKind::kMax2Sat) {
          if (!(fields >> parameter)) parameter = 0.0;
        }
      } else if (key == "n") {
        if (!(fields >> declared_n) || declared_n < 1) throw fail("bad n directive");
      }
      continue;  // other comments are ignored
    }
    std::string first;
    fields >> first;
    if (first == "vertex") {
      int id = -1;
      double w = -1.0;
      if (!(fields >> id >> w) || id < 0 || !(w >= 0.0)) throw fail("bad vertex weight line");
      vertex_entries.emplace_back(id, w);
      max_id = std::max(max_id, id);
      continue;
    }
    std::string second;
    if (!(fields >> second)) throw fail("expected 'u v [weight]'");
    double weight = 1.0;
    std::string third;
    if (fields >> third) {
      std::size_t used = 0;
      try {
        weight = std::stod(third, &used);
      } catch (const std::exception&) {
        throw fail("bad weight '" + third + "'");
      }
      if (used != third.size() || !(weight >= 0.0)) throw fail("bad weight '" + third + "'");
      std::string extra;
      if (fields >> extra) throw fail("trailing fields");
    }
    bool pu = true, pv = true;
    const int u = parse_literal(first, pu);
    const int v = parse_literal(second, pv);
    if (kind != ProblemKind::kMax2Sat && (!pu || !pv)) throw fail("negated literal in a cut instance");
    if (u == v) {
      throw fail(kind == ProblemKind::kMax2Sat ? "clause repeats a variable" : "self-loop");
    }
    max_id = std::max({max_id, u, v});
    terms.push_back(kind == ProblemKind::kMax2Sat ? ClauseTerm(u, pu, v, pv, weight)
                                                  : CutTerm(u, v, weight));
  }

  if (terms.empty()) throw InputError("no payoff terms");
  const int n = declared_n > 0 ? declared_n : max_id + 1;
  if (max_id >= n) throw InputError("vertex id exceeds declared n");
  NormalizeWeights(terms);

  std::vector<double> weights(n, 1.0 / n);
  if (!vertex_entries.empty()) {
    std::fill(weights.begin(), weights.end(), 0.0);
    double total = 0.0;
    for (auto [id, w] : vertex_entries) {
      weights[id] = w;
    }
    for (double w : weights) total += w;
    if (!(total > 0.0)) throw InputError("vertex weights sum to zero");
    for (double& w : weights) w /= total;
  } else if (IsBisection(kind) && n % 2 != 0) {
    throw InputError("bisection requires an even number of vertices");
  }
  return CspInstance(n, 2, std::move(terms), std::move(weights),
                     DefaultCardinality(kind, parameter), kind, parameter);
}

CspInstance LoadEdgeListFile(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw InputError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << file.rdbuf();
  return LoadEdgeList(buffer.str());
}

Family ParseFamily(std::string_view name) {
  if (name == "cycle") return Family::kCycle;
  if (name == "complete") return Family::kComplete;
  if (name == "gnp") return Family::kGnp;
  if (name == "two_cliques") return Family::kTwoCliques;
  if (name == "planted") return Family::kPlanted;
  throw InputError("unknown family '" + std::string(name) + "'");
}

CspInstance Generate(Family family, int n, std::uint64_t seed, const GenerateParams& params) {
  if (n < 2) throw InputError("generate needs n >= 2");
  if (params.kind == ProblemKind::kAlphaCut &&
      !(params.kind_parameter > 0.0 && params.kind_parameter < 1.0)) {
    throw InputError("alpha-cut needs a fraction in (0,1)");
  }
  if ((IsBisection(params.kind) || family == Family::kTwoCliques || family == Family::kPlanted) &&
      n % 2 != 0) {
    throw InputError("bisection requires an even number of vertices");
  }
  std::mt19937_64 rng(seed);
  std::vector<PayoffTerm> terms;
  switch (family) {
    case Family::kCycle:
      for (int i = 0; i < n; ++i) {
        if (n == 2 && i == 1) break;
        terms.push_back(CutTerm(i, (i + 1) % n, 1.0));
      }
      break;
    case Family::kComplete:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) terms.push_back(CutTerm(i, j, 1.0));
      break;
    case Family::kGnp: {
      if (!(params.edge_probability > 0.0 && params.edge_probability <= 1.0)) {
        throw InputError("gnp edge probability must lie in (0,1]");
      }
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (unit(rng) < params.edge_probability) terms.push_back(CutTerm(i, j, 1.0));
      break;
    }
    case Family::kTwoCliques: {
      const int half = n / 2;
      for (int c = 0; c < 2; ++c)
        for (int i = 0; i < half; ++i)
          for (int j = i + 1; j < half; ++j) terms.push_back(CutTerm(c * half + i, c * half + j, 1.0));
      break;
    }
    case Family::kPlanted: {
      const int half = n / 2;
      const int edges = params.planted_edges > 0 ? params.planted_edges : 3 * n;
      const int inside = static_cast<int>(std::lround(params.planted_epsilon * edges));
      const int across = edges - inside;
      if (across > half * half || inside > half * (half - 1) || inside < 0) {
        throw InputError("planted edge counts do not fit in n vertices");
      }
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<std::pair<int, int>> cross_pairs, inner_pairs;
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          ((a < half) != (b < half) ? cross_pairs : inner_pairs).emplace_back(a, b);
      std::shuffle(cross_pairs.begin(), cross_pairs.end(), rng);
      std::shuffle(inner_pairs.begin(), inner_pairs.end(), rng);
      std::vector<std::pair<int, int>> chosen(cross_pairs.begin(), cross_pairs.begin() + across);
      chosen.insert(chosen.end(), inner_pairs.begin(), inner_pairs.begin() + inside);
      for (auto& [a, b] : chosen) {
        int u = perm[a], v = perm[b];
        if (u > v) std::swap(u, v);
        a = u;
        b = v;
      }
      std::sort(chosen.begin(), chosen.end());
      for (auto [u, v] : chosen) terms.push_back(CutTerm(u, v, 1.0));
      break;
    }
  }
  if (params.kind == ProblemKind::kMax2Sat) {
    std::bernoulli_distribution coin(0.5);
    for (auto& t : terms) t = ClauseTerm(t.scope[0], coin(rng), t.scope[1], coin(rng), 1.0);
  }
  NormalizeWeights(terms);
  return CspInstance(n, 2, std::move(terms), std::vector<double>(n, 1.0 / n),
                     DefaultCardinality(params.kind, params.kind_parameter), params.kind,
                     params.kind_parameter);
}

}  // namespace gcsp
