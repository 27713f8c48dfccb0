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


// Small instances and exact moment fixtures shared by the unit tests.

#ifndef GCSP_TESTS_FIXTURES_HPP_
#define GCSP_TESTS_FIXTURES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gcsp/error.hpp"
#include "gcsp/instance.hpp"
#include "gcsp/lasserre.hpp"
#include "gcsp/oracle.hpp"

namespace gcsp::testing {

inline CspInstance Edges(const std::string& text) { return LoadEdgeList(text); }

inline CspInstance SingleEdge() { return Edges("0 1\n"); }
inline CspInstance C4() { return Edges("0 1\n1 2\n2 3\n3 0\n"); }
inline CspInstance K4() { return Generate(Family::kComplete, 4, 0); }

// Domain values of the alternating bisection of C4 and its complement.
inline std::vector<int> C4Alternating() { return {0, 1, 0, 1}; }
inline std::vector<int> C4Complement() { return {1, 0, 1, 0}; }

// 50/50 mixture of a bisection and its complement: every pair is a perfectly
// (anti-)correlated fair bit.
inline MomentSolution C4Mixture(int level = 2) {
  return ExactMixtureMoments(C4(), level, {C4Alternating(), C4Complement()}, {0.5, 0.5});
}

inline MomentSolution PointMass(const CspInstance& instance, const std::vector<int>& values,
                                int level = 2) {
  return ExactMixtureMoments(instance, level, {values}, {1.0});
}

// Random finite mixture over `support` balanced assignments of an instance.
inline MomentSolution RandomBalancedMixture(const CspInstance& instance, int level, int support,
                                            std::mt19937_64& rng) {
  const int n = instance.n();
  std::vector<std::vector<int>> assignments;
  std::vector<double> probs;
  double total = 0.0;
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  for (int s = 0; s < support; ++s) {
    std::vector<int> v(n, 0);
    for (int i = n / 2; i < n; ++i) v[i] = 1;
    std::shuffle(v.begin(), v.end(), rng);
    assignments.push_back(v);
    probs.push_back(unit(rng));
    total += probs.back();
  }
  for (double& p : probs) p /= total;
  return ExactMixtureMoments(instance, level, assignments, probs);
}

// Kind of the gcsp::Error thrown by f, or -1 when nothing (or something else) is thrown.
template <typename F>
int ErrorKindOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return static_cast<int>(e.kind());
  } catch (...) {
  }
  return -1;
}

}  // namespace gcsp::testing

#endif  // GCSP_TESTS_FIXTURES_HPP_
