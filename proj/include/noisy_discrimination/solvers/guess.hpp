// Copyright 2026 The noisy-discrimination Authors
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

#ifndef NOISY_DISCRIMINATION_SOLVERS_GUESS_HPP_
#define NOISY_DISCRIMINATION_SOLVERS_GUESS_HPP_

#include <vector>

#include "noisy_discrimination/model.hpp"
#include "noisy_discrimination/noise_transform.hpp"
#include "noisy_discrimination/solvers/result.hpp"

namespace noisy_discrimination {

/// Skip the measurement and always report the outcome with the least
/// prior-averaged cost, sum_k C(r, k) p_k; ties go to the lowest index.
///
/// The result routes the whole identity to label r and maps every detector
/// outcome to r, so detector noise has no effect on the cost.
inline SolveResult guess_only(const CostMatrix& c, const ConfusionMatrix& q,
                              const Ensemble& e) {
  const Problem problem(e, c, q);
  const Index n = c.outcomes();
  Index best = 0;
  double best_cost = 0.0;
  for (Index r = 0; r < n; ++r) {
    double expected = 0.0;
    for (std::size_t k = 0; k < e.size(); ++k) {
      expected += c(r, static_cast<Index>(k)) * e.prior(k);
    }
    if (r == 0 || expected < best_cost) {
      best = r;
      best_cost = expected;
    }
  }
  std::vector<CMatrix> ops(static_cast<std::size_t>(n),
                           CMatrix::Zero(e.dim(), e.dim()));
  ops[static_cast<std::size_t>(best)] = CMatrix::Identity(e.dim(), e.dim());
  const auto assignment = identity_labels(static_cast<std::size_t>(n));
  const std::vector<int> inference(static_cast<std::size_t>(n),
                                   static_cast<int>(best));
  const auto w = modified_risk_operators(relabel(problem, assignment, inference));
  SolveResult result =
      make_result(Povm(std::move(ops)), w, StrategyKind::guess_only);
  result.inference_map = inference;
  return result;
}

inline SolveResult guess_only(const Problem& p) {
  return guess_only(p.cost, p.confusion, p.ensemble);
}

}  // namespace noisy_discrimination

#endif  // NOISY_DISCRIMINATION_SOLVERS_GUESS_HPP_
