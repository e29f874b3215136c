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

#ifndef NOISY_DISCRIMINATION_SOLVERS_RESULT_HPP_
#define NOISY_DISCRIMINATION_SOLVERS_RESULT_HPP_

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "noisy_discrimination/errors.hpp"
#include "noisy_discrimination/model.hpp"
#include "noisy_discrimination/noise_transform.hpp"
#include "noisy_discrimination/solvers/certify.hpp"

namespace noisy_discrimination {

enum class StrategyKind {
  closed_form_two_state,
  mirror_symmetric,
  iterative,
  guess_only,
};

inline std::string_view to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::closed_form_two_state:
      return "closed_form_two_state";
    case StrategyKind::mirror_symmetric:
      return "mirror_symmetric";
    case StrategyKind::iterative:
      return "iterative";
    case StrategyKind::guess_only:
      return "guess_only";
  }
  return "unknown";
}

/// Point of the mirror-symmetric family
///   Pi_0 = a |0><0|,  Pi_{1,2} = b |v+-><v+-|,  v+- = cos(theta)|0> +- sin(theta)|1>,
/// with a = 1 - cot^2(theta) and b = 1 / (2 sin^2(theta)) fixed by completeness.
struct MirrorParams {
  double theta = 0.0;
  double a = 0.0;
  double b = 0.0;
};

/// An optimal (or best found) ideal strategy for a noisy problem.
///
/// `assignment[j]` is the detector channel that ideal label j is routed to;
/// `inference_map[i]` is the outcome reported when channel i fires. `cost` and
/// `certificate` refer to the problem relabelled by these two maps.
struct SolveResult {
  Povm povm;
  double cost = 0.0;
  LagrangeOperator gamma;
  CertificateReport certificate;
  StrategyKind strategy_kind = StrategyKind::iterative;
  std::vector<int> assignment;
  std::vector<int> inference_map;
  std::optional<MirrorParams> mirror;
  int iterations = 0;
};

/// Packs a POVM with its cost, Lagrange operator and certificate against `w`.
inline SolveResult make_result(Povm povm, const RiskOperators& w,
                               StrategyKind kind, double tol = 1e-8) {
  const double cost = average_cost(povm, w);
  LagrangeOperator gamma = lagrange_operator(povm, w);
  CertificateReport cert = certify(povm, w, tol);
  const std::size_t n = povm.size();
  return SolveResult{std::move(povm), cost, std::move(gamma), cert, kind,
                     identity_labels(n), identity_labels(n), std::nullopt, 0};
}

/// Raised when an iterative method runs out of iterations before its
/// certificate passes. Carries the best iterate.
class ConvergenceFailure : public Error {
 public:
  ConvergenceFailure(const std::string& message, std::vector<CMatrix> best,
                     double best_cost, CertificateReport certificate,
                     int iterations)
      : Error(message),
        best_iterate(std::move(best)),
        best_cost(best_cost),
        certificate(certificate),
        iterations(iterations) {}

  std::vector<CMatrix> best_iterate;
  double best_cost;
  CertificateReport certificate;
  int iterations;
};

}  // namespace noisy_discrimination

#endif  // NOISY_DISCRIMINATION_SOLVERS_RESULT_HPP_
