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

#ifndef NOISY_DISCRIMINATION_SOLVERS_TWO_STATE_HPP_
#define NOISY_DISCRIMINATION_SOLVERS_TWO_STATE_HPP_

#include <cmath>

#include "noisy_discrimination/errors.hpp"
#include "noisy_discrimination/linalg.hpp"
#include "noisy_discrimination/noise_transform.hpp"
#include "noisy_discrimination/solvers/guess.hpp"
#include "noisy_discrimination/solvers/result.hpp"

namespace noisy_discrimination {

/// Helstrom measurement for two risk operators: Pi_0 projects onto the
/// strictly negative eigenspace of w0 - w1, Pi_1 onto the rest.
///
/// An eigenvalue counts as zero when its magnitude is at most 1e-12 times the
/// largest eigenvalue magnitude; zero eigenvectors go to Pi_1.
inline SolveResult helstrom_two_state(const CMatrix& w0, const CMatrix& w1) {
  if (w0.rows() != w1.rows() || w0.cols() != w1.cols() ||
      w0.rows() != w0.cols() || w0.rows() == 0) {
    throw InvalidInput("risk operators must be square with equal dimension");
  }
  const ToleranceProfile tol;
  if (hermiticity_residual(w0) > tol.hermiticity ||
      hermiticity_residual(w1) > tol.hermiticity) {
    throw InvalidInput("risk operators must be Hermitian");
  }
  const Index d = w0.rows();
  const auto eig = detail::eigh(w0 - w1);
  const RVector& vals = eig.eigenvalues();
  const double scale = vals.cwiseAbs().maxCoeff();
  CMatrix pi0 = CMatrix::Zero(d, d);
  for (Index k = 0; k < d; ++k) {
    if (vals(k) < -1e-12 * scale) {
      pi0 += eig.eigenvectors().col(k) * eig.eigenvectors().col(k).adjoint();
    }
  }
  pi0 = hermitize(pi0);
  CMatrix pi1 = hermitize(CMatrix::Identity(d, d) - pi0);
  RiskOperators w{{w0, w1}, Provenance::ideal};
  return make_result(Povm({std::move(pi0), std::move(pi1)}), w,
                     StrategyKind::closed_form_two_state);
}

inline SolveResult helstrom_two_state(const RiskOperators& w) {
  if (w.size() != 2) throw InvalidInput("need exactly two risk operators");
  return helstrom_two_state(w[0], w[1]);
}

/// Optimal ideal strategy for two states seen through a 2x2 detector.
///
/// With s = q(0|0) + q(1|1) - 1 the modified difference operator is
/// s (W_0 - W_1): for s > 0 the ideal Helstrom projectors are kept, for s < 0
/// they come out with labels swapped, and for |s| <= 1e-12 the detector output
/// carries no information and the guess-only strategy is returned.
inline SolveResult two_state_noisy(const Problem& p) {
  if (p.ensemble.size() != 2 || p.outcomes() != 2) {
    throw InvalidInput("two_state_noisy needs 2 states and 2 outcomes");
  }
  const double s = p.confusion(0, 0) + p.confusion(1, 1) - 1.0;
  if (std::abs(s) <= 1e-12) return guess_only(p);
  const RiskOperators w = modified_risk_operators(p);
  return helstrom_two_state(w);
}

}  // namespace noisy_discrimination

#endif  // NOISY_DISCRIMINATION_SOLVERS_TWO_STATE_HPP_
