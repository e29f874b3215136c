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

#ifndef NOISY_DISCRIMINATION_SOLVERS_CERTIFY_HPP_
#define NOISY_DISCRIMINATION_SOLVERS_CERTIFY_HPP_

#include <algorithm>
#include <limits>
#include <span>

#include "noisy_discrimination/linalg.hpp"
#include "noisy_discrimination/model.hpp"
#include "noisy_discrimination/noise_transform.hpp"

namespace noisy_discrimination {

/// Residuals of the minimum-cost optimality conditions
///   (W_i - Gamma) Pi_i = 0   and   W_i - Gamma >= 0   for all i,
/// with Gamma taken as the Hermitian part of sum_i W_i Pi_i.
struct CertificateReport {
  double gamma_hermiticity_residual = 0.0;
  /// min over i of the smallest eigenvalue of W_i - Gamma. Negative values
  /// bound the suboptimality: optimum >= cost + dim * min_eig_gap.
  double min_eig_gap = 0.0;
  /// max over i of max-entry |(W_i - Gamma) Pi_i|.
  double stationarity_residual = 0.0;
  double tolerance = 1e-8;
  bool passed = false;

  /// Largest violation among the three conditions, zero when all hold exactly.
  double worst_residual() const {
    return std::max({gamma_hermiticity_residual, -min_eig_gap,
                     stationarity_residual, 0.0});
  }
};

inline CertificateReport certify(std::span<const CMatrix> povm,
                                 const RiskOperators& w, double tol = 1e-8) {
  const LagrangeOperator lagrange = lagrange_operator(povm, w);
  const CMatrix gamma = lagrange.symmetrized();
  CertificateReport report;
  report.tolerance = tol;
  report.gamma_hermiticity_residual = lagrange.hermiticity_residual;
  report.min_eig_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < povm.size(); ++i) {
    const CMatrix slack = hermitize(w[i] - gamma);
    report.min_eig_gap = std::min(report.min_eig_gap, min_eigenvalue(slack));
    report.stationarity_residual =
        std::max(report.stationarity_residual, max_abs(slack * povm[i]));
  }
  report.passed = report.gamma_hermiticity_residual < tol &&
                  report.min_eig_gap > -tol &&
                  report.stationarity_residual < tol;
  return report;
}

inline CertificateReport certify(const Povm& povm, const RiskOperators& w,
                                 double tol = 1e-8) {
  return certify(povm.operators(), w, tol);
}

}  // namespace noisy_discrimination

#endif  // NOISY_DISCRIMINATION_SOLVERS_CERTIFY_HPP_
