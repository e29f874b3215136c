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

#ifndef NOISY_DISCRIMINATION_VALIDATE_HPP_
#define NOISY_DISCRIMINATION_VALIDATE_HPP_

#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "noisy_discrimination/linalg.hpp"
#include "noisy_discrimination/tolerance.hpp"

namespace noisy_discrimination {

/// One violated invariant. `location` names the offending element, e.g.
/// "operators[1]" or "column 2"; `residual` is the measured deviation.
struct Violation {
  std::string invariant;
  std::string location;
  double residual = 0.0;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }

  void add(std::string invariant, std::string location, double residual) {
    violations.push_back(
        {std::move(invariant), std::move(location), residual});
  }

  void merge(const ValidationReport& other, const std::string& prefix) {
    for (const auto& v : other.violations) {
      violations.push_back(
          {v.invariant, v.location.empty() ? prefix : prefix + "." + v.location,
           v.residual});
    }
  }

  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t k = 0; k < violations.size(); ++k) {
      const auto& v = violations[k];
      if (k) os << "; ";
      os << v.invariant;
      if (!v.location.empty()) os << " at " << v.location;
      os << " (residual " << v.residual << ")";
    }
    return os.str();
  }
};

namespace detail {

inline void check_hermitian_psd(const CMatrix& a, const std::string& where,
                                const ToleranceProfile& tol,
                                ValidationReport& report) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    report.add("square non-empty matrix", where, 0.0);
    return;
  }
  if (!all_finite(a)) {
    report.add("finite entries", where, 0.0);
    return;
  }
  const double herm = hermiticity_residual(a);
  if (herm > tol.hermiticity) report.add("Hermitian", where, herm);
  const double lo = min_eigenvalue(a);
  if (lo < -tol.psd_floor) report.add("positive semidefinite", where, lo);
}

}  // namespace detail

inline ValidationReport validate_density_matrix(
    const CMatrix& rho, const ToleranceProfile& tol = {}) {
  ValidationReport report;
  detail::check_hermitian_psd(rho, "", tol, report);
  if (report.ok()) {
    const double dev = std::abs(rho.trace() - Complex(1.0, 0.0));
    if (dev > tol.trace) report.add("unit trace", "", dev);
  }
  return report;
}

inline ValidationReport validate_povm(std::span<const CMatrix> operators,
                                      const ToleranceProfile& tol = {}) {
  ValidationReport report;
  if (operators.empty()) {
    report.add("at least one operator", "", 0.0);
    return report;
  }
  const Index d = operators.front().rows();
  for (std::size_t i = 0; i < operators.size(); ++i) {
    const std::string where = "operators[" + std::to_string(i) + "]";
    if (operators[i].rows() != d || operators[i].cols() != d) {
      report.add("common dimension", where, 0.0);
      continue;
    }
    detail::check_hermitian_psd(operators[i], where, tol, report);
  }
  if (!report.ok()) return report;
  CMatrix sum = CMatrix::Zero(d, d);
  for (const auto& op : operators) sum += op;
  const double dev = max_abs(sum - CMatrix::Identity(d, d));
  if (dev > tol.completeness) {
    report.add("completeness (sum equals identity)", "", dev);
  }
  return report;
}

/// Columns are ideal outcomes j, rows observed outcomes i.
inline ValidationReport validate_confusion(const RMatrix& q,
                                           const ToleranceProfile& tol = {}) {
  ValidationReport report;
  if (q.rows() != q.cols() || q.rows() == 0) {
    report.add("square non-empty matrix", "", 0.0);
    return report;
  }
  for (Index j = 0; j < q.cols(); ++j) {
    for (Index i = 0; i < q.rows(); ++i) {
      const double v = q(i, j);
      if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
        report.add("entry in [0, 1]",
                   "entry (" + std::to_string(i) + ", " + std::to_string(j) +
                       ")",
                   v);
      }
    }
    const double dev = std::abs(q.col(j).sum() - 1.0);
    if (!(dev <= tol.probability_sum)) {
      report.add("column sums to one", "column " + std::to_string(j), dev);
    }
  }
  return report;
}

inline ValidationReport validate_ensemble(std::span<const double> priors,
                                          std::span<const CMatrix> states,
                                          const ToleranceProfile& tol = {}) {
  ValidationReport report;
  if (states.empty() || priors.size() != states.size()) {
    report.add("one prior per state, at least one state", "", 0.0);
    return report;
  }
  double total = 0.0;
  const Index d = states.front().rows();
  for (std::size_t k = 0; k < states.size(); ++k) {
    const std::string where = "states[" + std::to_string(k) + "]";
    if (!std::isfinite(priors[k]) || priors[k] < 0.0) {
      report.add("nonnegative prior", where + ".prior", priors[k]);
    }
    total += priors[k];
    if (states[k].rows() != d) {
      report.add("common dimension", where, 0.0);
      continue;
    }
    report.merge(validate_density_matrix(states[k], tol), where);
  }
  const double dev = std::abs(total - 1.0);
  if (!(dev <= tol.probability_sum)) {
    report.add("priors sum to one", "states[*].prior", dev);
  }
  return report;
}

}  // namespace noisy_discrimination

#endif  // NOISY_DISCRIMINATION_VALIDATE_HPP_
