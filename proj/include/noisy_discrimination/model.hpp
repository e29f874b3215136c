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

#ifndef NOISY_DISCRIMINATION_MODEL_HPP_
#define NOISY_DISCRIMINATION_MODEL_HPP_

#include <span>
#include <utility>
#include <vector>

#include "noisy_discrimination/errors.hpp"
#include "noisy_discrimination/linalg.hpp"
#include "noisy_discrimination/tolerance.hpp"
#include "noisy_discrimination/validate.hpp"

namespace noisy_discrimination {

namespace detail {
inline void require(const ValidationReport& report, const char* what) {
  if (!report.ok()) {
    throw InvalidInput(std::string("invalid ") + what + ": " +
                       report.to_string());
  }
}
}  // namespace detail

/// A quantum state: Hermitian, positive semidefinite, unit trace.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix rho, const ToleranceProfile& tol = {})
      : rho_(std::move(rho)) {
    detail::require(validate_density_matrix(rho_, tol), "density matrix");
  }

  Index dim() const { return rho_.rows(); }
  const CMatrix& matrix() const { return rho_; }

 private:
  CMatrix rho_;
};

/// |psi><psi| / <psi|psi>.
inline DensityMatrix pure_state_density(const CVector& amplitudes) {
  const double norm2 = amplitudes.squaredNorm();
  if (amplitudes.size() == 0 || !(norm2 > 0.0) || !std::isfinite(norm2)) {
    throw InvalidInput("pure state needs a nonzero finite amplitude vector");
  }
  CMatrix rho = amplitudes * amplitudes.adjoint() / norm2;
  return DensityMatrix(hermitize(rho));
}

/// States to be discriminated together with their prior probabilities.
class Ensemble {
 public:
  Ensemble(std::vector<double> priors, std::vector<DensityMatrix> states,
           const ToleranceProfile& tol = {})
      : priors_(std::move(priors)), states_(std::move(states)) {
    std::vector<CMatrix> mats;
    mats.reserve(states_.size());
    for (const auto& s : states_) mats.push_back(s.matrix());
    detail::require(validate_ensemble(priors_, mats, tol), "ensemble");
  }

  std::size_t size() const { return states_.size(); }
  Index dim() const { return states_.front().dim(); }
  double prior(std::size_t k) const { return priors_[k]; }
  const DensityMatrix& state(std::size_t k) const { return states_[k]; }
  std::span<const double> priors() const { return priors_; }
  std::span<const DensityMatrix> states() const { return states_; }

 private:
  std::vector<double> priors_;
  std::vector<DensityMatrix> states_;
};

/// Measurement operators Pi_i >= 0 with sum_i Pi_i = 1.
class Povm {
 public:
  explicit Povm(std::vector<CMatrix> operators,
                const ToleranceProfile& tol = {})
      : ops_(std::move(operators)) {
    detail::require(validate_povm(ops_, tol), "POVM");
  }

  std::size_t size() const { return ops_.size(); }
  Index dim() const { return ops_.front().rows(); }
  const CMatrix& operator[](std::size_t i) const { return ops_[i]; }
  std::span<const CMatrix> operators() const { return ops_; }

  /// Outcome probabilities Tr(Pi_i rho) for one state.
  std::vector<double> probabilities(const DensityMatrix& rho) const {
    std::vector<double> p(ops_.size());
    for (std::size_t i = 0; i < ops_.size(); ++i) {
      p[i] = trace_of_product(ops_[i], rho.matrix()).real();
    }
    return p;
  }

 private:
  std::vector<CMatrix> ops_;
};

/// C(i, k): cost of reporting outcome i when state k was prepared. Rows are
/// outcomes (n), columns states (m).
class CostMatrix {
 public:
  explicit CostMatrix(RMatrix entries) : c_(std::move(entries)) {
    if (c_.rows() == 0 || c_.cols() == 0) {
      throw InvalidInput("cost matrix must be non-empty");
    }
    if (!c_.allFinite()) throw InvalidInput("cost matrix has non-finite entries");
  }

  /// C = -delta on the first min(n, m) rows; zero rows beyond the states.
  static CostMatrix minimum_error(Index outcomes, Index states) {
    RMatrix c = RMatrix::Zero(outcomes, states);
    for (Index k = 0; k < std::min(outcomes, states); ++k) c(k, k) = -1.0;
    return CostMatrix(std::move(c));
  }

  Index outcomes() const { return c_.rows(); }
  Index states() const { return c_.cols(); }
  double operator()(Index i, Index k) const { return c_(i, k); }
  const RMatrix& matrix() const { return c_; }

 private:
  RMatrix c_;
};

/// q(i|j): probability that the detector reports i when an ideal projective
/// measurement would have given j. Row index observed, column index ideal;
/// every column sums to one.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(RMatrix q, const ToleranceProfile& tol = {})
      : q_(std::move(q)) {
    detail::require(validate_confusion(q_, tol), "confusion matrix");
  }

  static ConfusionMatrix identity(Index n) {
    return ConfusionMatrix(RMatrix::Identity(n, n));
  }

  /// Completely random detection, q(i|j) = 1/n.
  static ConfusionMatrix uniform(Index n) {
    return ConfusionMatrix(RMatrix::Constant(n, n, 1.0 / static_cast<double>(n)));
  }

  Index size() const { return q_.rows(); }
  double operator()(Index observed, Index ideal) const {
    return q_(observed, ideal);
  }
  const RMatrix& matrix() const { return q_; }

 private:
  RMatrix q_;
};

/// Stochastic maps compose: (second . first)(i|j) = sum_k second(i|k) first(k|j).
inline ConfusionMatrix compose(const ConfusionMatrix& second,
                               const ConfusionMatrix& first) {
  if (second.size() != first.size()) {
    throw InvalidInput("cannot compose confusion matrices of different size");
  }
  return ConfusionMatrix(second.matrix() * first.matrix());
}

/// A full discrimination task: states with priors, costs and detector noise.
struct Problem {
  Ensemble ensemble;
  CostMatrix cost;
  ConfusionMatrix confusion;

  Problem(Ensemble e, CostMatrix c, ConfusionMatrix q)
      : ensemble(std::move(e)), cost(std::move(c)), confusion(std::move(q)) {
    if (cost.states() != static_cast<Index>(ensemble.size())) {
      throw InvalidInput("cost matrix has " + std::to_string(cost.states()) +
                         " columns but the ensemble has " +
                         std::to_string(ensemble.size()) + " states");
    }
    if (confusion.size() != cost.outcomes()) {
      throw InvalidInput("confusion matrix is " +
                         std::to_string(confusion.size()) +
                         "x" + std::to_string(confusion.size()) +
                         " but the cost matrix has " +
                         std::to_string(cost.outcomes()) + " outcomes");
    }
  }

  /// Minimum-error problem with perfect detection.
  static Problem ideal_minimum_error(Ensemble e) {
    const auto m = static_cast<Index>(e.size());
    return Problem(std::move(e), CostMatrix::minimum_error(m, m),
                   ConfusionMatrix::identity(m));
  }

  Index outcomes() const { return cost.outcomes(); }
};

inline ValidationReport validate(const DensityMatrix& rho,
                                 const ToleranceProfile& tol = {}) {
  return validate_density_matrix(rho.matrix(), tol);
}

inline ValidationReport validate(const Povm& povm,
                                 const ToleranceProfile& tol = {}) {
  return validate_povm(povm.operators(), tol);
}

inline ValidationReport validate(const ConfusionMatrix& q,
                                 const ToleranceProfile& tol = {}) {
  return validate_confusion(q.matrix(), tol);
}

inline ValidationReport validate(const Ensemble& e,
                                 const ToleranceProfile& tol = {}) {
  std::vector<CMatrix> mats;
  for (const auto& s : e.states()) mats.push_back(s.matrix());
  return validate_ensemble(e.priors(), mats, tol);
}

}  // namespace noisy_discrimination

#endif  // NOISY_DISCRIMINATION_MODEL_HPP_
