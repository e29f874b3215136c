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

#ifndef NOISY_DISCRIMINATION_NOISE_TRANSFORM_HPP_
#define NOISY_DISCRIMINATION_NOISE_TRANSFORM_HPP_

#include <span>
#include <string>
#include <vector>

#include "noisy_discrimination/errors.hpp"
#include "noisy_discrimination/linalg.hpp"
#include "noisy_discrimination/model.hpp"

namespace noisy_discrimination {

/// Mixed measurement operators actually realised by a noisy detector:
/// Pi~_i = sum_j q(i|j) Pi_j.
inline Povm effective_povm(const ConfusionMatrix& q, const Povm& povm) {
  const auto n = povm.size();
  if (static_cast<Index>(n) != q.size()) {
    throw InvalidInput("confusion matrix size " + std::to_string(q.size()) +
                       " does not match POVM with " + std::to_string(n) +
                       " outcomes");
  }
  std::vector<CMatrix> out(n, CMatrix::Zero(povm.dim(), povm.dim()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double w = q(static_cast<Index>(i), static_cast<Index>(j));
      if (w != 0.0) out[i] += w * povm[j];
    }
  }
  return Povm(std::move(out));
}

/// C~(j, k) = sum_i C(i, k) q(i|j), i.e. C~ = q^T C.
inline CostMatrix modified_costs(const CostMatrix& c,
                                 const ConfusionMatrix& q) {
  if (c.outcomes() != q.size()) {
    throw InvalidInput("cost matrix has " + std::to_string(c.outcomes()) +
                       " outcomes but confusion matrix is " +
                       std::to_string(q.size()) + "x" +
                       std::to_string(q.size()));
  }
  return CostMatrix(q.matrix().transpose() * c.matrix());
}

enum class Provenance { ideal, modified };

/// W_i = sum_k C(i, k) p_k rho_k, one Hermitian operator per outcome.
struct RiskOperators {
  std::vector<CMatrix> operators;
  Provenance provenance = Provenance::ideal;

  std::size_t size() const { return operators.size(); }
  Index dim() const { return operators.front().rows(); }
  const CMatrix& operator[](std::size_t i) const { return operators[i]; }
};

inline RiskOperators risk_operators(const CostMatrix& c, const Ensemble& e,
                                    Provenance provenance = Provenance::ideal) {
  if (c.states() != static_cast<Index>(e.size())) {
    throw InvalidInput("cost matrix has " + std::to_string(c.states()) +
                       " columns for an ensemble of " +
                       std::to_string(e.size()) + " states");
  }
  const Index d = e.dim();
  RiskOperators w{std::vector<CMatrix>(static_cast<std::size_t>(c.outcomes()),
                                       CMatrix::Zero(d, d)),
                  provenance};
  for (Index i = 0; i < c.outcomes(); ++i) {
    for (std::size_t k = 0; k < e.size(); ++k) {
      const double weight = c(i, static_cast<Index>(k)) * e.prior(k);
      if (weight != 0.0) {
        w.operators[static_cast<std::size_t>(i)] +=
            weight * e.state(k).matrix();
      }
    }
  }
  return w;
}

/// W~_j built from the modified costs C~ = q^T C.
inline RiskOperators modified_risk_operators(const CostMatrix& c,
                                             const ConfusionMatrix& q,
                                             const Ensemble& e) {
  return risk_operators(modified_costs(c, q), e, Provenance::modified);
}

inline RiskOperators modified_risk_operators(const Problem& p) {
  return modified_risk_operators(p.cost, p.confusion, p.ensemble);
}

namespace detail {

inline void check_sizes(std::span<const CMatrix> povm, const RiskOperators& w) {
  if (povm.size() != w.size()) {
    throw InvalidInput("POVM has " + std::to_string(povm.size()) +
                       " outcomes but there are " + std::to_string(w.size()) +
                       " risk operators");
  }
  if (!povm.empty() && povm.front().rows() != w.dim()) {
    throw InvalidInput("POVM and risk operators act on different dimensions");
  }
}

inline Complex raw_cost(std::span<const CMatrix> povm, const RiskOperators& w) {
  Complex total = 0.0;
  for (std::size_t i = 0; i < povm.size(); ++i) {
    total += trace_of_product(w[i], povm[i]);
  }
  return total;
}

}  // namespace detail

/// Average cost Tr sum_i W_i Pi_i.
///
/// Throws NumericalFailure when the trace has an imaginary part of 1e-8 or
/// more, which only happens for non-Hermitian inputs.
inline double average_cost(std::span<const CMatrix> povm,
                           const RiskOperators& w) {
  detail::check_sizes(povm, w);
  const Complex total = detail::raw_cost(povm, w);
  if (std::abs(total.imag()) >= 1e-8) {
    throw NumericalFailure("average cost has imaginary part " +
                           std::to_string(total.imag()));
  }
  return total.real();
}

inline double average_cost(const Povm& povm, const RiskOperators& w) {
  return average_cost(povm.operators(), w);
}

/// Gamma = sum_i W_i Pi_i together with its Hermiticity residual. At an
/// optimum the one-sided product is Hermitian; elsewhere it need not be.
struct LagrangeOperator {
  CMatrix gamma;
  double hermiticity_residual = 0.0;

  CMatrix symmetrized() const { return hermitize(gamma); }
};

inline LagrangeOperator lagrange_operator(std::span<const CMatrix> povm,
                                          const RiskOperators& w) {
  detail::check_sizes(povm, w);
  CMatrix gamma = CMatrix::Zero(w.dim(), w.dim());
  for (std::size_t i = 0; i < povm.size(); ++i) gamma += w[i] * povm[i];
  const double residual = hermiticity_residual(gamma);
  return {std::move(gamma), residual};
}

inline LagrangeOperator lagrange_operator(const Povm& povm,
                                          const RiskOperators& w) {
  return lagrange_operator(povm.operators(), w);
}

struct CostEquivalence {
  double via_effective_povm = 0.0;  // Tr sum_i W_i Pi~_i
  double via_modified_risk = 0.0;   // Tr sum_j W~_j Pi_j
  double difference = 0.0;
};

/// Evaluates the noisy cost both ways: ideal risk operators against the
/// effective POVM, and modified risk operators against the ideal POVM.
inline CostEquivalence noisy_cost_equivalence_check(const CostMatrix& c,
                                                    const ConfusionMatrix& q,
                                                    const Ensemble& e,
                                                    const Povm& povm) {
  const double lhs =
      average_cost(effective_povm(q, povm), risk_operators(c, e));
  const double rhs = average_cost(povm, modified_risk_operators(c, q, e));
  return {lhs, rhs, std::abs(lhs - rhs)};
}

/// Identity label maps of length n.
inline std::vector<int> identity_labels(std::size_t n) {
  std::vector<int> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<int>(i);
  return out;
}

/// The problem seen by the ideal strategy when ideal label j is routed to
/// detector channel assignment[j] and observed outcome i is reported as
/// outcome inference[i]:
///   q'(i|j) = q(i|assignment[j]),   C'(i, k) = C(inference[i], k).
inline Problem relabel(const Problem& p, std::span<const int> assignment,
                       std::span<const int> inference) {
  const Index n = p.outcomes();
  if (static_cast<Index>(assignment.size()) != n ||
      static_cast<Index>(inference.size()) != n) {
    throw InvalidInput("label maps must have one entry per outcome");
  }
  RMatrix q(n, n);
  RMatrix c(n, p.cost.states());
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (Index j = 0; j < n; ++j) {
    const int channel = assignment[static_cast<std::size_t>(j)];
    if (channel < 0 || channel >= n || used[static_cast<std::size_t>(channel)]) {
      throw InvalidInput("assignment is not a permutation");
    }
    used[static_cast<std::size_t>(channel)] = true;
    q.col(j) = p.confusion.matrix().col(channel);
  }
  for (Index i = 0; i < n; ++i) {
    const int report = inference[static_cast<std::size_t>(i)];
    if (report < 0 || report >= n) {
      throw InvalidInput("inference map entry out of range");
    }
    c.row(i) = p.cost.matrix().row(report);
  }
  return Problem(p.ensemble, CostMatrix(std::move(c)),
                 ConfusionMatrix(std::move(q)));
}

}  // namespace noisy_discrimination

#endif  // NOISY_DISCRIMINATION_NOISE_TRANSFORM_HPP_
