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


// Builders shared by the test suites. Kept free of solver code so the
// expected values computed from them stay independent.

#ifndef NOISY_DISCRIMINATION_TESTS_SUPPORT_HPP_
#define NOISY_DISCRIMINATION_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "noisy_discrimination/model.hpp"

namespace nd_test {

using namespace noisy_discrimination;

inline const double kSqrt3 = std::sqrt(3.0);

inline CVector ket(std::initializer_list<Complex> amps) {
  CVector v(static_cast<Index>(amps.size()));
  Index k = 0;
  for (const auto& a : amps) v(k++) = a;
  return v;
}

/// -|0>, (|0> + sqrt3 |1>)/2, (|0> - sqrt3 |1>)/2.
inline std::vector<CVector> trine_kets() {
  return {ket({-1.0, 0.0}), ket({0.5, kSqrt3 / 2.0}), ket({0.5, -kSqrt3 / 2.0})};
}

inline Ensemble trine_ensemble() {
  std::vector<DensityMatrix> st;
  for (const auto& v : trine_kets()) st.push_back(pure_state_density(v));
  return Ensemble({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, std::move(st));
}

/// Outcome 0 read correctly with probability 1 - 2q, misread as 1 or 2 with
/// probability q each; outcomes 1 and 2 are read perfectly.
inline RMatrix trine_confusion(double q) {
  RMatrix m = RMatrix::Identity(3, 3);
  m(0, 0) = 1.0 - 2.0 * q;
  m(1, 0) = q;
  m(2, 0) = q;
  return m;
}

inline Problem trine_problem(double q) {
  return Problem(trine_ensemble(), CostMatrix::minimum_error(3, 3),
                 ConfusionMatrix(trine_confusion(q)));
}

/// Trine POVM (2/3)|psi_i><psi_i|.
inline std::vector<CMatrix> trine_povm() {
  std::vector<CMatrix> ops;
  for (const auto& v : trine_kets()) ops.push_back((2.0 / 3.0) * v * v.adjoint());
  return ops;
}

/// Analytic optimal noisy trine cost: (3q^2 - 5q + 2) / (3(2q - 1)) below
/// the critical noise, -(2 + sqrt3)/6 (projectors onto |+>, |->) above it.
inline double trine_cost_closed_form(double q) {
  const double qc = (1.0 - 1.0 / kSqrt3) / 2.0;
  if (q >= qc) return -(2.0 + kSqrt3) / 6.0;
  return (3.0 * q * q - 5.0 * q + 2.0) / (3.0 * (2.0 * q - 1.0));
}

/// Analytic trace of Pi_0 for the noisy trine: 1 - 1/(3(1-2q)^2), floored at 0.
inline double trine_a_closed_form(double q) {
  return std::max(0.0, 1.0 - 1.0 / (3.0 * (1.0 - 2.0 * q) * (1.0 - 2.0 * q)));
}

class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

  CMatrix gaussian(Index rows, Index cols) {
    CMatrix a(rows, cols);
    for (Index k = 0; k < a.size(); ++k) a.data()[k] = Complex(normal(), normal());
    return a;
  }

  CMatrix hermitian(Index d) {
    const CMatrix a = gaussian(d, d);
    return 0.5 * (a + a.adjoint());
  }

  /// Density matrix of the given rank (full rank when rank == 0).
  DensityMatrix density(Index d, Index rank = 0) {
    const CMatrix a = gaussian(d, rank == 0 ? d : rank);
    CMatrix rho = a * a.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(0.5 * (rho + rho.adjoint()));
  }

  DensityMatrix pure(Index d) { return density(d, 1); }

  std::vector<double> simplex(std::size_t n) {
    std::vector<double> p(n);
    double s = 0.0;
    for (auto& x : p) {
      x = -std::log(1.0 - uniform());
      s += x;
    }
    for (auto& x : p) x /= s;
    return p;
  }

  RMatrix stochastic(Index n) {
    RMatrix q(n, n);
    for (Index j = 0; j < n; ++j) {
      const auto col = simplex(static_cast<std::size_t>(n));
      for (Index i = 0; i < n; ++i) q(i, j) = col[static_cast<std::size_t>(i)];
    }
    return q;
  }

  Ensemble ensemble(Index d, std::size_t m, bool pure_states = false) {
    std::vector<DensityMatrix> st;
    for (std::size_t k = 0; k < m; ++k) st.push_back(pure_states ? pure(d) : density(d));
    return Ensemble(simplex(m), std::move(st));
  }

  /// Random POVM from Gaussian factors; independent of the oracle module.
  std::vector<CMatrix> povm(std::size_t n, Index d) {
    std::vector<CMatrix> ops;
    CMatrix s = CMatrix::Zero(d, d);
    for (std::size_t i = 0; i < n; ++i) {
      const CMatrix a = gaussian(d, d);
      ops.push_back(a * a.adjoint());
      s += ops.back();
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(s);
    const CMatrix r = es.eigenvectors() *
                      es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                      es.eigenvectors().adjoint();
    for (auto& op : ops) {
      op = r * op * r;
      op = 0.5 * (op + op.adjoint()).eval();
    }
    return ops;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Direct noisy cost sum_{i,j,k} C(i,k) p_k q(i|j) Tr(Pi_j rho_k).
inline double direct_noisy_cost(const Problem& p, const std::vector<CMatrix>& povm) {
  double total = 0.0;
  const auto n = p.outcomes();
  for (std::size_t k = 0; k < p.ensemble.size(); ++k) {
    const CMatrix& rho = p.ensemble.state(k).matrix();
    for (Index j = 0; j < n; ++j) {
      const double born = (povm[static_cast<std::size_t>(j)] * rho).trace().real();
      for (Index i = 0; i < n; ++i) {
        total += p.cost(i, static_cast<Index>(k)) * p.ensemble.prior(k) * p.confusion(i, j) * born;
      }
    }
  }
  return total;
}

}  // namespace nd_test

#endif  // NOISY_DISCRIMINATION_TESTS_SUPPORT_HPP_
