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

#ifndef NOISY_DISCRIMINATION_LINALG_HPP_
#define NOISY_DISCRIMINATION_LINALG_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "noisy_discrimination/errors.hpp"
#include "noisy_discrimination/tolerance.hpp"

namespace noisy_discrimination {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline double max_abs(const CMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline bool all_finite(const CMatrix& a) {
  for (Index i = 0; i < a.size(); ++i) {
    const Complex z = a.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

/// max |A - A^dagger|; zero for Hermitian A.
inline double hermiticity_residual(const CMatrix& a) {
  return max_abs(a - a.adjoint());
}

inline CMatrix hermitize(const CMatrix& a) { return 0.5 * (a + a.adjoint()); }

/// Tr(A B) without forming the product.
inline Complex trace_of_product(const CMatrix& a, const CMatrix& b) {
  return (a.transpose().cwiseProduct(b)).sum();
}

struct EigenDecomposition {
  RVector values;  // descending
  CMatrix vectors; // orthonormal columns, vectors.col(k) pairs with values(k)
};

namespace detail {

// Ascending eigenpairs of the Hermitian part of `a`. No precondition check;
// used on operators the library itself has built.
inline Eigen::SelfAdjointEigenSolver<CMatrix> eigh(const CMatrix& a,
                                                   bool with_vectors = true) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(
      hermitize(a), with_vectors ? Eigen::ComputeEigenvectors
                                 : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("Hermitian eigensolver did not converge");
  }
  return solver;
}

inline bool lexicographically_less(const CVector& a, const CVector& b) {
  for (Index k = 0; k < a.size(); ++k) {
    if (a(k).real() != b(k).real()) return a(k).real() < b(k).real();
    if (a(k).imag() != b(k).imag()) return a(k).imag() < b(k).imag();
  }
  return false;
}

}  // namespace detail

inline double min_eigenvalue(const CMatrix& a) {
  if (a.rows() == 0) return 0.0;
  return detail::eigh(a, false).eigenvalues()(0);
}

inline double max_eigenvalue(const CMatrix& a) {
  if (a.rows() == 0) return 0.0;
  return detail::eigh(a, false).eigenvalues()(a.rows() - 1);
}

/// Eigendecomposition A = V diag(lambda) V^dagger of a Hermitian matrix.
///
/// Eigenvalues come back in descending order. Every eigenvector is rescaled
/// by a phase so that its first component with modulus above 1e-12 is real
/// and positive. Eigenvalues closer than 1e-12 (relative to max(1, |lambda|))
/// form a tie group whose vectors are ordered lexicographically by
/// (re, im) of their components, so repeated calls give identical output.
inline EigenDecomposition hermitian_eigendecomposition(
    const CMatrix& a, const ToleranceProfile& tol = {}) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw InvalidInput("eigendecomposition needs a non-empty square matrix");
  }
  if (!all_finite(a)) throw InvalidInput("matrix has non-finite entries");
  const double herm = hermiticity_residual(a);
  if (herm > tol.hermiticity) {
    throw InvalidInput("matrix is not Hermitian (residual " +
                       std::to_string(herm) + ")");
  }
  const auto solver = detail::eigh(a);
  const Index n = a.rows();
  CMatrix vecs = solver.eigenvectors();
  for (Index k = 0; k < n; ++k) {
    for (Index r = 0; r < n; ++r) {
      if (std::abs(vecs(r, k)) > 1e-12) {
        vecs.col(k) *= std::conj(vecs(r, k)) / std::abs(vecs(r, k));
        vecs(r, k) = Complex(vecs(r, k).real(), 0.0);
        break;
      }
    }
  }
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  const RVector& vals = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(),
                   [&](Index x, Index y) { return vals(x) > vals(y); });
  auto first = order.begin();
  while (first != order.end()) {
    auto last = first + 1;
    while (last != order.end() &&
           std::abs(vals(*(last - 1)) - vals(*last)) <=
               1e-12 * std::max(1.0, std::abs(vals(*last)))) {
      ++last;
    }
    std::sort(first, last, [&](Index x, Index y) {
      return detail::lexicographically_less(vecs.col(x), vecs.col(y));
    });
    first = last;
  }
  EigenDecomposition out{RVector(n), CMatrix(n, n)};
  for (Index k = 0; k < n; ++k) {
    out.values(k) = vals(order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = vecs.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

/// S^{-1/2} for a positive definite S.
inline CMatrix inverse_sqrt_positive(const CMatrix& s) {
  const auto solver = detail::eigh(s);
  const RVector& vals = solver.eigenvalues();
  if (vals(0) <= 0.0) {
    throw NumericalFailure("matrix is not positive definite");
  }
  const RVector scale = vals.array().rsqrt();
  return solver.eigenvectors() * scale.asDiagonal() *
         solver.eigenvectors().adjoint();
}

/// Orthogonal projector onto the span of the orthonormal columns of `basis`.
inline CMatrix projector(const CMatrix& basis) {
  return basis * basis.adjoint();
}

}  // namespace noisy_discrimination

#endif  // NOISY_DISCRIMINATION_LINALG_HPP_
