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

#ifndef NOISY_DISCRIMINATION_SOLVERS_ITERATIVE_HPP_
#define NOISY_DISCRIMINATION_SOLVERS_ITERATIVE_HPP_

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "noisy_discrimination/errors.hpp"
#include "noisy_discrimination/linalg.hpp"
#include "noisy_discrimination/noise_transform.hpp"
#include "noisy_discrimination/solvers/certify.hpp"
#include "noisy_discrimination/solvers/result.hpp"

namespace noisy_discrimination {

namespace detail {

// Orthonormal basis of d x d Hermitian matrices under <A, B> = Re Tr(A B).
inline std::vector<CMatrix> hermitian_basis(Index d) {
  std::vector<CMatrix> basis;
  const double r = 1.0 / std::sqrt(2.0);
  for (Index a = 0; a < d; ++a) {
    CMatrix e = CMatrix::Zero(d, d);
    e(a, a) = 1.0;
    basis.push_back(e);
  }
  for (Index a = 0; a < d; ++a) {
    for (Index b = a + 1; b < d; ++b) {
      CMatrix e = CMatrix::Zero(d, d);
      e(a, b) = e(b, a) = r;
      basis.push_back(e);
      CMatrix f = CMatrix::Zero(d, d);
      f(a, b) = Complex(0.0, -r);
      f(b, a) = Complex(0.0, r);
      basis.push_back(f);
    }
  }
  return basis;
}

// Columns are the basis elements of hermitian_basis, vectorised column-major.
inline CMatrix basis_columns(std::span<const CMatrix> basis) {
  const Index d = basis.empty() ? 0 : basis.front().rows();
  CMatrix a(d * d, static_cast<Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    a.col(static_cast<Index>(k)) = basis[k].reshaped();
  }
  return a;
}

// Number of eigenvalues above `threshold` for each operator.
inline std::vector<Index> rank_profile(std::span<const CMatrix> povm,
                                       double threshold) {
  std::vector<Index> ranks;
  for (const auto& p : povm) {
    const RVector vals = eigh(p, false).eigenvalues();
    ranks.push_back((vals.array() > threshold).count());
  }
  return ranks;
}

// Newton refinement of a near-optimal POVM on a fixed-rank manifold.
//
// Each Pi_i is factored as B_i B_i^dagger with B_i of rank k_i (eigenvalues
// of the current iterate above `rank_threshold`). The optimality conditions
//   (W_i - Gamma) B_i = 0,   sum_i B_i B_i^dagger = 1
// are solved for (B, Gamma) by Gauss-Newton with minimum-norm steps, which
// absorbs the unitary gauge freedom B_i -> B_i U. Returns nothing if the
// system does not converge; the caller decides by certification whether a
// returned POVM is acceptable.
inline std::optional<std::vector<CMatrix>> polish_fixed_rank(
    const RiskOperators& w, std::span<const CMatrix> povm,
    double rank_threshold) {
  const Index d = w.dim();
  const std::size_t n = w.size();
  std::vector<CMatrix> factors;
  for (const auto& p : povm) {
    const auto eig = eigh(p);
    std::vector<Index> keep;
    for (Index k = 0; k < d; ++k) {
      if (eig.eigenvalues()(k) > rank_threshold) keep.push_back(k);
    }
    CMatrix b(d, static_cast<Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) {
      b.col(static_cast<Index>(c)) = eig.eigenvectors().col(keep[c]) *
                                     std::sqrt(eig.eigenvalues()(keep[c]));
    }
    factors.push_back(std::move(b));
  }
  CMatrix gamma = lagrange_operator(povm, w).symmetrized();
  const auto basis = hermitian_basis(d);
  const auto nb = static_cast<Index>(basis.size());
  const CMatrix cols = basis_columns(basis);

  Index nvars = nb;
  Index nres = nb;
  for (const auto& b : factors) {
    nvars += 2 * b.size();
    nres += 2 * b.size();
  }

  auto hermitian_coords = [&](const CMatrix& h, RVector& out, Index offset) {
    out.segment(offset, nb) = (cols.adjoint() * h.reshaped()).real();
  };
  // Residual, or its derivative along (db, dg) when those are given.
  auto evaluate = [&](const std::vector<CMatrix>& b, const CMatrix& g,
                      const std::vector<CMatrix>* db, const CMatrix* dg) {
    RVector out(nres);
    Index o = 0;
    CMatrix gram = CMatrix::Zero(d, d);
    for (std::size_t i = 0; i < n; ++i) {
      CMatrix r;
      if (db == nullptr) {
        r = (w[i] - g) * b[i];
        gram += b[i] * b[i].adjoint();
      } else {
        r = (w[i] - g) * (*db)[i] - (*dg) * b[i];
        gram += (*db)[i] * b[i].adjoint() + b[i] * (*db)[i].adjoint();
      }
      for (Index k = 0; k < r.size(); ++k) out(o + k) = r.data()[k].real();
      o += r.size();
      for (Index k = 0; k < r.size(); ++k) out(o + k) = r.data()[k].imag();
      o += r.size();
    }
    if (db == nullptr) gram -= CMatrix::Identity(d, d);
    hermitian_coords(gram, out, o);
    return out;
  };
  auto unpack = [&](const RVector& v, std::vector<CMatrix>& db, CMatrix& dg) {
    Index o = 0;
    db.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      db[i].resize(d, factors[i].cols());
      const Index m = db[i].size();
      for (Index k = 0; k < m; ++k) {
        db[i].data()[k] = Complex(v(o + k), v(o + m + k));
      }
      o += 2 * m;
    }
    dg = CMatrix::Zero(d, d);
    for (Index a = 0; a < nb; ++a) dg += v(o + a) * basis[static_cast<std::size_t>(a)];
  };

  RMatrix jac(nres, nvars);
  std::vector<CMatrix> db;
  CMatrix dg;
  double previous = std::numeric_limits<double>::infinity();
  for (int step = 0; step < 30; ++step) {
    const RVector f = evaluate(factors, gamma, nullptr, nullptr);
    if (!f.allFinite()) return std::nullopt;
    const double residual = f.cwiseAbs().maxCoeff();
    if (residual < 1e-15) break;
    // A correct rank guess converges quadratically; stalling means it is wrong.
    if (step >= 6 && residual > 0.9 * previous && residual > 1e-13) {
      return std::nullopt;
    }
    if (step >= 15 && residual > 1e-12) return std::nullopt;
    previous = residual;
    for (Index c = 0; c < nvars; ++c) {
      RVector e = RVector::Zero(nvars);
      e(c) = 1.0;
      unpack(e, db, dg);
      jac.col(c) = evaluate(factors, gamma, &db, &dg);
    }
    const RVector delta = jac.completeOrthogonalDecomposition().solve(-f);
    if (!delta.allFinite() || delta.cwiseAbs().maxCoeff() > 1e3) {
      return std::nullopt;
    }
    unpack(delta, db, dg);
    for (std::size_t i = 0; i < n; ++i) factors[i] += db[i];
    gamma = hermitize(gamma + dg);
    if (delta.cwiseAbs().maxCoeff() < 1e-16) break;
  }
  std::vector<CMatrix> out;
  CMatrix sum = CMatrix::Zero(d, d);
  for (const auto& b : factors) {
    out.push_back(hermitize(b * b.adjoint()));
    sum += out.back();
  }
  if (min_eigenvalue(sum) <= 0.0) return std::nullopt;
  const CMatrix fix = inverse_sqrt_positive(sum);
  for (auto& p : out) p = hermitize(fix * p * fix);
  return out;
}

// Largest step alpha <= 1 with x + alpha * dx still positive definite, or
// zero if x itself is not.
inline double max_step(const CMatrix& x, const CMatrix& dx) {
  Eigen::LLT<CMatrix> llt(hermitize(x));
  if (llt.info() != Eigen::Success) return 0.0;
  const CMatrix linv = llt.matrixL().solve(CMatrix::Identity(x.rows(), x.cols()));
  const double lo = min_eigenvalue(linv * dx * linv.adjoint());
  return lo >= 0.0 ? 1.0 : std::min(1.0, -1.0 / lo);
}

struct InteriorPoint {
  std::vector<CMatrix> povm;
  int steps = 0;
};

// Primal-dual interior-point method (HKM direction with a Mehrotra-type
// centring parameter) for
//   min sum_i Tr(W_i X_i)  s.t.  sum_i X_i = 1,  X_i >= 0,
//   max Tr(Y)              s.t.  Z_i = W_i - Y >= 0.
// Starts primal and dual feasible and stops at duality gap ~1e-11. The
// returned POVM is strictly positive definite and exactly complete.
inline std::optional<InteriorPoint> interior_point(const RiskOperators& w,
                                                   int max_steps = 100) {
  const Index d = w.dim();
  const std::size_t n = w.size();
  const auto basis = hermitian_basis(d);
  const auto nb = static_cast<Index>(basis.size());
  const CMatrix cols = basis_columns(basis);
  const CMatrix id = CMatrix::Identity(d, d);

  double scale = 1.0;
  double lowest = min_eigenvalue(w[0]);
  for (const auto& op : w.operators) {
    scale = std::max(scale, max_abs(op));
    lowest = std::min(lowest, min_eigenvalue(op));
  }
  std::vector<CMatrix> x(n, id / static_cast<double>(n));
  CMatrix y = id * (lowest - 1.0);
  std::vector<CMatrix> z(n), zinv(n), dx(n);
  RMatrix schur(nb, nb);
  int step = 0;
  for (; step < max_steps; ++step) {
    for (std::size_t i = 0; i < n; ++i) {
      z[i] = hermitize(w[i] - y);
      Eigen::LLT<CMatrix> llt(z[i]);
      if (llt.info() != Eigen::Success) return std::nullopt;
      zinv[i] = hermitize(llt.solve(id));
    }
    double gap = 0.0;
    for (std::size_t i = 0; i < n; ++i) gap += trace_of_product(x[i], z[i]).real();
    const double mu = gap / static_cast<double>(n * static_cast<std::size_t>(d));
    if (gap < 1e-11 * scale) break;

    CMatrix primal_residual = id;
    for (const auto& xi : x) primal_residual -= xi;
    // Re Tr(E_a X E_b Z^-1) = Re vec(E_a)^T T vec(E_b) with
    // T[(p,q),(r,s)] = sum_i X_i(q,r) Z_i^-1(s,p).
    CMatrix t = CMatrix::Zero(d * d, d * d);
    for (std::size_t i = 0; i < n; ++i) {
      for (Index q = 0; q < d; ++q) {
        for (Index p = 0; p < d; ++p) {
          for (Index s = 0; s < d; ++s) {
            for (Index r = 0; r < d; ++r) {
              t(p + d * q, r + d * s) += x[i](q, r) * zinv[i](s, p);
            }
          }
        }
      }
    }
    schur = (cols.transpose() * t * cols).real();
    schur = 0.5 * (schur + schur.transpose()).eval();
    const Eigen::LDLT<RMatrix> factor(schur);
    if (factor.info() != Eigen::Success) return std::nullopt;

    CMatrix dy;
    auto direction = [&](double sigma) {
      CMatrix rhs = primal_residual;
      for (std::size_t i = 0; i < n; ++i) rhs -= sigma * mu * zinv[i] - x[i];
      rhs = hermitize(rhs);
      const RVector r = (cols.adjoint() * rhs.reshaped()).real();
      const RVector coeff = factor.solve(r);
      dy = CMatrix::Zero(d, d);
      for (Index a = 0; a < nb; ++a) dy += coeff(a) * basis[static_cast<std::size_t>(a)];
      for (std::size_t i = 0; i < n; ++i) {
        dx[i] = hermitize(sigma * mu * zinv[i] - x[i] + x[i] * dy * zinv[i]);
      }
    };
    auto steps = [&] {
      double ap = 1.0, ad = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        ap = std::min(ap, max_step(x[i], dx[i]));
        ad = std::min(ad, max_step(z[i], -dy));
      }
      return std::pair{ap, ad};
    };

    direction(0.0);
    auto [ap, ad] = steps();
    double predicted = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      predicted +=
          trace_of_product(x[i] + ap * dx[i], z[i] - ad * dy).real();
    }
    const double ratio = std::max(0.0, predicted / gap);
    direction(std::min(1.0, ratio * ratio * ratio));
    std::tie(ap, ad) = steps();
    if (!(ap > 0.0) || !(ad > 0.0)) break;
    ap = std::min(1.0, 0.95 * ap);
    ad = std::min(1.0, 0.95 * ad);
    for (std::size_t i = 0; i < n; ++i) x[i] = hermitize(x[i] + ap * dx[i]);
    y = hermitize(y + ad * dy);
  }
  CMatrix sum = CMatrix::Zero(d, d);
  for (const auto& xi : x) {
    if (min_eigenvalue(xi) <= 0.0) return std::nullopt;
    sum += xi;
  }
  const CMatrix fix = inverse_sqrt_positive(sum);
  for (auto& xi : x) xi = hermitize(fix * xi * fix);
  return InteriorPoint{std::move(x), step};
}

// Rank thresholds worth trying for a near-optimal POVM: the geometric
// midpoints of the widest gaps in the pooled spectrum, then fixed fallbacks.
inline std::vector<double> rank_thresholds(std::span<const CMatrix> povm) {
  std::vector<double> vals;
  for (const auto& p : povm) {
    const RVector ev = eigh(p, false).eigenvalues();
    for (Index k = 0; k < ev.size(); ++k) vals.push_back(std::max(ev(k), 1e-300));
  }
  std::sort(vals.begin(), vals.end());
  std::vector<std::pair<double, double>> gaps;  // (log gap, midpoint)
  for (std::size_t k = 1; k < vals.size(); ++k) {
    gaps.emplace_back(std::log(vals[k] / vals[k - 1]),
                      std::sqrt(vals[k] * vals[k - 1]));
  }
  std::sort(gaps.begin(), gaps.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<double> out;
  if (!gaps.empty()) out.push_back(gaps[0].second);
  for (const double t : {1e-2, 1e-3, 1e-4, 1e-6}) out.push_back(t);
  for (std::size_t k = 1; k < std::min<std::size_t>(3, gaps.size()); ++k) {
    out.push_back(gaps[k].second);
  }
  return out;
}

// Tries a fixed-rank refinement for every distinct rank profile suggested by
// rank_thresholds; returns the first POVM whose certificate clears `target`.
inline std::optional<std::vector<CMatrix>> try_polish(
    const RiskOperators& w, std::span<const CMatrix> povm, double target) {
  std::vector<std::vector<Index>> tried;
  for (const double threshold : rank_thresholds(povm)) {
    auto ranks = rank_profile(povm, threshold);
    if (std::find(tried.begin(), tried.end(), ranks) != tried.end()) continue;
    tried.push_back(std::move(ranks));
    auto refined = polish_fixed_rank(w, povm, threshold);
    if (!refined || !validate_povm(*refined).ok()) continue;
    if (certify(*refined, w).worst_residual() < target) return refined;
  }
  return std::nullopt;
}

}  // namespace detail

/// General minimum-cost POVM optimiser for any number of outcomes and any
/// dimension.
///
/// Runs the fixed-point iteration
///   G_i = lambda 1 - W_i,  lambda = max_i lambda_max(W_i) + 1,
///   Pi_i <- S^{-1/2} G_i Pi_i G_i S^{-1/2},  S = sum_j G_j Pi_j G_j,
/// from Pi_i = 1/n; every iterate is an exact POVM. At geometrically spaced
/// checkpoints the iterate is handed to a fixed-rank Newton refinement, and
/// the refined POVM is kept only if it certifies. Iteration stops once every
/// certificate residual is below tol/100, or when it stalls while already
/// passing at tol.
///
/// Throws ConvergenceFailure (with the best iterate) if the certificate does
/// not pass at `tol` within `max_iter` iterations.
inline SolveResult iterative_solve(const RiskOperators& w, double tol = 1e-9,
                                   int max_iter = 10000) {
  if (w.size() == 0) throw InvalidInput("need at least one risk operator");
  if (!(tol > 0.0)) throw InvalidInput("tolerance must be positive");
  for (const auto& op : w.operators) {
    if (op.rows() != w.dim() || op.cols() != w.dim()) {
      throw InvalidInput("risk operators must share one square dimension");
    }
    if (hermiticity_residual(op) > ToleranceProfile{}.hermiticity) {
      throw InvalidInput("risk operators must be Hermitian");
    }
  }
  const Index d = w.dim();
  const std::size_t n = w.size();
  const double strict = tol * 1e-2;

  double lambda = max_eigenvalue(w[0]);
  for (std::size_t i = 1; i < n; ++i) lambda = std::max(lambda, max_eigenvalue(w[i]));
  lambda += 1.0;
  std::vector<CMatrix> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = CMatrix::Identity(d, d) * lambda - w[i];
  }

  std::vector<CMatrix> pi(n, CMatrix::Identity(d, d) / static_cast<double>(n));
  int steps = 0;
  auto finish = [&](std::vector<CMatrix> ops, int iterations) {
    SolveResult r = make_result(Povm(std::move(ops)), w, StrategyKind::iterative);
    r.iterations = iterations;
    return r;
  };

  CertificateReport cert = certify(pi, w, tol);
  if (cert.worst_residual() < strict) return finish(pi, 0);
  if (auto warm = detail::interior_point(w, std::min(100, max_iter))) {
    steps = warm->steps;
    if (auto refined = detail::try_polish(w, warm->povm, strict)) {
      return finish(std::move(*refined), steps);
    }
    pi = std::move(warm->povm);
    cert = certify(pi, w, tol);
  }
  double best_worst = cert.worst_residual();
  int since_improvement = 0;
  int next_polish = 50;
  int it = 0;

  std::vector<CMatrix> terms(n);
  constexpr int kCheckEvery = 10;
  while (steps + it < max_iter) {
    ++it;
    CMatrix s = CMatrix::Zero(d, d);
    for (std::size_t i = 0; i < n; ++i) {
      terms[i] = g[i] * pi[i] * g[i];
      s += terms[i];
    }
    const CMatrix r = inverse_sqrt_positive(hermitize(s));
    for (std::size_t i = 0; i < n; ++i) pi[i] = hermitize(r * terms[i] * r);

    if (it == next_polish) {
      next_polish = it + std::max(50, it / 2);
      if (auto refined = detail::try_polish(w, pi, strict)) {
        return finish(std::move(*refined), steps + it);
      }
    }
    if (it % kCheckEvery == 0 || steps + it == max_iter) {
      cert = certify(pi, w, tol);
      const double worst = cert.worst_residual();
      if (worst < strict) return finish(pi, steps + it);
      if (worst < 0.5 * best_worst) {
        best_worst = worst;
        since_improvement = 0;
      } else {
        since_improvement += kCheckEvery;
      }
      if (cert.passed && since_improvement >= 500) return finish(pi, steps + it);
    }
  }
  cert = certify(pi, w, tol);
  if (cert.passed) return finish(pi, steps + it);
  const double cost = average_cost(pi, w);
  throw ConvergenceFailure(
      "iterative solver did not certify within " + std::to_string(max_iter) +
          " iterations (worst residual " + std::to_string(cert.worst_residual()) +
          ")",
      std::move(pi), cost, cert, steps + it);
}

}  // namespace noisy_discrimination

#endif  // NOISY_DISCRIMINATION_SOLVERS_ITERATIVE_HPP_
