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


#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "noisy_discrimination/noise_transform.hpp"
#include "noisy_discrimination/solvers/mirror.hpp"
#include "test_support.hpp"

namespace {

using namespace noisy_discrimination;
using nd_test::Random;

CMatrix diag2(double a, double b) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

Ensemble orthogonal_qubits(double p0 = 0.5) {
  return Ensemble({p0, 1.0 - p0}, {DensityMatrix(diag2(1, 0)), DensityMatrix(diag2(0, 1))});
}

TEST(EffectivePovm, IdentityConfusionIsNeutral) {
  Random rng(21);
  const Povm p(rng.povm(3, 2));
  const Povm e = effective_povm(ConfusionMatrix::identity(3), p);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(e[i], p[i]);
}

TEST(EffectivePovm, UniformConfusionGivesMaximallyMixedOperators) {
  Random rng(22);
  const Povm p(rng.povm(4, 3));
  const Povm e = effective_povm(ConfusionMatrix::uniform(4), p);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_LT(max_abs(e[i] - CMatrix::Identity(3, 3) / 4.0), 1e-15);
  }
}

TEST(EffectivePovm, LossyPhotonCounterTruncated) {
  // Number-resolving measurement on Fock states |0>..|N-1> read out by a
  // click detector of efficiency eta: no click on |n> with probability
  // (1 - eta)^n. Outcome 0 is "no click", 1 is "click", the rest unused.
  constexpr Index kN = 12;
  const double eta = 0.7;
  std::vector<CMatrix> fock;
  for (Index n = 0; n < kN; ++n) {
    CMatrix p = CMatrix::Zero(kN, kN);
    p(n, n) = 1.0;
    fock.push_back(p);
  }
  RMatrix q = RMatrix::Zero(kN, kN);
  for (Index n = 0; n < kN; ++n) {
    q(0, n) = std::pow(1.0 - eta, static_cast<double>(n));
    q(1, n) = 1.0 - q(0, n);
  }
  const Povm mixed = effective_povm(ConfusionMatrix(q), Povm(fock));
  for (Index n = 0; n < kN; ++n) {
    EXPECT_NEAR(mixed[0](n, n).real(), std::pow(1.0 - eta, static_cast<double>(n)), 1e-15);
    EXPECT_NEAR(mixed[1](n, n).real(), 1.0 - std::pow(1.0 - eta, static_cast<double>(n)), 1e-15);
  }
  for (std::size_t i = 2; i < mixed.size(); ++i) {
    EXPECT_EQ(mixed[i].cwiseAbs().maxCoeff(), 0.0);
  }
  EXPECT_TRUE(validate(mixed).ok());
}

TEST(EffectivePovm, TrineHandSummation) {
  const std::vector<CMatrix> t = nd_test::trine_povm();
  const Povm e = effective_povm(ConfusionMatrix(nd_test::trine_confusion(0.1)), Povm(t));
  EXPECT_LT(max_abs(e[0] - 0.8 * t[0]), 1e-15);
  EXPECT_LT(max_abs(e[1] - (t[1] + 0.1 * t[0])), 1e-15);
  EXPECT_LT(max_abs(e[2] - (t[2] + 0.1 * t[0])), 1e-15);
  EXPECT_TRUE(validate(e).ok());
}

TEST(EffectivePovm, SizeMismatch) {
  EXPECT_THROW(effective_povm(ConfusionMatrix::identity(2), Povm(nd_test::trine_povm())),
               InvalidInput);
}

TEST(EffectivePovm, ComposesLikeStochasticMaps) {
  Random rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const Povm p(rng.povm(3, 2 + trial % 3));
    const ConfusionMatrix q1(rng.stochastic(3));
    const ConfusionMatrix q2(rng.stochastic(3));
    const Povm twice = effective_povm(q2, effective_povm(q1, p));
    const Povm once = effective_povm(compose(q2, q1), p);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_LT(max_abs(twice[i] - once[i]), 1e-12);
  }
}

TEST(ModifiedCosts, IdentityConfusionIsNeutral) {
  Random rng(24);
  RMatrix c(3, 2);
  for (Index k = 0; k < c.size(); ++k) c.data()[k] = rng.normal();
  EXPECT_EQ(modified_costs(CostMatrix(c), ConfusionMatrix::identity(3)).matrix(), c);
}

TEST(ModifiedCosts, TrineModelEqualsNegatedConfusionTranspose) {
  const double q = 0.15;
  const RMatrix ct =
      modified_costs(CostMatrix::minimum_error(3, 3), ConfusionMatrix(nd_test::trine_confusion(q)))
          .matrix();
  RMatrix expected(3, 3);
  expected << 2 * q - 1, -q, -q,  //
      0, -1, 0,                   //
      0, 0, -1;
  EXPECT_LT((ct - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ModifiedCosts, UniformConfusionMakesCostsConstant) {
  const RMatrix ct =
      modified_costs(CostMatrix::minimum_error(4, 4), ConfusionMatrix::uniform(4)).matrix();
  EXPECT_LT((ct.array() + 0.25).abs().maxCoeff(), 1e-15);
}

TEST(ModifiedCosts, SizeMismatch) {
  EXPECT_THROW(modified_costs(CostMatrix::minimum_error(3, 3), ConfusionMatrix::identity(2)),
               InvalidInput);
}

TEST(RiskOperators, OrthogonalMinimumError) {
  const RiskOperators w = risk_operators(CostMatrix::minimum_error(2, 2), orthogonal_qubits());
  EXPECT_EQ(w.provenance, Provenance::ideal);
  EXPECT_LT(max_abs(w[0] + diag2(0.5, 0)), 1e-15);
  EXPECT_LT(max_abs(w[1] + diag2(0, 0.5)), 1e-15);
}

TEST(RiskOperators, NoisyTrineClosedForm) {
  const double q = 0.2;
  const Problem p = nd_test::trine_problem(q);
  const RiskOperators w = modified_risk_operators(p);
  EXPECT_EQ(w.provenance, Provenance::modified);
  const CMatrix& r0 = p.ensemble.state(0).matrix();
  const CMatrix& r1 = p.ensemble.state(1).matrix();
  const CMatrix& r2 = p.ensemble.state(2).matrix();
  EXPECT_LT(max_abs(w[0] - ((2 * q - 1) * r0 - q * (r1 + r2)) / 3.0), 1e-15);
  EXPECT_LT(max_abs(w[1] + r1 / 3.0), 1e-15);
  EXPECT_LT(max_abs(w[2] + r2 / 3.0), 1e-15);
}

TEST(RiskOperators, SingleState) {
  const DensityMatrix rho = pure_state_density(nd_test::ket({0.6, Complex(0, 0.8)}));
  RMatrix c(1, 1);
  c << 2.5;
  const RiskOperators w = risk_operators(CostMatrix(c), Ensemble({1.0}, {rho}));
  EXPECT_LT(max_abs(w[0] - 2.5 * rho.matrix()), 1e-15);
}

TEST(RiskOperators, HermitianAndReconstructs) {
  Random rng(25);
  for (int trial = 0; trial < 30; ++trial) {
    const Index d = 2 + trial % 3;
    const Ensemble e = rng.ensemble(d, 3);
    RMatrix c(4, 3);
    for (Index k = 0; k < c.size(); ++k) c.data()[k] = rng.normal();
    const RiskOperators w = risk_operators(CostMatrix(c), e);
    for (Index i = 0; i < 4; ++i) {
      CMatrix expected = CMatrix::Zero(d, d);
      for (std::size_t k = 0; k < 3; ++k) {
        expected += c(i, static_cast<Index>(k)) * e.prior(k) * e.state(k).matrix();
      }
      EXPECT_LT(max_abs(w[static_cast<std::size_t>(i)] - expected), 1e-12);
      EXPECT_LE(hermiticity_residual(w[static_cast<std::size_t>(i)]), 1e-12);
    }
  }
}

TEST(RiskOperators, LinearInCosts) {
  Random rng(26);
  const Ensemble e = rng.ensemble(3, 3);
  RMatrix a(3, 3), b(3, 3);
  for (Index k = 0; k < a.size(); ++k) {
    a.data()[k] = rng.normal();
    b.data()[k] = rng.normal();
  }
  const RiskOperators wa = risk_operators(CostMatrix(a), e);
  const RiskOperators wb = risk_operators(CostMatrix(b), e);
  const RiskOperators wab = risk_operators(CostMatrix(2.0 * a - 0.5 * b), e);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_LT(max_abs(wab[i] - (2.0 * wa[i] - 0.5 * wb[i])), 1e-12);
  }
}

TEST(RiskOperators, LinearInPriors) {
  Random rng(27);
  std::vector<DensityMatrix> states{rng.density(2), rng.density(2)};
  const CostMatrix c = CostMatrix::minimum_error(2, 2);
  const RiskOperators w1 = risk_operators(c, Ensemble({1.0, 0.0}, states));
  const RiskOperators w2 = risk_operators(c, Ensemble({0.0, 1.0}, states));
  const RiskOperators wm = risk_operators(c, Ensemble({0.3, 0.7}, states));
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_LT(max_abs(wm[i] - (0.3 * w1[i] + 0.7 * w2[i])), 1e-15);
  }
}

TEST(RiskOperators, DimensionMismatch) {
  EXPECT_THROW(risk_operators(CostMatrix::minimum_error(3, 2), nd_test::trine_ensemble()),
               InvalidInput);
}

TEST(AverageCost, OrthogonalStatesPerfectDiscrimination) {
  const RiskOperators w = risk_operators(CostMatrix::minimum_error(2, 2), orthogonal_qubits());
  EXPECT_DOUBLE_EQ(average_cost(Povm({diag2(1, 0), diag2(0, 1)}), w), -1.0);
}

TEST(AverageCost, TrineSuccessTwoThirds) {
  // sum_i (1/3) Tr((2/3) rho_i rho_i) with pure rho_i: 3 * (1/3) * (2/3).
  const double expected = -3.0 * (1.0 / 3.0) * (2.0 / 3.0);
  const RiskOperators w =
      risk_operators(CostMatrix::minimum_error(3, 3), nd_test::trine_ensemble());
  EXPECT_NEAR(average_cost(Povm(nd_test::trine_povm()), w), expected, 1e-15);
}

TEST(AverageCost, ZeroRiskOperators) {
  Random rng(28);
  const RiskOperators w{{CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)}, Provenance::ideal};
  EXPECT_EQ(average_cost(Povm(rng.povm(2, 2)), w), 0.0);
}

TEST(AverageCost, ImaginaryTraceIsNumericalFailure) {
  const RiskOperators w{{CMatrix::Identity(2, 2) * Complex(0, 1)}, Provenance::ideal};
  EXPECT_THROW(average_cost(Povm({CMatrix::Identity(2, 2)}), w), NumericalFailure);
}

TEST(AverageCost, SizeMismatch) {
  const RiskOperators w{{CMatrix::Zero(2, 2)}, Provenance::ideal};
  EXPECT_THROW(average_cost(Povm(nd_test::trine_povm()), w), InvalidInput);
}

TEST(LagrangeOperator, DiagonalProblemIsDiagonal) {
  const RiskOperators w = risk_operators(CostMatrix::minimum_error(2, 2), orthogonal_qubits(0.3));
  const LagrangeOperator g = lagrange_operator(Povm({diag2(1, 0), diag2(0, 1)}), w);
  EXPECT_EQ(g.hermiticity_residual, 0.0);
  EXPECT_EQ(g.gamma(0, 1), Complex(0.0));
  EXPECT_DOUBLE_EQ(g.gamma(0, 0).real(), -0.3);
  EXPECT_DOUBLE_EQ(g.gamma(1, 1).real(), -0.7);
}

TEST(LagrangeOperator, HermitianAtTrineOptimum) {
  const RiskOperators w =
      risk_operators(CostMatrix::minimum_error(3, 3), nd_test::trine_ensemble());
  EXPECT_LT(lagrange_operator(Povm(nd_test::trine_povm()), w).hermiticity_residual, 1e-10);
}

TEST(LagrangeOperator, SuboptimalResidualIsReported) {
  // Pi = (|0><0|, 0, |1><1|) against the trine: Gamma = W_0 P0 + W_2 P1 has
  // off-diagonal entries 0 and -(1/3)(-sqrt3/4) (upper right), so the
  // residual is sqrt3/12.
  const RiskOperators w =
      risk_operators(CostMatrix::minimum_error(3, 3), nd_test::trine_ensemble());
  const LagrangeOperator g =
      lagrange_operator(Povm({diag2(1, 0), CMatrix::Zero(2, 2), diag2(0, 1)}), w);
  EXPECT_NEAR(g.hermiticity_residual, nd_test::kSqrt3 / 12.0, 1e-15);
}

TEST(CostEquivalence, IdentityConfusionEqualsIdealCost) {
  const Ensemble e = nd_test::trine_ensemble();
  const CostMatrix c = CostMatrix::minimum_error(3, 3);
  const Povm p(nd_test::trine_povm());
  const CostEquivalence eq = noisy_cost_equivalence_check(c, ConfusionMatrix::identity(3), e, p);
  const double ideal = average_cost(p, risk_operators(c, e));
  EXPECT_EQ(eq.via_effective_povm, ideal);
  EXPECT_EQ(eq.via_modified_risk, ideal);
  EXPECT_EQ(eq.difference, 0.0);
}

TEST(CostEquivalence, RandomQubitProblems) {
  Random rng(29);
  for (int trial = 0; trial < 120; ++trial) {
    const Ensemble e = rng.ensemble(2, 3);
    RMatrix c(3, 3);
    for (Index k = 0; k < c.size(); ++k) c.data()[k] = rng.normal();
    const ConfusionMatrix q(rng.stochastic(3));
    const Povm p(rng.povm(3, 2));
    const CostEquivalence eq = noisy_cost_equivalence_check(CostMatrix(c), q, e, p);
    EXPECT_LT(eq.difference, 1e-10);
    const Problem prob(e, CostMatrix(c), q);
    EXPECT_NEAR(eq.via_modified_risk, nd_test::direct_noisy_cost(prob, {p[0], p[1], p[2]}), 1e-12);
  }
}

TEST(CostEquivalence, HigherDimensionsAndOutcomeCounts) {
  Random rng(30);
  for (int trial = 0; trial < 60; ++trial) {
    const Index d = 2 + trial % 3;
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 4);
    const Ensemble e = rng.ensemble(d, 3);
    RMatrix c(static_cast<Index>(n), 3);
    for (Index k = 0; k < c.size(); ++k) c.data()[k] = rng.normal();
    const Povm p(rng.povm(n, d));
    const auto eq = noisy_cost_equivalence_check(
        CostMatrix(c), ConfusionMatrix(rng.stochastic(static_cast<Index>(n))), e, p);
    EXPECT_LT(eq.difference, 1e-10);
  }
}

TEST(CostEquivalence, UniformConfusionClosedForm) {
  Random rng(31);
  const Ensemble e = rng.ensemble(2, 3);
  RMatrix c(3, 3);
  for (Index k = 0; k < c.size(); ++k) c.data()[k] = rng.normal();
  double expected = 0.0;
  for (Index k = 0; k < 3; ++k) expected += c.col(k).sum() / 3.0 * e.prior(static_cast<std::size_t>(k));
  const auto eq = noisy_cost_equivalence_check(CostMatrix(c), ConfusionMatrix::uniform(3), e,
                                               Povm(rng.povm(3, 2)));
  EXPECT_NEAR(eq.via_effective_povm, expected, 1e-12);
  EXPECT_NEAR(eq.via_modified_risk, expected, 1e-12);
}

TEST(Relabel, PermutesConfusionColumnsAndCostRows) {
  Random rng(32);
  RMatrix c(3, 3);
  for (Index k = 0; k < c.size(); ++k) c.data()[k] = rng.normal();
  const Problem p(rng.ensemble(2, 3), CostMatrix(c), ConfusionMatrix(rng.stochastic(3)));
  const std::vector<int> sigma{2, 0, 1};
  const std::vector<int> g{1, 1, 0};
  const Problem r = relabel(p, sigma, g);
  for (Index i = 0; i < 3; ++i) {
    for (Index j = 0; j < 3; ++j) {
      EXPECT_EQ(r.confusion(i, j), p.confusion(i, sigma[static_cast<std::size_t>(j)]));
    }
    EXPECT_EQ(r.cost.matrix().row(i), c.row(g[static_cast<std::size_t>(i)]));
  }
}

TEST(Relabel, RejectsInvalidMaps) {
  const Problem p = nd_test::trine_problem(0.0);
  const std::vector<int> repeated{0, 0, 1};
  const std::vector<int> ok{0, 1, 2};
  const std::vector<int> out_of_range{0, 1, 3};
  EXPECT_THROW(relabel(p, repeated, ok), InvalidInput);
  EXPECT_THROW(relabel(p, ok, out_of_range), InvalidInput);
  EXPECT_THROW(relabel(p, std::vector<int>{0, 1}, ok), InvalidInput);
}

}  // namespace
