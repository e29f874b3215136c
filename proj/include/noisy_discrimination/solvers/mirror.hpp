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

#ifndef NOISY_DISCRIMINATION_SOLVERS_MIRROR_HPP_
#define NOISY_DISCRIMINATION_SOLVERS_MIRROR_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "noisy_discrimination/errors.hpp"
#include "noisy_discrimination/linalg.hpp"
#include "noisy_discrimination/noise_transform.hpp"
#include "noisy_discrimination/solvers/guess.hpp"
#include "noisy_discrimination/solvers/result.hpp"

namespace noisy_discrimination {

inline constexpr double kMirrorThetaMin = std::numbers::pi / 4.0;
inline constexpr double kMirrorThetaMax = std::numbers::pi / 2.0;

/// Family member at angle theta in [pi/4, pi/2]; see MirrorParams.
inline MirrorParams mirror_params(double theta) {
  theta = std::clamp(theta, kMirrorThetaMin, kMirrorThetaMax);
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double cot = c / s;
  return {theta, std::max(0.0, 1.0 - cot * cot), 1.0 / (2.0 * s * s)};
}

inline std::vector<CMatrix> mirror_family_operators(const MirrorParams& m) {
  const double c = std::cos(m.theta);
  const double s = std::sin(m.theta);
  CMatrix p0 = CMatrix::Zero(2, 2);
  p0(0, 0) = m.a;
  CMatrix plus(2, 2), minus(2, 2);
  plus << c * c, c * s, c * s, s * s;
  minus << c * c, -c * s, -c * s, s * s;
  return {p0, m.b * plus, m.b * minus};
}

inline Povm mirror_family_povm(const MirrorParams& m) {
  // Completeness holds analytically; rounding in a and b leaves ~1e-16.
  auto ops = mirror_family_operators(m);
  CMatrix sum = ops[0] + ops[1] + ops[2];
  const CMatrix fix = inverse_sqrt_positive(sum);
  for (auto& op : ops) op = hermitize(fix * op * fix);
  return Povm(std::move(ops));
}

namespace detail {

inline CMatrix reflect(const CMatrix& a) {
  CMatrix out = a;
  out(0, 1) = -out(0, 1);
  out(1, 0) = -out(1, 0);
  return out;
}

inline double mirror_asymmetry(const Problem& p, const RiskOperators& w) {
  const auto& e = p.ensemble;
  double worst = 0.0;
  worst = std::max(worst, max_abs(reflect(e.state(0).matrix()) -
                                  e.state(0).matrix()));
  worst = std::max(worst, max_abs(reflect(e.state(1).matrix()) -
                                  e.state(2).matrix()));
  worst = std::max(worst, std::abs(e.prior(1) - e.prior(2)));
  double scale = 0.0;
  for (const auto& op : w.operators) scale = std::max(scale, max_abs(op));
  const double risk = std::max(max_abs(reflect(w[0]) - w[0]),
                               max_abs(reflect(w[1]) - w[2]));
  return std::max(worst, risk / std::max(scale, 1e-300));
}

}  // namespace detail

/// True when the problem is a 3-state, 3-outcome qubit task symmetric under
/// the reflection |1> -> -|1> with states 1 and 2 exchanged, including the
/// modified risk operators (so costs and detector noise respect the symmetry).
inline bool is_mirror_symmetric(const Problem& p, double tol = 1e-10) {
  if (p.ensemble.dim() != 2 || p.ensemble.size() != 3 || p.outcomes() != 3) {
    return false;
  }
  return detail::mirror_asymmetry(p, modified_risk_operators(p)) <= tol;
}

/// Optimises the noisy cost over the mirror-symmetric family.
///
/// With t = cot(theta) the family cost is exactly quadratic in t on [0, 1],
/// so three evaluations fix it and the minimiser follows in closed form. A
/// 200-point scan in theta confirms the quadratic model; if it ever
/// disagrees, golden-section search on the best scan bracket takes over. The
/// two-outcome boundary (theta = pi/4, a = 0) and guess-only are compared
/// explicitly and the cheapest strategy wins.
inline SolveResult mirror_symmetric_solve(const Problem& p) {
  if (!is_mirror_symmetric(p)) {
    throw InvalidInput(
        "problem is not mirror-symmetric about |0>; use iterative_solve");
  }
  const RiskOperators w = modified_risk_operators(p);
  auto cost_at = [&](double theta) {
    return average_cost(mirror_family_operators(mirror_params(theta)), w);
  };
  auto theta_of = [](double t) { return std::atan2(1.0, t); };

  const double f0 = cost_at(theta_of(0.0));
  const double fh = cost_at(theta_of(0.5));
  const double f1 = cost_at(theta_of(1.0));
  const double c2 = 2.0 * (f1 - 2.0 * fh + f0);
  const double c1 = f1 - f0 - c2;
  auto model = [&](double t) { return f0 + c1 * t + c2 * t * t; };

  constexpr int kScan = 200;
  std::array<double, kScan> scan{};
  double model_error = 0.0;
  int best_k = 0;
  for (int k = 0; k < kScan; ++k) {
    const double theta = kMirrorThetaMin + (kMirrorThetaMax - kMirrorThetaMin) *
                                               k / (kScan - 1);
    scan[k] = cost_at(theta);
    model_error = std::max(
        model_error, std::abs(scan[k] - model(std::cos(theta) / std::sin(theta))));
    if (scan[k] < scan[best_k]) best_k = k;
  }

  double theta_star;
  if (model_error <= 1e-10 * (1.0 + std::abs(f0) + std::abs(f1))) {
    double t_star = f0 <= f1 ? 0.0 : 1.0;
    if (c2 > 0.0) t_star = std::clamp(-c1 / (2.0 * c2), 0.0, 1.0);
    if (model(1.0) < model(t_star)) t_star = 1.0;
    if (model(0.0) < model(t_star)) t_star = 0.0;
    theta_star = theta_of(t_star);
  } else {
    const double step = (kMirrorThetaMax - kMirrorThetaMin) / (kScan - 1);
    double lo = std::max(kMirrorThetaMin, kMirrorThetaMin + (best_k - 1) * step);
    double hi = std::min(kMirrorThetaMax, kMirrorThetaMin + (best_k + 1) * step);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double g1 = cost_at(x1), g2 = cost_at(x2);
    while (hi - lo > 1e-10) {
      if (g1 <= g2) {
        hi = x2;
        x2 = x1;
        g2 = g1;
        x1 = hi - inv_phi * (hi - lo);
        g1 = cost_at(x1);
      } else {
        lo = x1;
        x1 = x2;
        g1 = g2;
        x2 = lo + inv_phi * (hi - lo);
        g2 = cost_at(x2);
      }
    }
    theta_star = 0.5 * (lo + hi);
  }

  auto family_result = [&](double theta) {
    const MirrorParams params = mirror_params(theta);
    SolveResult r = make_result(mirror_family_povm(params), w,
                                StrategyKind::mirror_symmetric);
    r.mirror = params;
    return r;
  };
  SolveResult best = family_result(theta_star);
  SolveResult boundary = family_result(kMirrorThetaMin);
  if (boundary.cost < best.cost - 1e-15) best = std::move(boundary);
  SolveResult guess = guess_only(p);
  if (guess.cost < best.cost - 1e-15) best = std::move(guess);
  return best;
}

}  // namespace noisy_discrimination

#endif  // NOISY_DISCRIMINATION_SOLVERS_MIRROR_HPP_
