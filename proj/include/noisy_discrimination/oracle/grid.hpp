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


#ifndef NOISY_DISCRIMINATION_ORACLE_GRID_HPP_
#define NOISY_DISCRIMINATION_ORACLE_GRID_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include "noisy_discrimination/errors.hpp"
#include "noisy_discrimination/model.hpp"
#include "noisy_discrimination/oracle/report.hpp"
#include "noisy_discrimination/parallel.hpp"

// Oracles in this header evaluate the noisy cost directly as
//   sum_{i,j,k} C(i,k) p_k q(i|j) Tr(Pi_j rho_k)
// from explicitly parametrised measurements. They do not use the risk
// operators or any solver.

namespace noisy_discrimination {

namespace detail {

// Bloch vector of a qubit density matrix.
inline std::array<double, 3> bloch_vector(const CMatrix& rho) {
  return {2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(),
          (rho(0, 0) - rho(1, 1)).real()};
}

// Grid 0, h, 2h, ... below `limit`, plus `limit` itself when requested.
// Halving h yields a superset of the points.
inline std::vector<double> grid_points(double h, double limit, bool closed) {
  std::vector<double> pts;
  for (std::int64_t k = 0;; ++k) {
    const double x = static_cast<double>(k) * h;
    if (x >= limit) break;
    pts.push_back(x);
  }
  if (closed) pts.push_back(limit);
  return pts;
}

}  // namespace detail

/// Exhaustive search over projective qubit measurements for a 2-outcome
/// problem.
///
/// Axes n = (sin t cos f, sin t sin f, cos t) run over t in [0, pi/2] and
/// f in [0, 2 pi) on a grid of step `resolution`. For each axis both label
/// assignments are tried: "direct" takes Pi_0 = (1 + n.sigma)/2 and
/// "swapped" Pi_0 = (1 - n.sigma)/2. Ties keep the first point in (t, f,
/// assignment) order. The two trivial projective measurements (Pi_j = 1 for
/// one label j) are compared last and reported with "trivial_label".
inline OracleReport projective_grid_oracle(const Problem& p, double resolution) {
  if (p.ensemble.dim() != 2 || p.outcomes() != 2) {
    throw InvalidInput(
        "the projective grid oracle needs a qubit problem with 2 outcomes; "
        "use the random oracle otherwise");
  }
  if (!(resolution > 0.0) || resolution > 1.0) {
    throw InvalidInput("grid resolution must lie in (0, 1]");
  }
  // With Tr(Pi_0 rho) = (1 + n.r)/2 the cost is c0 + n.v for the direct
  // assignment and c0 - n.v for the swapped one.
  double c0 = 0.0;
  std::array<double, 3> v{0.0, 0.0, 0.0};
  for (std::size_t k = 0; k < p.ensemble.size(); ++k) {
    const auto r = detail::bloch_vector(p.ensemble.state(k).matrix());
    const auto kk = static_cast<Index>(k);
    double mean = 0.0;
    double diff = 0.0;
    for (Index i = 0; i < 2; ++i) {
      const double c = p.cost(i, kk) * p.ensemble.prior(k);
      mean += c * (p.confusion(i, 0) + p.confusion(i, 1)) / 2.0;
      diff += c * (p.confusion(i, 0) - p.confusion(i, 1)) / 2.0;
    }
    c0 += mean;
    for (int a = 0; a < 3; ++a) v[static_cast<std::size_t>(a)] += diff * r[static_cast<std::size_t>(a)];
  }

  const auto thetas = detail::grid_points(resolution, std::numbers::pi / 2.0, true);
  const auto phis = detail::grid_points(resolution, 2.0 * std::numbers::pi, false);
  std::vector<double> cos_phi(phis.size());
  std::vector<double> sin_phi(phis.size());
  for (std::size_t l = 0; l < phis.size(); ++l) {
    cos_phi[l] = std::cos(phis[l]);
    sin_phi[l] = std::sin(phis[l]);
  }

  struct Best {
    double cost = std::numeric_limits<double>::infinity();
    std::size_t theta = 0;
    std::size_t phi = 0;
    int swapped = 0;
  };
  std::vector<Best> rows(thetas.size());
  parallel_for(thetas.size(), [&](std::size_t t) {
    const double st = std::sin(thetas[t]);
    const double ct = std::cos(thetas[t]);
    const double ax = st * v[0];
    const double ay = st * v[1];
    const double az = ct * v[2];
    Best best;
    for (std::size_t l = 0; l < phis.size(); ++l) {
      const double dot = ax * cos_phi[l] + ay * sin_phi[l] + az;
      const double direct = c0 + dot;
      const double swapped = c0 - dot;
      if (direct < best.cost) best = {direct, t, l, 0};
      if (swapped < best.cost) best = {swapped, t, l, 1};
    }
    rows[t] = best;
  });
  Best best;
  for (const auto& row : rows) {
    if (row.cost < best.cost) best = row;
  }

  // Trivial measurement Pi_j = 1: cost sum_{i,k} C(i, k) p_k q(i|j).
  std::array<double, 2> trivial{0.0, 0.0};
  for (std::size_t k = 0; k < p.ensemble.size(); ++k) {
    for (Index j = 0; j < 2; ++j) {
      for (Index i = 0; i < 2; ++i) {
        trivial[static_cast<std::size_t>(j)] += p.cost(i, static_cast<Index>(k)) *
                                                p.ensemble.prior(k) * p.confusion(i, j);
      }
    }
  }
  int trivial_label = -1;
  for (int j = 0; j < 2; ++j) {
    if (trivial[static_cast<std::size_t>(j)] < best.cost) {
      best.cost = trivial[static_cast<std::size_t>(j)];
      trivial_label = j;
    }
  }

  OracleReport report;
  report.best_cost = best.cost;
  if (trivial_label >= 0) {
    report.description = "trivial measurement, every outcome on label " +
                         std::to_string(trivial_label);
    report.parameters = {{"trivial_label", static_cast<double>(trivial_label)}};
  } else {
    report.description = best.swapped != 0 ? "projective qubit measurement, swapped labels"
                                           : "projective qubit measurement, direct labels";
    report.parameters = {{"theta", thetas[best.theta]},
                         {"phi", phis[best.phi]},
                         {"swapped", static_cast<double>(best.swapped)}};
  }
  report.grid_resolution = resolution;
  report.samples_or_points =
      static_cast<std::int64_t>(thetas.size() * phis.size() * 2 + 2);
  return report;
}

/// Dense scan of the mirror-symmetric family
///   Pi_0 = a|0><0|,  Pi_{1,2} = b|v+-><v+-|,  v+- = cos t|0> +- sin t|1>,
/// with a = 1 - cot^2 t and b = 1/(2 sin^2 t),
/// at t_k = pi/4 + k (pi/4) / theta_steps, k = 0..theta_steps. Reports the
/// best t, a, b and whether the winner sits on the t = pi/4 boundary.
inline OracleReport mirror_grid_oracle(const Problem& p, std::int64_t theta_steps) {
  if (p.ensemble.dim() != 2 || p.outcomes() != 3) {
    throw InvalidInput("the mirror grid oracle needs a qubit problem with 3 outcomes");
  }
  if (theta_steps < 1) throw InvalidInput("theta_steps must be at least 1");
  const std::size_t m = p.ensemble.size();

  // Weight of Tr(Pi_j rho_k) in the cost: sum_i C(i,k) p_k q(i|j).
  std::vector<std::array<double, 3>> weight(m);
  for (std::size_t k = 0; k < m; ++k) {
    for (Index j = 0; j < 3; ++j) {
      double s = 0.0;
      for (Index i = 0; i < 3; ++i) {
        s += p.cost(i, static_cast<Index>(k)) * p.ensemble.prior(k) * p.confusion(i, j);
      }
      weight[k][static_cast<std::size_t>(j)] = s;
    }
  }
  auto cost_at = [&](double t) {
    const double c = std::cos(t);
    const double s = std::sin(t);
    const double a = std::max(0.0, 1.0 - (c * c) / (s * s));
    const double b = 1.0 / (2.0 * s * s);
    double total = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const CMatrix& rho = p.ensemble.state(k).matrix();
      const double r00 = rho(0, 0).real();
      const double r11 = rho(1, 1).real();
      const double cross = 2.0 * c * s * rho(0, 1).real();
      const double plus = b * (c * c * r00 + s * s * r11 + cross);
      const double minus = b * (c * c * r00 + s * s * r11 - cross);
      total += weight[k][0] * a * r00 + weight[k][1] * plus + weight[k][2] * minus;
    }
    return total;
  };

  const auto steps = static_cast<std::size_t>(theta_steps);
  const double h = (std::numbers::pi / 4.0) / static_cast<double>(theta_steps);
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (steps + 1 + kChunk - 1) / kChunk;
  std::vector<std::pair<double, std::size_t>> best_in(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    std::pair<double, std::size_t> best{std::numeric_limits<double>::infinity(), 0};
    const std::size_t end = std::min(steps + 1, (c + 1) * kChunk);
    for (std::size_t k = c * kChunk; k < end; ++k) {
      const double value = cost_at(std::numbers::pi / 4.0 + static_cast<double>(k) * h);
      if (value < best.first) best = {value, k};
    }
    best_in[c] = best;
  });
  std::pair<double, std::size_t> best{std::numeric_limits<double>::infinity(), 0};
  for (const auto& b : best_in) {
    if (b.first < best.first) best = b;
  }

  const double theta = std::numbers::pi / 4.0 + static_cast<double>(best.second) * h;
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  OracleReport report;
  report.best_cost = best.first;
  report.description = "mirror-symmetric family grid";
  report.parameters = {{"theta", theta},
                       {"a", std::max(0.0, 1.0 - (c * c) / (s * s))},
                       {"b", 1.0 / (2.0 * s * s)},
                       {"boundary_hit", best.second == 0 ? 1.0 : 0.0}};
  report.grid_resolution = h;
  report.samples_or_points = theta_steps + 1;
  return report;
}

/// Bisection for the noise level where the mirror grid optimum first hits
/// the t = pi/4 boundary. `problem_at(q)` builds the problem for noise q;
/// the boundary must be missed at `lo` and hit at `hi`.
inline double critical_noise(const std::function<Problem(double)>& problem_at,
                             double lo, double hi, double tolerance,
                             std::int64_t theta_steps = 100000) {
  auto hit = [&](double q) {
    return mirror_grid_oracle(problem_at(q), theta_steps).parameter("boundary_hit") > 0.5;
  };
  if (hit(lo) || !hit(hi)) {
    throw InvalidInput("critical noise bracket does not straddle the boundary");
  }
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    (hit(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace noisy_discrimination

#endif  // NOISY_DISCRIMINATION_ORACLE_GRID_HPP_
