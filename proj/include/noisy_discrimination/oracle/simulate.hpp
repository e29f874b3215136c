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


#ifndef NOISY_DISCRIMINATION_ORACLE_SIMULATE_HPP_
#define NOISY_DISCRIMINATION_ORACLE_SIMULATE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "noisy_discrimination/errors.hpp"
#include "noisy_discrimination/model.hpp"
#include "noisy_discrimination/oracle/report.hpp"
#include "noisy_discrimination/oracle/rng.hpp"
#include "noisy_discrimination/parallel.hpp"

namespace noisy_discrimination {

/// Trials per RNG sub-stream.
inline constexpr std::int64_t kSimulationChunk = 65536;

/// Monte Carlo estimate of the noisy average cost of `povm`.
///
/// Each trial draws a state k from the priors, an ideal outcome j with
/// probability Tr(Pi_j rho_k), an observed outcome i with probability
/// q(i|j), and scores C(i, k). Chunks of kSimulationChunk trials use
/// separate sub-streams and are merged in order with the pairwise moment
/// update, so the estimate depends only on the seed.
inline SimulationEstimate simulate_noisy_measurement(
    const Ensemble& e, const Povm& povm, const ConfusionMatrix& q,
    const CostMatrix& c, std::int64_t trials, std::uint64_t seed) {
  if (trials <= 0) throw InvalidInput("trials must be positive");
  const std::size_t n = povm.size();
  const std::size_t m = e.size();
  if (povm.dim() != e.dim() || q.size() != static_cast<Index>(n) ||
      c.outcomes() != static_cast<Index>(n) || c.states() != static_cast<Index>(m)) {
    throw InvalidInput("simulation inputs have inconsistent sizes");
  }
  std::vector<std::vector<double>> born(m);
  for (std::size_t k = 0; k < m; ++k) {
    born[k] = povm.probabilities(e.state(k));
    for (auto& x : born[k]) x = std::max(0.0, x);
  }
  std::vector<std::vector<double>> noise(n, std::vector<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      noise[j][i] = q(static_cast<Index>(i), static_cast<Index>(j));
    }
  }
  const std::vector<double> priors(e.priors().begin(), e.priors().end());

  struct Moments {
    std::int64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;
  };
  const auto chunks = static_cast<std::size_t>((trials + kSimulationChunk - 1) / kSimulationChunk);
  const Rng root(seed);
  std::vector<Moments> parts(chunks);
  parallel_for(chunks, [&](std::size_t ch) {
    Rng rng = root.split(ch);
    const auto begin = static_cast<std::int64_t>(ch) * kSimulationChunk;
    const std::int64_t end = std::min(trials, begin + kSimulationChunk);
    Moments mo;
    for (std::int64_t t = begin; t < end; ++t) {
      const std::size_t k = rng.categorical(priors);
      const std::size_t j = rng.categorical(born[k]);
      const std::size_t i = rng.categorical(noise[j]);
      const double x = c(static_cast<Index>(i), static_cast<Index>(k));
      ++mo.count;
      const double delta = x - mo.mean;
      mo.mean += delta / static_cast<double>(mo.count);
      mo.m2 += delta * (x - mo.mean);
    }
    parts[ch] = mo;
  });

  Moments total;
  for (const auto& part : parts) {
    if (part.count == 0) continue;
    if (total.count == 0) {
      total = part;
      continue;
    }
    const auto na = static_cast<double>(total.count);
    const auto nb = static_cast<double>(part.count);
    const double delta = part.mean - total.mean;
    total.count += part.count;
    total.mean += delta * nb / (na + nb);
    total.m2 += part.m2 + delta * delta * na * nb / (na + nb);
  }
  SimulationEstimate est;
  est.mean_cost = total.mean;
  est.trials = total.count;
  est.seed = seed;
  if (total.count > 1) {
    const double variance = total.m2 / static_cast<double>(total.count - 1);
    est.standard_error = std::sqrt(variance / static_cast<double>(total.count));
  }
  return est;
}

}  // namespace noisy_discrimination

#endif  // NOISY_DISCRIMINATION_ORACLE_SIMULATE_HPP_
