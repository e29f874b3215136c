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


#ifndef NOISY_DISCRIMINATION_ORACLE_RANDOM_POVM_HPP_
#define NOISY_DISCRIMINATION_ORACLE_RANDOM_POVM_HPP_

#include <cstdint>
#include <limits>
#include <vector>

#include "noisy_discrimination/errors.hpp"
#include "noisy_discrimination/linalg.hpp"
#include "noisy_discrimination/noise_transform.hpp"
#include "noisy_discrimination/oracle/report.hpp"
#include "noisy_discrimination/oracle/rng.hpp"
#include "noisy_discrimination/parallel.hpp"

namespace noisy_discrimination {

/// Samples per RNG sub-stream; fixed so reports do not depend on threads.
inline constexpr std::int64_t kOracleChunk = 4096;

/// Random n-outcome POVM: A_i A_i^dagger with standard complex Gaussian
/// entries, made complete by S^{-1/2} (.) S^{-1/2} with S = sum_i A_i A_i^dagger.
inline std::vector<CMatrix> random_povm(std::size_t n, Index d, Rng& rng) {
  std::vector<CMatrix> ops(n);
  if (n == 1) {
    ops[0] = CMatrix::Identity(d, d);
    return ops;
  }
  const double scale = 1.0 / std::sqrt(2.0);
  CMatrix sum = CMatrix::Zero(d, d);
  for (auto& op : ops) {
    CMatrix a(d, d);
    for (Index k = 0; k < a.size(); ++k) {
      const double re = rng.normal();
      const double im = rng.normal();
      a.data()[k] = Complex(re, im) * scale;
    }
    op = a * a.adjoint();
    sum += op;
  }
  const CMatrix fix = inverse_sqrt_positive(hermitize(sum));
  for (auto& op : ops) op = hermitize(fix * op * fix);
  return ops;
}

/// Best cost sum_i Re Tr(W_i Pi_i) over `samples` random POVMs. Sample s
/// is drawn from sub-stream s / kOracleChunk of `seed`, so the report is
/// bit-identical for a given seed regardless of worker count.
inline OracleReport random_povm_oracle(const RiskOperators& w, std::int64_t samples,
                                       std::uint64_t seed) {
  if (samples <= 0) throw InvalidInput("samples must be positive");
  if (w.size() == 0) throw InvalidInput("need at least one risk operator");
  const Index d = w.dim();
  const auto chunks = static_cast<std::size_t>((samples + kOracleChunk - 1) / kOracleChunk);
  const Rng root(seed);

  std::vector<std::pair<double, std::int64_t>> best_in(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    Rng rng = root.split(c);
    const auto begin = static_cast<std::int64_t>(c) * kOracleChunk;
    const std::int64_t end = std::min(samples, begin + kOracleChunk);
    std::pair<double, std::int64_t> best{std::numeric_limits<double>::infinity(), begin};
    for (std::int64_t s = begin; s < end; ++s) {
      const auto ops = random_povm(w.size(), d, rng);
      double cost = 0.0;
      for (std::size_t i = 0; i < ops.size(); ++i) {
        cost += (w[i].cwiseProduct(ops[i].transpose())).sum().real();
      }
      if (cost < best.first) best = {cost, s};
    }
    best_in[c] = best;
  });
  std::pair<double, std::int64_t> best{std::numeric_limits<double>::infinity(), 0};
  for (const auto& b : best_in) {
    if (b.first < best.first) best = b;
  }

  OracleReport report;
  report.best_cost = best.first;
  report.description = "random POVM sampling";
  report.parameters = {{"best_sample", static_cast<double>(best.second)}};
  report.samples_or_points = samples;
  report.seed = seed;
  return report;
}

}  // namespace noisy_discrimination

#endif  // NOISY_DISCRIMINATION_ORACLE_RANDOM_POVM_HPP_
