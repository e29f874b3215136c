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

#ifndef NOISY_DISCRIMINATION_SOLVERS_DISPATCH_HPP_
#define NOISY_DISCRIMINATION_SOLVERS_DISPATCH_HPP_

#include <algorithm>
#include <optional>
#include <vector>

#include "noisy_discrimination/errors.hpp"
#include "noisy_discrimination/noise_transform.hpp"
#include "noisy_discrimination/parallel.hpp"
#include "noisy_discrimination/solvers/guess.hpp"
#include "noisy_discrimination/solvers/iterative.hpp"
#include "noisy_discrimination/solvers/mirror.hpp"
#include "noisy_discrimination/solvers/result.hpp"
#include "noisy_discrimination/solvers/two_state.hpp"

namespace noisy_discrimination {

enum class SolverChoice { automatic, two_state, mirror_symmetric, iterative };

struct SolveOptions {
  double tol = 1e-9;
  int max_iter = 10000;
  bool assignment_search = false;
  SolverChoice solver = SolverChoice::automatic;
};

/// Solves the problem as labelled: ideal label j on detector channel j, and
/// channel i reported as outcome i (except where a solver returns guess-only).
///
/// `automatic` picks the closed form for 2 states and 2 outcomes, the
/// mirror-symmetric family when the problem has that symmetry, and the
/// iterative solver otherwise. A mirror-family result that fails its
/// certificate is replaced by the iterative optimum.
inline SolveResult solve_labelled(const Problem& p, const SolveOptions& opt = {}) {
  switch (opt.solver) {
    case SolverChoice::two_state:
      return two_state_noisy(p);
    case SolverChoice::mirror_symmetric:
      return mirror_symmetric_solve(p);
    case SolverChoice::iterative:
      return iterative_solve(modified_risk_operators(p), opt.tol, opt.max_iter);
    case SolverChoice::automatic:
      break;
  }
  if (p.ensemble.size() == 2 && p.outcomes() == 2) return two_state_noisy(p);
  if (is_mirror_symmetric(p)) {
    SolveResult r = mirror_symmetric_solve(p);
    if (r.certificate.passed) return r;
    SolveResult general =
        iterative_solve(modified_risk_operators(p), opt.tol, opt.max_iter);
    return general.cost <= r.cost ? general : r;
  }
  return iterative_solve(modified_risk_operators(p), opt.tol, opt.max_iter);
}

namespace detail {

// Advances `labels` through [0, base)^n in lexicographic order.
inline bool next_tuple(std::vector<int>& labels, int base) {
  for (auto k = labels.size(); k-- > 0;) {
    if (++labels[k] < base) return true;
    labels[k] = 0;
  }
  return false;
}

}  // namespace detail

/// Exhaustive search over outcome routing and inference.
///
/// Every permutation sigma (ideal label j routed to detector channel
/// sigma[j]) is combined with every inference map g (channel i reported as
/// outcome g[i]); each induced problem is solved with `choice` and the lowest
/// cost wins. Ties within 1e-12 go to the lexicographically first (sigma, g).
/// Branches a specialised solver cannot handle are skipped. Limited to at
/// most 6 outcomes and 6 states (n! * n^n branches).
inline SolveResult assignment_search(const Problem& p,
                                     SolverChoice choice = SolverChoice::automatic,
                                     const SolveOptions& opt = {}) {
  const int n = static_cast<int>(p.outcomes());
  const auto m = p.ensemble.size();
  if (n > 6 || m > 6) {
    throw InvalidInput(
        "assignment search is limited to 6 outcomes and 6 states; restrict "
        "the label maps manually and call the solvers directly");
  }
  std::vector<std::vector<int>> permutations;
  {
    std::vector<int> sigma = identity_labels(static_cast<std::size_t>(n));
    do {
      permutations.push_back(sigma);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  }
  SolveOptions inner = opt;
  inner.solver = choice;
  inner.assignment_search = false;

  // One task per permutation; each scans all inference maps in order.
  std::vector<std::optional<SolveResult>> best_per_sigma(permutations.size());
  parallel_for(permutations.size(), [&](std::size_t s) {
    const auto& sigma = permutations[s];
    std::vector<int> g(static_cast<std::size_t>(n), 0);
    std::optional<SolveResult> best;
    do {
      const Problem relabelled = relabel(p, sigma, g);
      std::optional<SolveResult> r;
      try {
        r = solve_labelled(relabelled, inner);
      } catch (const InvalidInput&) {
        if (choice == SolverChoice::automatic) throw;
      }
      if (r && (!best || r->cost < best->cost - 1e-12)) {
        std::vector<int> assignment(static_cast<std::size_t>(n));
        std::vector<int> inference(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
          assignment[static_cast<std::size_t>(j)] =
              sigma[static_cast<std::size_t>(r->assignment[static_cast<std::size_t>(j)])];
          inference[static_cast<std::size_t>(j)] =
              g[static_cast<std::size_t>(r->inference_map[static_cast<std::size_t>(j)])];
        }
        r->assignment = std::move(assignment);
        r->inference_map = std::move(inference);
        best = std::move(r);
      }
    } while (detail::next_tuple(g, n));
    best_per_sigma[s] = std::move(best);
  });

  std::optional<SolveResult> best;
  for (auto& candidate : best_per_sigma) {
    if (candidate && (!best || candidate->cost < best->cost - 1e-12)) {
      best = std::move(candidate);
    }
  }
  if (!best) {
    throw InvalidInput("no relabelling of the problem suits the chosen solver");
  }
  return std::move(*best);
}

/// Entry point used by the CLI: assignment search when requested, otherwise
/// the labelled problem with automatic solver selection.
inline SolveResult solve(const Problem& p, const SolveOptions& opt = {}) {
  if (opt.assignment_search) return assignment_search(p, opt.solver, opt);
  return solve_labelled(p, opt);
}

}  // namespace noisy_discrimination

#endif  // NOISY_DISCRIMINATION_SOLVERS_DISPATCH_HPP_
