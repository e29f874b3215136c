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


#ifndef NOISY_DISCRIMINATION_CLI_COMMANDS_HPP_
#define NOISY_DISCRIMINATION_CLI_COMMANDS_HPP_

#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "noisy_discrimination/cli/json_format.hpp"
#include "noisy_discrimination/cli/problem_file.hpp"
#include "noisy_discrimination/errors.hpp"
#include "noisy_discrimination/noise_transform.hpp"
#include "noisy_discrimination/oracle/grid.hpp"
#include "noisy_discrimination/oracle/random_povm.hpp"
#include "noisy_discrimination/oracle/simulate.hpp"
#include "noisy_discrimination/parallel.hpp"
#include "noisy_discrimination/solvers/dispatch.hpp"

namespace noisy_discrimination::cli {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitNotCertified = 2,  // convergence failure or failed certificate
};

inline Json matrix_json(const CMatrix& a) {
  Json rows = Json::array();
  for (Index r = 0; r < a.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < a.cols(); ++c) row.push_back(Json::array({a(r, c).real(), a(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json certificate_json(const CertificateReport& c) {
  Json j;
  j["residuals"] = {{"gamma_hermiticity_residual", c.gamma_hermiticity_residual},
                    {"min_eig_gap", c.min_eig_gap},
                    {"stationarity_residual", c.stationarity_residual}};
  j["tolerance"] = c.tolerance;
  j["passed"] = c.passed;
  return j;
}

/// 1 - P(reported outcome equals the prepared state) for `r` applied to `p`
/// with its stored assignment and inference map.
inline double error_probability(const Problem& p, const SolveResult& r) {
  const Problem routed = relabel(p, r.assignment, r.inference_map);
  const auto n = static_cast<std::size_t>(p.outcomes());
  double correct = 0.0;
  for (std::size_t k = 0; k < p.ensemble.size(); ++k) {
    const auto born = r.povm.probabilities(p.ensemble.state(k));
    for (std::size_t i = 0; i < n; ++i) {
      if (static_cast<std::size_t>(r.inference_map[i]) != k) continue;
      for (std::size_t j = 0; j < n; ++j) {
        correct += p.ensemble.prior(k) *
                   routed.confusion(static_cast<Index>(i), static_cast<Index>(j)) * born[j];
      }
    }
  }
  return 1.0 - correct;
}

inline Json result_json(const Problem& p, const SolveResult& r) {
  Json j;
  j["cost"] = r.cost;
  j["error_prob"] = error_probability(p, r);
  j["strategy_kind"] = std::string(to_string(r.strategy_kind));
  Json ops = Json::array();
  for (const auto& op : r.povm.operators()) ops.push_back(matrix_json(op));
  j["povm"] = {{"dimension", r.povm.dim()}, {"operators", std::move(ops)}};
  j["assignment"] = r.assignment;
  j["inference_map"] = r.inference_map;
  if (r.mirror) {
    j["mirror"] = {{"theta", r.mirror->theta}, {"a", r.mirror->a}, {"b", r.mirror->b}};
  }
  j["iterations"] = r.iterations;
  j["gamma"] = {{"matrix", matrix_json(r.gamma.gamma)},
                {"hermiticity_residual", r.gamma.hermiticity_residual}};
  j["certificate"] = certificate_json(r.certificate);
  return j;
}

inline Json oracle_json(const OracleReport& r) {
  Json params = Json::object();
  for (const auto& [key, value] : r.parameters) params[key] = value;
  Json j;
  j["best_cost"] = r.best_cost;
  j["description"] = r.description;
  j["parameters"] = std::move(params);
  j["grid_resolution"] = r.grid_resolution;
  j["samples_or_points"] = r.samples_or_points;
  j["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
  return j;
}

inline Json simulation_json(const SimulationEstimate& s) {
  return {{"mean_cost", s.mean_cost},
          {"standard_error", s.standard_error},
          {"trials", s.trials},
          {"seed", s.seed}};
}

struct SolveArgs {
  std::string input;
  std::optional<double> tol;
  std::optional<int> max_iter;
  bool assignment_search = false;
};

inline SolveOptions solve_options(const ProblemOptions& file, std::optional<double> tol,
                                  std::optional<int> max_iter, bool assignment_search) {
  SolveOptions opt;
  opt.tol = tol.value_or(file.tol);
  opt.max_iter = max_iter.value_or(file.max_iter);
  opt.assignment_search = assignment_search || file.assignment_search;
  if (!(opt.tol > 0.0)) throw InvalidInput("--tol must be positive");
  if (opt.max_iter < 1) throw InvalidInput("--max-iter must be positive");
  return opt;
}

inline int cmd_solve(const SolveArgs& args, std::ostream& out) {
  const ProblemFile pf = parse_problem(args.input);
  const Problem p = pf.problem();
  const SolveResult r =
      solve(p, solve_options(pf.options, args.tol, args.max_iter, args.assignment_search));
  write_json(out, result_json(p, r));
  out << '\n';
  return r.certificate.passed ? kExitOk : kExitNotCertified;
}

struct SweepArgs {
  std::string input;
  std::string param = "q";
  double from = 0.0;
  double to = 0.0;
  int steps = 1;
  std::string output;  // empty: stdout
};

inline constexpr const char* kSweepHeader = "q,cost,error_prob,a,theta,strategy_kind";

/// One CSV row per step, q_k = from + k (to - from) / (steps - 1), written in
/// index order. Rows may be solved concurrently.
inline int cmd_sweep(const SweepArgs& args, std::ostream& out) {
  if (args.param != "q") {
    throw InvalidInput("only the parameter q is supported (got \"" + args.param + "\")");
  }
  if (args.steps < 1) throw InvalidInput("--steps must be at least 1");
  if (!std::isfinite(args.from) || !std::isfinite(args.to)) {
    throw InvalidInput("--from and --to must be finite");
  }
  const ProblemFile pf = parse_problem(args.input);
  if (!pf.templated) {
    throw InvalidInput("the confusion matrix of " + args.input +
                       " does not depend on $q; nothing to sweep");
  }
  const SolveOptions opt = solve_options(pf.options, std::nullopt, std::nullopt, false);
  const auto steps = static_cast<std::size_t>(args.steps);
  std::vector<std::string> rows(steps);
  parallel_for(steps, [&](std::size_t k) {
    const double q = steps == 1 ? args.from
                                : args.from + static_cast<double>(k) * (args.to - args.from) /
                                                  static_cast<double>(steps - 1);
    const Problem p = pf.problem_at(q);
    const SolveResult r = solve(p, opt);
    std::string row = format_shortest(q) + "," + format_shortest(r.cost) + "," +
                      format_shortest(error_probability(p, r)) + ",";
    if (r.mirror) {
      row += format_shortest(r.mirror->a) + "," + format_shortest(r.mirror->theta);
    } else {
      row += ",";
    }
    row += ",";
    row += to_string(r.strategy_kind);
    rows[k] = std::move(row);
  });

  std::ofstream file;
  std::ostream* sink = &out;
  if (!args.output.empty()) {
    file.open(args.output, std::ios::binary);
    if (!file) throw InvalidInput("cannot write " + args.output);
    sink = &file;
  }
  *sink << kSweepHeader << '\n';
  for (const auto& row : rows) *sink << row << '\n';
  sink->flush();
  if (!*sink) throw Error("failed writing sweep output");
  return kExitOk;
}

struct CertifyArgs {
  std::string input;
  std::string povm;
};

/// Certifies a POVM file against a problem. Stored assignment and inference
/// maps (as emitted by solve) are applied before the check.
inline int cmd_certify(const CertifyArgs& args, std::ostream& out) {
  const ProblemFile pf = parse_problem(args.input);
  const Problem p = pf.problem();
  const PovmFile povm = parse_povm(args.povm);
  if (povm.operators.front().rows() != p.ensemble.dim()) {
    throw ValidationError("$.dimension", "POVM dimension " +
                                             std::to_string(povm.operators.front().rows()) +
                                             " does not match the problem dimension " +
                                             std::to_string(p.ensemble.dim()));
  }
  if (static_cast<Index>(povm.operators.size()) != p.outcomes()) {
    throw ValidationError("$.operators", "POVM has " + std::to_string(povm.operators.size()) +
                                             " operators but the problem has " +
                                             std::to_string(p.outcomes()) + " outcomes");
  }
  const auto n = static_cast<std::size_t>(p.outcomes());
  const auto assignment = povm.assignment.value_or(identity_labels(n));
  const auto inference = povm.inference_map.value_or(identity_labels(n));
  const Problem routed = relabel(p, assignment, inference);
  const RiskOperators w = modified_risk_operators(routed);
  const CertificateReport report = certify(povm.operators, w);
  Json j = certificate_json(report);
  j["cost"] = average_cost(povm.operators, w);
  write_json(out, j);
  out << '\n';
  return report.passed ? kExitOk : kExitNotCertified;
}

struct OracleArgs {
  std::string input;
  std::string mode;
  double resolution = 1e-3;
  std::int64_t samples = 100000;
  std::optional<std::uint64_t> seed;
};

inline int cmd_oracle(const OracleArgs& args, std::ostream& out) {
  const ProblemFile pf = parse_problem(args.input);
  const Problem p = pf.problem();
  const std::uint64_t seed = args.seed.value_or(pf.options.seed);
  Json j;
  j["mode"] = args.mode;
  if (args.mode == "grid") {
    if (!(args.resolution > 0.0) || args.resolution > 1.0) {
      throw InvalidInput("--resolution must lie in (0, 1]");
    }
    if (p.ensemble.dim() == 2 && p.outcomes() == 2) {
      j.update(oracle_json(projective_grid_oracle(p, args.resolution)));
    } else if (is_mirror_symmetric(p)) {
      const auto steps = static_cast<std::int64_t>(
          std::ceil((std::numbers::pi / 4.0) / args.resolution));
      j.update(oracle_json(mirror_grid_oracle(p, steps)));
    } else {
      throw InvalidInput(
          "grid mode covers qubit problems with 2 outcomes and mirror-symmetric "
          "trine-like problems; use --mode random for this problem");
    }
  } else if (args.mode == "random") {
    if (args.samples < 1) throw InvalidInput("--samples must be positive");
    j.update(oracle_json(random_povm_oracle(modified_risk_operators(p), args.samples, seed)));
  } else if (args.mode == "simulate") {
    if (args.samples < 1) throw InvalidInput("--samples must be positive");
    const SolveResult r =
        solve(p, solve_options(pf.options, std::nullopt, std::nullopt, false));
    const Problem routed = relabel(p, r.assignment, r.inference_map);
    j.update(simulation_json(simulate_noisy_measurement(
        routed.ensemble, r.povm, routed.confusion, routed.cost, args.samples, seed)));
    j["analytic_cost"] = r.cost;
    j["strategy_kind"] = std::string(to_string(r.strategy_kind));
  } else {
    throw InvalidInput("--mode must be grid, random or simulate");
  }
  write_json(out, j);
  out << '\n';
  return kExitOk;
}

/// Full command-line entry point. Diagnostics go to `err`; payloads to `out`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal quantum state discrimination with noisy detectors"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a problem file; prints JSON");
  solve_cmd->add_option("--input", solve_args.input, "Problem JSON")->required();
  solve_cmd->add_option("--tol", solve_args.tol, "Solver tolerance (default from file, 1e-9)");
  solve_cmd->add_option("--max-iter", solve_args.max_iter, "Iteration cap (default 10000)");
  solve_cmd->add_flag("--assignment-search", solve_args.assignment_search,
                      "Search label routings and inference maps");

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep the $q template; writes CSV");
  sweep_cmd->add_option("--input", sweep_args.input, "Templated problem JSON")->required();
  sweep_cmd->add_option("--param", sweep_args.param, "Template parameter (q)");
  sweep_cmd->add_option("--from", sweep_args.from, "First value")->required();
  sweep_cmd->add_option("--to", sweep_args.to, "Last value")->required();
  sweep_cmd->add_option("--steps", sweep_args.steps, "Number of rows")->required();
  sweep_cmd->add_option("--output", sweep_args.output, "CSV path (default stdout)");

  CertifyArgs certify_args;
  auto* certify_cmd = app.add_subcommand("certify", "Check optimality conditions; prints JSON");
  certify_cmd->add_option("--input", certify_args.input, "Problem JSON")->required();
  certify_cmd->add_option("--povm", certify_args.povm, "POVM JSON or solve output")->required();

  OracleArgs oracle_args;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force and Monte Carlo checks");
  oracle_cmd->add_option("--input", oracle_args.input, "Problem JSON")->required();
  oracle_cmd->add_option("--mode", oracle_args.mode, "grid | random | simulate")
      ->required()
      ->check(CLI::IsMember({"grid", "random", "simulate"}));
  oracle_cmd->add_option("--resolution", oracle_args.resolution, "Grid step (default 1e-3)");
  oracle_cmd->add_option("--samples", oracle_args.samples,
                         "Random POVMs or simulated trials (default 100000)");
  oracle_cmd->add_option("--seed", oracle_args.seed, "RNG seed (default from file, 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_args, out);
    if (*sweep_cmd) return cmd_sweep(sweep_args, out);
    if (*certify_cmd) return cmd_certify(certify_args, out);
    return cmd_oracle(oracle_args, out);
  } catch (const ConvergenceFailure& e) {
    err << "error: " << e.what() << '\n';
    return kExitNotCertified;
  } catch (const NumericalFailure& e) {
    err << "error: " << e.what() << '\n';
    return kExitNotCertified;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace noisy_discrimination::cli

#endif  // NOISY_DISCRIMINATION_CLI_COMMANDS_HPP_
