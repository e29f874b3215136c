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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "noisy_discrimination/cli/commands.hpp"
#include "test_support.hpp"

namespace {

namespace fs = std::filesystem;
using namespace noisy_discrimination;
using namespace noisy_discrimination::cli;

const std::string kProblems = ND_PROBLEMS_DIR;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "noisy-discrimination");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("nd_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  std::string write(const std::string& name, const std::string& text) const {
    const auto file = path_ / name;
    std::ofstream(file) << text;
    return file.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

Json parse(const std::string& text) { return Json::parse(text); }

// ------------------------------------------------------------- parsing

TEST(ProblemFile, MalformedJsonReportsLineAndColumn) {
  const std::string text = "{\n  \"dimension\": 2,\n  \"states\": [ ,\n}";
  try {
    parse_json_text(text, "bad.json");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 3u);
    EXPECT_EQ(e.column, 15u);
    EXPECT_EQ(std::string(e.what()).rfind("bad.json:3:15:", 0), 0u) << e.what();
  }
}

TEST(ProblemFile, PriorSumViolationNamesPath) {
  const auto j = parse(R"({"dimension": 2, "states": [
      {"prior": 0.49, "vector": [[1, 0], [0, 0]]},
      {"prior": 0.49, "vector": [[0, 0], [1, 0]]}]})");
  try {
    problem_from_json(j);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.path, "$.states[*].prior");
    EXPECT_NEAR(e.residual, 0.02, 1e-12);
  }
}

TEST(ProblemFile, SchemaErrorsNameTheirPath) {
  auto path_of = [](const std::string& text) {
    try {
      problem_from_json(parse(text));
    } catch (const ValidationError& e) {
      return e.path;
    }
    return std::string("<none>");
  };
  EXPECT_EQ(path_of(R"({"dimension": 2, "states": [{"prior": 1, "vector": [1, 0]}]})"),
            "$.states[0].vector[0]");
  EXPECT_EQ(path_of(R"({"dimension": 0, "states": []})"), "$.dimension");
  EXPECT_EQ(path_of(R"({"dimension": 2, "states": [{"prior": 1, "vector": [[1, 0], [0, 0]]}],
                       "colour": 1})"),
            "$.colour");
  EXPECT_EQ(path_of(R"({"dimension": 2, "states": [
                         {"prior": 0.5, "vector": [[1, 0], [0, 0]]},
                         {"prior": 0.5, "vector": [[0, 0], [1, 0]]}],
                       "confusion": [[0.9, 0.2], [0.2, 0.8]]})"),
            "$.confusion[*][0]");
  EXPECT_EQ(path_of(R"({"dimension": 2, "states": [
                         {"prior": 0.5, "vector": [[1, 0], [0, 0]]},
                         {"prior": 0.5, "vector": [[0, 0], [1, 0]]}],
                       "cost": [[0, 1]]})"),
            "$.cost");
  EXPECT_EQ(path_of(R"({"dimension": 2, "states": [
                         {"prior": 1, "matrix": [[[1, 0], [0, 0]], [[0, 0], [-0.5, 0]]]}]})"),
            "$.states[0].matrix");
}

TEST(ProblemFile, DefaultsToMinimumErrorAndPerfectDetection) {
  const auto pf = parse_problem(kProblems + "/trine.json");
  EXPECT_FALSE(pf.templated);
  const Problem p = pf.problem();
  EXPECT_EQ(p.cost.matrix(), CostMatrix::minimum_error(3, 3).matrix());
  EXPECT_EQ(p.confusion.matrix(), RMatrix::Identity(3, 3));
  EXPECT_DOUBLE_EQ(pf.options.tol, 1e-9);
  EXPECT_EQ(pf.options.max_iter, 10000);
}

TEST(ProblemFile, AffineTemplateEntries) {
  const auto pf = problem_from_json(parse(R"({"dimension": 2, "states": [
      {"prior": 0.5, "vector": [[1, 0], [0, 0]]},
      {"prior": 0.5, "vector": [[0, 0], [1, 0]]}],
      "confusion": [["1 - $q", "0.5*$q"], ["$q", "1-0.5 * $q"]]})"));
  EXPECT_TRUE(pf.templated);
  EXPECT_THROW(pf.problem(), InvalidInput);
  const RMatrix q = pf.confusion_at(0.2);
  EXPECT_NEAR(q(0, 0), 0.8, 1e-15);
  EXPECT_NEAR(q(0, 1), 0.1, 1e-15);
  EXPECT_NEAR(q(1, 0), 0.2, 1e-15);
  EXPECT_NEAR(q(1, 1), 0.9, 1e-15);
  EXPECT_THROW(problem_from_json(parse(R"({"dimension": 1, "states": [
      {"prior": 1, "vector": [[1, 0]]}], "confusion": [["$q^2"]]})")),
               ValidationError);
}

TEST(ProblemFile, PovmFromSolveOutputKeepsMaps) {
  TempDir dir;
  const auto solved = run_cli({"solve", "--input", kProblems + "/two_state_guess.json"});
  ASSERT_EQ(solved.code, 0) << solved.err;
  const auto povm = povm_from_json(parse(solved.out));
  ASSERT_TRUE(povm.inference_map.has_value());
  EXPECT_EQ(*povm.inference_map, (std::vector<int>{0, 0}));
  EXPECT_EQ(povm.operators.size(), 2u);
}

// ------------------------------------------------------------- solve

TEST(Solve, TrineOutputFields) {
  const auto r = run_cli({"solve", "--input", kProblems + "/trine.json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = parse(r.out);
  EXPECT_NEAR(j["cost"].get<double>(), -2.0 / 3.0, 1e-12);
  EXPECT_NEAR(j["error_prob"].get<double>(), 1.0 / 3.0, 1e-12);
  EXPECT_EQ(j["strategy_kind"], "mirror_symmetric");
  EXPECT_TRUE(j["certificate"]["passed"].get<bool>());
  EXPECT_EQ(j["povm"]["operators"].size(), 3u);
  EXPECT_EQ(j["assignment"], Json::parse("[0,1,2]"));
  EXPECT_TRUE(j.contains("gamma"));
  EXPECT_TRUE(j.contains("iterations"));
}

TEST(Solve, NoisyTrineMatchesClosedForm) {
  const auto r = run_cli({"solve", "--input", kProblems + "/trine_q01.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(parse(r.out)["cost"].get<double>(), nd_test::trine_cost_closed_form(0.1), 1e-10);
}

TEST(Solve, AssignmentSearchFlag) {
  const auto r = run_cli({"solve", "--input", kProblems + "/orthogonal_inference.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = parse(r.out);
  EXPECT_EQ(j["inference_map"][0], 1);
}

TEST(Solve, IterationCapGivesExitTwo) {
  const auto r = run_cli({"solve", "--input", kProblems + "/mixed_4d.json", "--max-iter", "1"});
  EXPECT_EQ(r.code, kExitNotCertified);
  EXPECT_NE(r.err.find("did not certify"), std::string::npos) << r.err;
}

TEST(Solve, OutputIsStableAcrossRuns) {
  const auto a = run_cli({"solve", "--input", kProblems + "/mixed_4d.json"});
  const auto b = run_cli({"solve", "--input", kProblems + "/mixed_4d.json"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(parse(a.out)["strategy_kind"], "iterative");
}

// ------------------------------------------------------------- certify

TEST(Certify, RoundTripThroughSolveOutput) {
  TempDir dir;
  const auto solved = run_cli({"solve", "--input", kProblems + "/mixed_4d.json"});
  ASSERT_EQ(solved.code, 0) << solved.err;
  const auto povm_path = dir.write("solution.json", solved.out);
  const auto r = run_cli({"certify", "--input", kProblems + "/mixed_4d.json", "--povm", povm_path});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = parse(r.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_NEAR(j["cost"].get<double>(), parse(solved.out)["cost"].get<double>(), 1e-12);
}

TEST(Certify, SuboptimalPovmFailsWithNegativeGap) {
  const auto r = run_cli({"certify", "--input", kProblems + "/trine.json", "--povm",
                          kProblems + "/computational_povm.json"});
  EXPECT_EQ(r.code, kExitNotCertified);
  const Json j = parse(r.out);
  EXPECT_FALSE(j["passed"].get<bool>());
  EXPECT_NEAR(j["residuals"]["min_eig_gap"].get<double>(), -0.125, 1e-12);
}

TEST(Certify, DimensionMismatchIsInputError) {
  const auto r = run_cli({"certify", "--input", kProblems + "/mixed_4d.json", "--povm",
                          kProblems + "/trine_povm.json"});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("$.dimension"), std::string::npos) << r.err;
}

// --------------------------------------------------------------- sweep

TEST(Sweep, WritesHeaderAndOneRowPerStep) {
  TempDir dir;
  const auto csv = dir.path("sweep.csv");
  const auto r = run_cli({"sweep", "--input", kProblems + "/trine_sweep.json", "--from", "0",
                          "--to", "0.5", "--steps", "6", "--output", csv});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(csv);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 7u);
  EXPECT_EQ(lines[0], kSweepHeader);
  EXPECT_EQ(lines[1].rfind("0,", 0), 0u);
  EXPECT_EQ(lines[6].rfind("0.5,", 0), 0u);
  EXPECT_NE(lines[1].find(",mirror_symmetric"), std::string::npos);
}

TEST(Sweep, RejectsUntemplatedFilesAndOtherParameters) {
  EXPECT_EQ(run_cli({"sweep", "--input", kProblems + "/trine.json", "--from", "0", "--to", "1",
                     "--steps", "2"})
                .code,
            kExitInputError);
  EXPECT_EQ(run_cli({"sweep", "--input", kProblems + "/trine_sweep.json", "--param", "p",
                     "--from", "0", "--to", "0.1", "--steps", "2"})
                .code,
            kExitInputError);
  EXPECT_EQ(run_cli({"sweep", "--input", kProblems + "/trine_sweep.json", "--from", "0", "--to",
                     "0.9", "--steps", "3"})
                .code,
            kExitInputError);
}

// -------------------------------------------------------------- oracle

TEST(Oracle, RandomModeIsByteIdenticalForSameSeed) {
  const std::vector<std::string> args{"oracle", "--input", kProblems + "/mixed_4d.json",
                                      "--mode", "random", "--samples", "2000", "--seed", "3"};
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(parse(a.out)["seed"], 3);
}

TEST(Oracle, GridModeOnTwoStateAndMirrorProblems) {
  const auto helstrom = run_cli({"oracle", "--input", kProblems + "/helstrom_noisy.json",
                                 "--mode", "grid", "--resolution", "0.01"});
  ASSERT_EQ(helstrom.code, 0) << helstrom.err;
  const auto solved = run_cli({"solve", "--input", kProblems + "/helstrom_noisy.json"});
  EXPECT_GE(parse(helstrom.out)["best_cost"].get<double>(),
            parse(solved.out)["cost"].get<double>() - 1e-12);

  const auto mirror = run_cli({"oracle", "--input", kProblems + "/trine_q01.json", "--mode",
                               "grid", "--resolution", "1e-4"});
  ASSERT_EQ(mirror.code, 0) << mirror.err;
  EXPECT_NEAR(parse(mirror.out)["best_cost"].get<double>(), nd_test::trine_cost_closed_form(0.1),
              1e-8);

  EXPECT_EQ(run_cli({"oracle", "--input", kProblems + "/mixed_4d.json", "--mode", "grid"}).code,
            kExitInputError);
}

TEST(Oracle, SimulateModeReportsAnalyticCost) {
  const auto r = run_cli({"oracle", "--input", kProblems + "/trine_q01.json", "--mode",
                          "simulate", "--samples", "100000", "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = parse(r.out);
  EXPECT_NEAR(j["mean_cost"].get<double>(), j["analytic_cost"].get<double>(),
              4.0 * j["standard_error"].get<double>());
}

// ------------------------------------------------------------ exit codes

TEST(ExitCodes, InputErrors) {
  EXPECT_EQ(run_cli({"solve", "--input", "/nonexistent/problem.json"}).code, kExitInputError);
  EXPECT_EQ(run_cli({"solve"}).code, kExitInputError);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kExitInputError);
  EXPECT_EQ(run_cli({"oracle", "--input", kProblems + "/trine.json", "--mode", "magic"}).code,
            kExitInputError);
  TempDir dir;
  const auto bad = dir.write("bad.json", "{\"dimension\": 2,");
  const auto r = run_cli({"solve", "--input", bad});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("bad.json:1:"), std::string::npos) << r.err;
}

TEST(ExitCodes, HelpIsSuccess) { EXPECT_EQ(run_cli({"--help"}).code, kExitOk); }

// ------------------------------------------------------------ formatting

TEST(Format, DoublesRoundTripAndNonFiniteIsNull) {
  std::ostringstream os;
  Json j = Json::object();
  j["x"] = 0.1;
  j["y"] = std::numeric_limits<double>::infinity();
  j["v"] = Json::array({1.0, -2.5});
  write_json(os, j);
  const Json back = parse(os.str());
  EXPECT_EQ(back["x"].get<double>(), 0.1);
  EXPECT_TRUE(back["y"].is_null());
  EXPECT_EQ(format_shortest(0.1), "0.1");
  EXPECT_EQ(format_shortest(0.5), "0.5");
}

}  // namespace
