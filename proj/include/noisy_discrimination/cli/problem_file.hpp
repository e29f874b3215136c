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


#ifndef NOISY_DISCRIMINATION_CLI_PROBLEM_FILE_HPP_
#define NOISY_DISCRIMINATION_CLI_PROBLEM_FILE_HPP_

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "noisy_discrimination/errors.hpp"
#include "noisy_discrimination/model.hpp"
#include "noisy_discrimination/validate.hpp"

namespace noisy_discrimination::cli {

/// Malformed JSON, with the 1-based position of the offending byte.
class ParseError : public InvalidInput {
 public:
  ParseError(const std::string& file, std::size_t line, std::size_t column,
             const std::string& detail)
      : InvalidInput(file + ":" + std::to_string(line) + ":" +
                     std::to_string(column) + ": " + detail),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

/// Well-formed JSON whose content breaks a schema rule or a model invariant.
class ValidationError : public InvalidInput {
 public:
  ValidationError(std::string path, const std::string& detail,
                  double residual = 0.0)
      : InvalidInput(path + ": " + detail +
                     (residual != 0.0 ? " (residual " + format(residual) + ")" : "")),
        path(std::move(path)),
        residual(residual) {}
  std::string path;
  double residual;

 private:
  static std::string format(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
  }
};

/// c0 + c1 * $q.
struct AffineEntry {
  double c0 = 0.0;
  double c1 = 0.0;
  double at(double q) const { return c0 + c1 * q; }
};

struct ProblemOptions {
  double tol = 1e-9;
  int max_iter = 10000;
  std::uint64_t seed = 0;
  bool assignment_search = false;
};

/// Parsed problem file. The confusion matrix may depend affinely on a scalar
/// parameter $q; such templated files are only usable through a sweep.
struct ProblemFile {
  Index dimension = 0;
  std::vector<double> priors;
  std::vector<CMatrix> states;
  RMatrix cost;
  std::vector<std::vector<AffineEntry>> confusion;  // [observed][ideal]
  bool templated = false;
  ProblemOptions options;

  Ensemble ensemble() const {
    std::vector<DensityMatrix> rho;
    for (const auto& s : states) rho.emplace_back(s);
    return Ensemble(priors, std::move(rho));
  }

  RMatrix confusion_at(double q) const {
    const auto n = static_cast<Index>(confusion.size());
    RMatrix out(n, n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        out(i, j) = confusion[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].at(q);
      }
    }
    return out;
  }

  /// Problem for template parameter q; confusion violations are reported
  /// against $.confusion.
  Problem problem_at(double q) const {
    const RMatrix qm = confusion_at(q);
    const ValidationReport report = validate_confusion(qm);
    if (!report.ok()) {
      const auto& v = report.violations.front();
      throw ValidationError(confusion_path(v.location),
                            v.invariant + (templated ? " at $q = " + std::to_string(q) : ""),
                            v.residual);
    }
    return Problem(ensemble(), CostMatrix(cost), ConfusionMatrix(qm));
  }

  Problem problem() const {
    if (templated) {
      throw InvalidInput(
          "the confusion matrix is templated on $q; use the sweep command");
    }
    return problem_at(0.0);
  }

 private:
  // Maps validator locations "column j" / "entry (i, j)" to JSON paths.
  static std::string confusion_path(const std::string& location) {
    if (location.rfind("column ", 0) == 0) {
      return "$.confusion[*][" + location.substr(7) + "]";
    }
    if (location.rfind("entry (", 0) == 0) {
      const auto comma = location.find(',');
      const std::string i = location.substr(7, comma - 7);
      const std::string j = location.substr(comma + 2, location.size() - comma - 3);
      return "$.confusion[" + i + "][" + j + "]";
    }
    return "$.confusion";
  }
};

namespace detail {

using nlohmann::json;

inline std::string index_path(const std::string& base, std::size_t k) {
  return base + "[" + std::to_string(k) + "]";
}

inline double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) throw ValidationError(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ValidationError(path, "expected a finite number");
  return x;
}

inline Complex complex_at(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) {
    throw ValidationError(path, "expected a complex number encoded as [re, im]");
  }
  return {number_at(j[0], index_path(path, 0)), number_at(j[1], index_path(path, 1))};
}

inline const json& array_at(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ValidationError(path, "expected a non-empty array");
  return j;
}

inline CMatrix complex_matrix_at(const json& j, const std::string& path, Index dim) {
  array_at(j, path);
  if (static_cast<Index>(j.size()) != dim) {
    throw ValidationError(path, "expected " + std::to_string(dim) + " rows");
  }
  CMatrix out(dim, dim);
  for (Index r = 0; r < dim; ++r) {
    const std::string rp = index_path(path, static_cast<std::size_t>(r));
    const json& row = array_at(j[static_cast<std::size_t>(r)], rp);
    if (static_cast<Index>(row.size()) != dim) {
      throw ValidationError(rp, "expected " + std::to_string(dim) + " entries");
    }
    for (Index c = 0; c < dim; ++c) {
      out(r, c) = complex_at(row[static_cast<std::size_t>(c)],
                             index_path(rp, static_cast<std::size_t>(c)));
    }
  }
  return out;
}

inline RMatrix real_matrix_at(const json& j, const std::string& path) {
  array_at(j, path);
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  RMatrix out;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = index_path(path, r);
    const json& row = array_at(j[r], rp);
    if (r == 0) {
      cols = row.size();
      out.resize(static_cast<Index>(rows), static_cast<Index>(cols));
    } else if (row.size() != cols) {
      throw ValidationError(rp, "rows must have equal length");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      out(static_cast<Index>(r), static_cast<Index>(c)) = number_at(row[c], index_path(rp, c));
    }
  }
  return out;
}

inline std::optional<double> parse_number(std::string_view s) {
  if (s.empty()) return std::nullopt;
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  return x;
}

/// Parses c0 + c1 * $q written as a sum of signed terms, each a number,
/// "$q", "c*$q" or "$q*c" (e.g. "1-2*$q", "$q", "0.5 + 0.25*$q").
inline std::optional<AffineEntry> parse_affine(std::string_view text) {
  std::string s;
  for (const char ch : text) {
    if (ch != ' ') s.push_back(ch);
  }
  if (s.empty()) return std::nullopt;
  AffineEntry out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    double sign = 1.0;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1.0 : 1.0;
      ++pos;
    } else if (pos != 0) {
      return std::nullopt;
    }
    // A term ends at the next sign that is not part of an exponent.
    std::size_t end = pos;
    while (end < s.size()) {
      const char ch = s[end];
      if ((ch == '+' || ch == '-') && end > pos && s[end - 1] != 'e' && s[end - 1] != 'E') break;
      ++end;
    }
    const std::string_view term(s.data() + pos, end - pos);
    if (term.empty()) return std::nullopt;
    const auto var = term.find("$q");
    if (var == std::string_view::npos) {
      const auto c = parse_number(term);
      if (!c) return std::nullopt;
      out.c0 += sign * *c;
    } else {
      double coeff = 1.0;
      std::string_view rest;
      if (var == 0) {
        rest = term.substr(2);
        if (!rest.empty()) {
          if (rest.front() != '*') return std::nullopt;
          rest.remove_prefix(1);
        }
      } else {
        rest = term.substr(0, var);
        if (rest.back() != '*' || var + 2 != term.size()) return std::nullopt;
        rest.remove_suffix(1);
      }
      if (!rest.empty()) {
        const auto c = parse_number(rest);
        if (!c) return std::nullopt;
        coeff = *c;
      }
      out.c1 += sign * coeff;
    }
    pos = end;
  }
  return out;
}

inline void require_keys(const json& obj, const std::string& path,
                         std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const auto a : allowed) known = known || key == a;
    if (!known) throw ValidationError(path + "." + key, "unknown key");
  }
}

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text,
                                                       std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  const std::size_t end = std::min(text.size(), byte > 0 ? byte - 1 : 0);
  for (std::size_t k = 0; k < end; ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace detail

/// Parses JSON text, raising ParseError with line and column on failure.
inline nlohmann::json parse_json_text(const std::string& text,
                                      const std::string& name) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, column] = detail::line_column(text, e.byte);
    std::string what = e.what();
    // Drop the library's "[json.exception.parse_error.N] " prefix.
    if (const auto cut = what.find("] "); cut != std::string::npos) what = what.substr(cut + 2);
    throw ParseError(name, line, column, what);
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// Builds a ProblemFile from parsed JSON; every schema or invariant problem
/// raises ValidationError with a JSON path.
inline ProblemFile problem_from_json(const nlohmann::json& root) {
  using detail::index_path;
  if (!root.is_object()) throw ValidationError("$", "expected an object");
  detail::require_keys(root, "$",
                       {"dimension", "states", "cost", "confusion", "options",
                        "name", "description"});
  ProblemFile pf;
  if (!root.contains("dimension") || !root["dimension"].is_number_integer() ||
      root["dimension"].get<std::int64_t>() < 1) {
    throw ValidationError("$.dimension", "expected a positive integer");
  }
  pf.dimension = root["dimension"].get<Index>();

  if (!root.contains("states")) throw ValidationError("$.states", "missing");
  const auto& states = detail::array_at(root["states"], "$.states");
  for (std::size_t k = 0; k < states.size(); ++k) {
    const std::string sp = index_path("$.states", k);
    const auto& s = states[k];
    if (!s.is_object()) throw ValidationError(sp, "expected an object");
    detail::require_keys(s, sp, {"prior", "vector", "matrix", "label"});
    if (!s.contains("prior")) throw ValidationError(sp + ".prior", "missing");
    pf.priors.push_back(detail::number_at(s["prior"], sp + ".prior"));
    const bool has_vector = s.contains("vector");
    if (has_vector == s.contains("matrix")) {
      throw ValidationError(sp, "give exactly one of \"vector\" and \"matrix\"");
    }
    if (has_vector) {
      const std::string vp = sp + ".vector";
      const auto& v = detail::array_at(s["vector"], vp);
      if (static_cast<Index>(v.size()) != pf.dimension) {
        throw ValidationError(vp, "expected " + std::to_string(pf.dimension) + " amplitudes");
      }
      CVector amp(pf.dimension);
      for (std::size_t c = 0; c < v.size(); ++c) {
        amp(static_cast<Index>(c)) = detail::complex_at(v[c], index_path(vp, c));
      }
      const double norm2 = amp.squaredNorm();
      if (!(norm2 > 0.0)) throw ValidationError(vp, "zero state vector");
      pf.states.push_back(hermitize(amp * amp.adjoint() / norm2));
    } else {
      const std::string mp = sp + ".matrix";
      CMatrix rho = detail::complex_matrix_at(s["matrix"], mp, pf.dimension);
      const ValidationReport report = validate_density_matrix(rho);
      if (!report.ok()) {
        const auto& v = report.violations.front();
        throw ValidationError(mp, v.invariant, v.residual);
      }
      pf.states.push_back(std::move(rho));
    }
  }
  {
    const ValidationReport report = validate_ensemble(pf.priors, pf.states);
    if (!report.ok()) {
      const auto& v = report.violations.front();
      throw ValidationError("$." + v.location, v.invariant, v.residual);
    }
  }
  const auto m = static_cast<Index>(pf.states.size());

  Index n = m;
  if (root.contains("confusion")) {
    const auto& qj = detail::array_at(root["confusion"], "$.confusion");
    n = static_cast<Index>(qj.size());
    pf.confusion.assign(qj.size(), {});
    for (std::size_t i = 0; i < qj.size(); ++i) {
      const std::string rp = index_path("$.confusion", i);
      const auto& row = detail::array_at(qj[i], rp);
      if (row.size() != qj.size()) throw ValidationError(rp, "confusion matrix must be square");
      for (std::size_t j = 0; j < row.size(); ++j) {
        const std::string ep = index_path(rp, j);
        if (row[j].is_string()) {
          const auto entry = detail::parse_affine(row[j].get<std::string>());
          if (!entry) {
            throw ValidationError(ep, "expected a number or an affine expression in $q");
          }
          pf.templated = pf.templated || entry->c1 != 0.0;
          pf.confusion[i].push_back(*entry);
        } else {
          pf.confusion[i].push_back({detail::number_at(row[j], ep), 0.0});
        }
      }
    }
  } else {
    for (Index i = 0; i < n; ++i) {
      std::vector<AffineEntry> row(static_cast<std::size_t>(n));
      row[static_cast<std::size_t>(i)].c0 = 1.0;
      pf.confusion.push_back(std::move(row));
    }
  }

  if (root.contains("cost")) {
    pf.cost = detail::real_matrix_at(root["cost"], "$.cost");
    if (pf.cost.rows() != n || pf.cost.cols() != m) {
      throw ValidationError("$.cost", "expected " + std::to_string(n) + " rows (outcomes) and " +
                                          std::to_string(m) + " columns (states)");
    }
  } else {
    pf.cost = CostMatrix::minimum_error(n, m).matrix();
  }

  if (root.contains("options")) {
    const auto& o = root["options"];
    if (!o.is_object()) throw ValidationError("$.options", "expected an object");
    detail::require_keys(o, "$.options", {"tol", "max_iter", "seed", "assignment_search"});
    if (o.contains("tol")) {
      pf.options.tol = detail::number_at(o["tol"], "$.options.tol");
      if (!(pf.options.tol > 0.0)) throw ValidationError("$.options.tol", "must be positive");
    }
    if (o.contains("max_iter")) {
      if (!o["max_iter"].is_number_integer() || o["max_iter"].get<std::int64_t>() < 1) {
        throw ValidationError("$.options.max_iter", "expected a positive integer");
      }
      pf.options.max_iter = o["max_iter"].get<int>();
    }
    if (o.contains("seed")) {
      if (!o["seed"].is_number_unsigned()) {
        throw ValidationError("$.options.seed", "expected a nonnegative integer");
      }
      pf.options.seed = o["seed"].get<std::uint64_t>();
    }
    if (o.contains("assignment_search")) {
      if (!o["assignment_search"].is_boolean()) {
        throw ValidationError("$.options.assignment_search", "expected true or false");
      }
      pf.options.assignment_search = o["assignment_search"].get<bool>();
    }
  }
  if (!pf.templated) (void)pf.problem();  // surface confusion violations now
  return pf;
}

inline ProblemFile parse_problem(const std::string& path) {
  return problem_from_json(parse_json_text(read_text_file(path), path));
}

/// Measurement operators read from a POVM file, or from the "povm" member of
/// a solve result, together with any stored label maps.
struct PovmFile {
  std::vector<CMatrix> operators;
  std::optional<std::vector<int>> assignment;
  std::optional<std::vector<int>> inference_map;
};

inline PovmFile povm_from_json(const nlohmann::json& root) {
  if (!root.is_object()) throw ValidationError("$", "expected an object");
  std::string base = "$";
  const nlohmann::json* body = &root;
  if (root.contains("povm")) {
    body = &root["povm"];
    base = "$.povm";
    if (!body->is_object()) throw ValidationError(base, "expected an object");
  }
  if (!body->contains("dimension") || !(*body)["dimension"].is_number_integer() ||
      (*body)["dimension"].get<std::int64_t>() < 1) {
    throw ValidationError(base + ".dimension", "expected a positive integer");
  }
  const auto dim = (*body)["dimension"].get<Index>();
  if (!body->contains("operators")) throw ValidationError(base + ".operators", "missing");
  const auto& ops = detail::array_at((*body)["operators"], base + ".operators");
  PovmFile pf;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    pf.operators.push_back(
        detail::complex_matrix_at(ops[i], detail::index_path(base + ".operators", i), dim));
  }
  const ValidationReport report = validate_povm(pf.operators);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw ValidationError(base + (v.location.empty() ? ".operators" : "." + v.location),
                          v.invariant, v.residual);
  }
  auto labels = [&](const char* key) -> std::optional<std::vector<int>> {
    if (!root.contains(key)) return std::nullopt;
    const std::string path = std::string("$.") + key;
    const auto& a = detail::array_at(root[key], path);
    std::vector<int> out;
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (!a[k].is_number_integer()) {
        throw ValidationError(detail::index_path(path, k), "expected an integer label");
      }
      out.push_back(a[k].get<int>());
    }
    return out;
  };
  pf.assignment = labels("assignment");
  pf.inference_map = labels("inference_map");
  return pf;
}

inline PovmFile parse_povm(const std::string& path) {
  return povm_from_json(parse_json_text(read_text_file(path), path));
}

}  // namespace noisy_discrimination::cli

#endif  // NOISY_DISCRIMINATION_CLI_PROBLEM_FILE_HPP_
