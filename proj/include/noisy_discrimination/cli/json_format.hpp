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


#ifndef NOISY_DISCRIMINATION_CLI_JSON_FORMAT_HPP_
#define NOISY_DISCRIMINATION_CLI_JSON_FORMAT_HPP_

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

namespace noisy_discrimination::cli {

using Json = nlohmann::ordered_json;

/// "%.17g": enough digits for an exact double round trip.
inline std::string format_double17(double x) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", x);
  return buf.data();
}

/// Shortest decimal string that parses back to the same double.
inline std::string format_shortest(double x) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

/// Serialises `j` with 17 significant digits for every floating-point value
/// and `null` for non-finite ones. Two-space indentation when `indent`.
inline void write_json(std::ostream& os, const Json& j, bool indent = true,
                       int depth = 0) {
  const auto pad = [&](int d) {
    if (indent) os << '\n' << std::string(static_cast<std::size_t>(2 * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) os << ',';
        first = false;
        pad(depth + 1);
        os << Json(key).dump() << (indent ? ": " : ":");
        write_json(os, value, indent, depth + 1);
      }
      pad(depth);
      os << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Arrays of scalars, or of arrays of scalars, stay on one line.
      bool scalars = true;
      for (const auto& v : j) {
        if (v.is_object()) scalars = false;
        if (v.is_array()) {
          for (const auto& x : v) scalars = scalars && !x.is_structured();
        }
      }
      os << '[';
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k > 0) os << (indent && scalars ? ", " : ",");
        if (!scalars) pad(depth + 1);
        write_json(os, j[k], indent && !scalars, depth + 1);
      }
      if (!scalars) pad(depth);
      os << ']';
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      os << (std::isfinite(x) ? format_double17(x) : "null");
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace noisy_discrimination::cli

#endif  // NOISY_DISCRIMINATION_CLI_JSON_FORMAT_HPP_
