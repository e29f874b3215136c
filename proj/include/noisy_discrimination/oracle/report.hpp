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


#ifndef NOISY_DISCRIMINATION_ORACLE_REPORT_HPP_
#define NOISY_DISCRIMINATION_ORACLE_REPORT_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace noisy_discrimination {

/// Best point found by a brute-force or sampling oracle.
struct OracleReport {
  double best_cost = 0.0;
  std::string description;
  std::vector<std::pair<std::string, double>> parameters;
  double grid_resolution = 0.0;  // zero for sampling oracles
  std::int64_t samples_or_points = 0;
  std::optional<std::uint64_t> seed;

  double parameter(const std::string& name) const {
    for (const auto& [key, value] : parameters) {
      if (key == name) return value;
    }
    throw std::out_of_range("oracle report has no parameter " + name);
  }
};

struct SimulationEstimate {
  double mean_cost = 0.0;
  double standard_error = 0.0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
};

}  // namespace noisy_discrimination

#endif  // NOISY_DISCRIMINATION_ORACLE_REPORT_HPP_
