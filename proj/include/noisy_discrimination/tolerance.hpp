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

#ifndef NOISY_DISCRIMINATION_TOLERANCE_HPP_
#define NOISY_DISCRIMINATION_TOLERANCE_HPP_

namespace noisy_discrimination {

/// Numerical thresholds used by validation and certification. One profile is
/// threaded explicitly through every call that needs it; the defaults are the
/// values all tests and the CLI run with.
struct ToleranceProfile {
  /// max |A - A^dagger| allowed for an operator to count as Hermitian.
  double hermiticity = 1e-12;
  /// Smallest eigenvalue must be >= -psd_floor.
  double psd_floor = 1e-10;
  /// |Tr(rho) - 1| for density matrices.
  double trace = 1e-10;
  /// max-entry deviation of sum_i Pi_i from the identity.
  double completeness = 1e-10;
  /// Deviation of priors and confusion-matrix columns from summing to one.
  double probability_sum = 1e-12;
  /// Residual bound for the optimality certificate.
  double certification = 1e-8;
};

}  // namespace noisy_discrimination

#endif  // NOISY_DISCRIMINATION_TOLERANCE_HPP_
