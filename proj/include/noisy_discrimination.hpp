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


#ifndef NOISY_DISCRIMINATION_HPP_
#define NOISY_DISCRIMINATION_HPP_

#include "noisy_discrimination/errors.hpp"
#include "noisy_discrimination/linalg.hpp"
#include "noisy_discrimination/model.hpp"
#include "noisy_discrimination/noise_transform.hpp"
#include "noisy_discrimination/oracle/grid.hpp"
#include "noisy_discrimination/oracle/random_povm.hpp"
#include "noisy_discrimination/oracle/report.hpp"
#include "noisy_discrimination/oracle/rng.hpp"
#include "noisy_discrimination/oracle/simulate.hpp"
#include "noisy_discrimination/parallel.hpp"
#include "noisy_discrimination/solvers/certify.hpp"
#include "noisy_discrimination/solvers/dispatch.hpp"
#include "noisy_discrimination/solvers/guess.hpp"
#include "noisy_discrimination/solvers/iterative.hpp"
#include "noisy_discrimination/solvers/mirror.hpp"
#include "noisy_discrimination/solvers/result.hpp"
#include "noisy_discrimination/solvers/two_state.hpp"
#include "noisy_discrimination/tolerance.hpp"
#include "noisy_discrimination/validate.hpp"

#endif  // NOISY_DISCRIMINATION_HPP_
