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

#ifndef NOISY_DISCRIMINATION_ERRORS_HPP_
#define NOISY_DISCRIMINATION_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace noisy_discrimination {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arguments violate a documented precondition (sizes, validity, shape).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A computation produced a result that cannot be trusted, e.g. a trace that
/// should be real carries a large imaginary part.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace noisy_discrimination

#endif  // NOISY_DISCRIMINATION_ERRORS_HPP_
