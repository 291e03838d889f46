// Copyright 2026 The qlattice Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qlattice {

/// Input or configuration that violates a documented precondition or schema.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A closed-form expression evaluated at (or across) one of its poles.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative routine (root find, fit, calibration loop, step halving)
/// failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Calibration or campaign steps requested out of dependency order.
class OrderingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qlattice
