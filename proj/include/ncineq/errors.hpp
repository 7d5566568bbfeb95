// Copyright 2026 The ncineq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace ncineq {

/// Operands of mismatched qubit count or slot count.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A dense object was requested above the configured size cap.
struct CapacityError : std::length_error {
  using std::length_error::length_error;
};

/// Malformed input: bad literal, out-of-range index, broken invariant.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Observables supplied to a correlator are not mutually compatible.
struct CompatibilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ncineq
