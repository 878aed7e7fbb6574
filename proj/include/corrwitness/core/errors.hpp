// Copyright 2026 The corrwitness Authors.
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

namespace corrwitness {

/// Raised when an argument violates a documented precondition
/// (such as a dimension mismatch or an out-of-range parameter).
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A matrix that should be a state has an eigenvalue below -1e-10.
class NotPositiveSemidefinite : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// The truncated number basis cannot represent the requested state or
/// the evolution did not converge at the largest allowed cutoff.
class TruncationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed (a bug, not a user error).
class ConsistencyError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace corrwitness
