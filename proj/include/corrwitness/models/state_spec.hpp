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

#include <optional>
#include <string_view>

#include "corrwitness/core/types.hpp"

namespace corrwitness::experiments {
class RandomStream;
}

namespace corrwitness::models {

/// Parameters (b1, b2, lambda, U) of the correlated total state
///   b1 (U|e>) (x) |F0> + b2 (U|g>) (x) |F_lambda>,
/// where the environment kets are model specific.
struct CorrelatedStateSpec {
  Complex b1{1.0, 0.0};
  Complex b2{0.0, 0.0};
  double lambda = 0.0;
  Matrix2c u = Matrix2c::Identity();

  /// Throws InvalidInput unless |b1|^2+|b2|^2 = 1, U is unitary (both within
  /// 1e-12) and lambda lies in [0, 1].
  void validate() const;

  CorrelatedStateSpec with_lambda(double new_lambda) const {
    CorrelatedStateSpec copy = *this;
    copy.lambda = new_lambda;
    return copy;
  }
};

enum class StateFamily { Original, Swapped, SigmaX, HaarRandom };

std::string_view family_name(StateFamily family);
std::optional<StateFamily> parse_family(std::string_view text);

/// Maps family amplitudes onto a spec: Original uses U = 1, Swapped the
/// exchange matrix, SigmaX the sigma_x eigenbasis (both with the amplitudes
/// exchanged so b1 multiplies the lambda-dependent environment), HaarRandom a
/// Haar unitary drawn from `rng` (required in that case only).
CorrelatedStateSpec family_spec(StateFamily family, Complex b1, Complex b2, double lambda,
                                experiments::RandomStream* rng = nullptr);

} // namespace corrwitness::models
