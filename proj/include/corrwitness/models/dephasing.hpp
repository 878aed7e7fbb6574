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

#include <array>

#include "corrwitness/core/types.hpp"
#include "corrwitness/models/state_spec.hpp"

namespace corrwitness::dephasing {

using models::CorrelatedStateSpec;

/// Two-level system dephased by one bosonic mode:
///   H = eps sz + omega a^dag a + sz g0 (a + a^dag),
/// with the mode prepared in superpositions of |0> and the coherent state |z>.
struct DephasingParams {
  double epsilon = 1.0;
  double omega = 1.0;
  double g0 = 0.1;
  Complex z{1.0, 0.0};

  void validate() const;
  double period() const;
};

/// <x|y> = exp(-|x|^2/2 - |y|^2/2 + conj(x) y).
Complex coherent_overlap(Complex x, Complex y);

/// alpha(t) = g0/omega (1 - e^{i omega t}).
Complex alpha(const DephasingParams& params, double t);

/// A(t) = exp((alpha z* - alpha* z)/2); unit modulus.
Complex phase_A(const DephasingParams& params, double t);

/// Norm of (1 - lambda)|0> + lambda |z>.
double normalization_C(double lambda, Complex z);

/// B(t) = sum_k w_k s_k(t): the weights depend only on the state, the series
/// only on time. Splitting the coherence factor this way lets the sweeps
/// tabulate s_k once per time grid.
inline constexpr std::size_t kCoherenceTerms = 4;
std::array<Complex, kCoherenceTerms> coherence_weights(const DephasingParams& params,
                                                       const CorrelatedStateSpec& spec);
std::array<Complex, kCoherenceTerms> coherence_series(const DephasingParams& params, double t);

/// <e| rho_S(t) |g>, including the free phase e^{-2 i eps t}.
Complex coherence_factor(const DephasingParams& params, const CorrelatedStateSpec& spec,
                         double t);

/// <e| rho_S |e>; constant in time.
double population_e(const DephasingParams& params, const CorrelatedStateSpec& spec);

DensityMatrix reduced_state(const DephasingParams& params, const CorrelatedStateSpec& spec,
                            double t);

} // namespace corrwitness::dephasing
