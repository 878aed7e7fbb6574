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
#include <cstddef>

#include "corrwitness/core/linalg.hpp"
#include "corrwitness/models/state_spec.hpp"

namespace corrwitness::spinstar {

using SpinStarStateSpec = models::CorrelatedStateSpec;

/// Central spin coupled to N bath spins by H = A0 sum_k (s+ s-^(k) + s- s+^(k)).
struct SpinStarParams {
  double a0 = 1.0;
  int n_bath = 20;

  void validate() const;
  /// Five periods of the dominant Rabi frequency A0 sqrt(N): 10 pi / (A0 sqrt N).
  double default_t_max() const;
};

enum class LadderDirection { Raise, Lower };

/// Matrix element of J+ or J- between |j, m> and |j, m +- 1>; zero at the
/// ends of the ladder. Throws InvalidInput unless j, m are half-integers with
/// j - m integral and |m| <= j.
double ladder_coefficient(double j, double m, LadderDirection direction);

/// Invariant subspace reached from the correlated initial states, ordered
/// {|e,chi+>, |g,chi+>, |e,chi->, |g,chi->, |e,chi-->} with
/// chi+ = |N/2,N/2>, chi- = |N/2,N/2-1>, chi-- = |N/2,N/2-2>.
inline constexpr std::size_t kSubspaceDim = 5;
enum SubspaceKet : std::size_t {
  kEChiPlus = 0,
  kGChiPlus = 1,
  kEChiMinus = 2,
  kGChiMinus = 3,
  kEChiMinusMinus = 4,
};

HermitianOperator hamiltonian_subspace(const SpinStarParams& params);

/// b1 (U|e>) chi+ + b2 (U|g>) F_lambda with F_lambda normalized.
CVector initial_subspace_state(const SpinStarStateSpec& spec);

/// Central-spin marginal of a subspace vector.
DensityMatrix reduce_subspace_state(const CVector& psi);

DensityMatrix reduced_state_spinstar(const SpinStarParams& params, const SpinStarStateSpec& spec,
                                     double t);

// Full 2^(N+1)-dimensional reference. Central spin is the most significant
// index; a set bath bit means spin down.

inline constexpr int kMaxBruteForceBath = 12;

HermitianOperator hamiltonian_full(const SpinStarParams& params);

/// Symmetric Dicke state |N/2, N/2 - excitations> by repeated normalized
/// application of J- to the all-up state.
CVector dicke_state(int n_bath, int excitations);

/// The five subspace kets embedded in the product basis.
std::array<CVector, kSubspaceDim> subspace_basis_full(int n_bath);

StateVector initial_full_state(const SpinStarParams& params, const SpinStarStateSpec& spec);

class BruteForceSpinStar {
public:
  explicit BruteForceSpinStar(const SpinStarParams& params);

  StateVector evolve(const SpinStarStateSpec& spec, double t) const;
  DensityMatrix reduced_state(const SpinStarStateSpec& spec, double t) const;
  const SpinStarParams& params() const { return params_; }

private:
  SpinStarParams params_;
  Propagator propagator_;
};

DensityMatrix brute_force_reduced(const SpinStarParams& params, const SpinStarStateSpec& spec,
                                  double t);

} // namespace corrwitness::spinstar
