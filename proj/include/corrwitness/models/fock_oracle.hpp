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

#include <cstddef>
#include <memory>
#include <mutex>
#include <vector>

#include "corrwitness/core/linalg.hpp"
#include "corrwitness/models/dephasing.hpp"

namespace corrwitness::dephasing {

struct FockCutoff {
  std::size_t n_max = 40;
};

/// Truncated number-basis amplitudes of |z>, not renormalized.
CVector coherent_state_fock(Complex z, std::size_t n_max);

/// Full Hamiltonian on C^2 (x) span{|0>,...,|n_max>}, system index major.
HermitianOperator hamiltonian_fock(const DephasingParams& params, FockCutoff cutoff);

/// |Psi^lambda_U(0)> in the truncated basis. Throws TruncationError if |z>
/// loses more than 1e-12 of its norm to the cutoff.
StateVector total_state_fock(const DephasingParams& params, const CorrelatedStateSpec& spec,
                             FockCutoff cutoff);

/// Brute-force reference for the closed-form reduced dynamics: evolve the
/// truncated total state and trace out the mode. Every query is repeated at
/// twice the cutoff and the cutoff keeps doubling until the two reduced
/// states agree to 1e-10 in trace distance.
class FockOracle {
public:
  explicit FockOracle(const DephasingParams& params, FockCutoff start = {},
                      std::size_t max_n = 640);

  DensityMatrix reduced_state(const CorrelatedStateSpec& spec, double t) const;

  /// Evolved total state at the starting cutoff (no convergence check).
  StateVector total_state(const CorrelatedStateSpec& spec, double t) const;

  FockCutoff start_cutoff() const { return start_; }

private:
  struct Level {
    FockCutoff cutoff;
    Propagator propagator;
  };
  const Level& level(std::size_t index) const;
  DensityMatrix reduced_at(std::size_t index, const CorrelatedStateSpec& spec, double t) const;

  DephasingParams params_;
  FockCutoff start_;
  std::size_t max_n_;
  mutable std::mutex mutex_;
  mutable std::vector<std::unique_ptr<Level>> levels_;
};

DensityMatrix oracle_reduced_state(const DephasingParams& params, const CorrelatedStateSpec& spec,
                                   double t, FockCutoff cutoff = {});

} // namespace corrwitness::dephasing
