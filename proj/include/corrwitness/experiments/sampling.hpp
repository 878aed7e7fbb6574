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

#include <cstdint>
#include <random>
#include <utility>

#include "corrwitness/core/types.hpp"

namespace corrwitness::experiments {

/// One step of the SplitMix64 generator; a bijective 64-bit mixer.
std::uint64_t splitmix64(std::uint64_t x);

/// Per-sample seed as a pure function of (master, lambda index, sample index),
/// so results do not depend on scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t lambda_index,
                          std::uint64_t sample_index);

class RandomStream {
public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  Complex complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
/// of diag(R) divided out.
CMatrix haar_unitary(RandomStream& rng, std::size_t dim);
Matrix2c haar_unitary(RandomStream& rng);

/// (b1, b2) uniform on the unit sphere of C^2.
std::pair<Complex, Complex> random_amplitudes(RandomStream& rng);

/// Ginibre-induced random mixed state of the given dimension; test helper for
/// the property suites.
CMatrix random_density_entries(RandomStream& rng, std::size_t dim);

} // namespace corrwitness::experiments
