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

#include "corrwitness/experiments/sampling.hpp"

#include <cmath>

#include <Eigen/QR>

namespace corrwitness::experiments {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t lambda_index,
                          std::uint64_t sample_index) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ lambda_index);
  return splitmix64(h ^ (sample_index * 0xD1B54A32D192ED03ULL));
}

CMatrix haar_unitary(RandomStream& rng, std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  CMatrix z(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) z(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

Matrix2c haar_unitary(RandomStream& rng) { return haar_unitary(rng, 2); }

std::pair<Complex, Complex> random_amplitudes(RandomStream& rng) {
  for (;;) {
    const Complex b1 = rng.complex_normal();
    const Complex b2 = rng.complex_normal();
    const double norm = std::sqrt(std::norm(b1) + std::norm(b2));
    if (norm > 1e-300) return {b1 / norm, b2 / norm};
  }
}

CMatrix random_density_entries(RandomStream& rng, std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  CMatrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = rng.complex_normal();
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

} // namespace corrwitness::experiments
