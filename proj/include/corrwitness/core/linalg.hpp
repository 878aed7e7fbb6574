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

#include <numbers>

#include "corrwitness/core/types.hpp"

namespace corrwitness {

/// Spectrum of a Hermitian matrix; eigenvalues sorted descending, columns of
/// `vectors` are the matching orthonormal eigenvectors.
struct EigenSystem {
  RVector values;
  CMatrix vectors;
};

/// Largest |A - A^dagger| entry.
double hermiticity_defect(const CMatrix& a);

EigenSystem hermitian_eigs(const CMatrix& a);
EigenSystem hermitian_eigs(const HermitianOperator& a);
EigenSystem hermitian_eigs(const DensityMatrix& rho);

/// Principal square root of a state. Eigenvalues in [-1e-10, 0) are clamped
/// to zero; anything more negative throws NotPositiveSemidefinite.
CMatrix psd_sqrt(const DensityMatrix& rho);
CMatrix psd_sqrt(const CMatrix& hermitian_psd);

/// -Tr rho log(rho) with 0 log 0 = 0, in units set by `log_base`.
double von_neumann_entropy(const DensityMatrix& rho, double log_base = 2.0);
inline constexpr double kNaturalLog = std::numbers::e;

double purity(const DensityMatrix& rho);

DensityMatrix partial_trace(const StateVector& psi, const Bipartition& part, Keep keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const Bipartition& part, Keep keep);

/// (Tr |sqrt(rho2) sqrt(rho1)|)^2, evaluated as the squared nuclear norm.
/// Eigenvalues at the rounding level (<= 8 d eps lambda_max) count as zero.
double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// sqrt(2 (1 - Tr rho_S^2)) for a pure bipartite state with a qubit system.
double concurrence_pure(const StateVector& psi, const Bipartition& part);

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

/// exp(-iHt) from a cached eigendecomposition of H.
class Propagator {
public:
  explicit Propagator(const HermitianOperator& h);

  std::size_t dim() const { return static_cast<std::size_t>(eigen_.values.size()); }
  const EigenSystem& spectrum() const { return eigen_; }

  CVector evolve(const CVector& psi, double t) const;
  StateVector evolve(const StateVector& psi, double t) const;

private:
  EigenSystem eigen_;
};

StateVector evolve_unitary(const StateVector& psi, const HermitianOperator& h, double t);

} // namespace corrwitness
