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

#include "corrwitness/models/spin_star.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "corrwitness/core/errors.hpp"

namespace corrwitness::spinstar {

namespace {

bool is_integral(double x) { return std::abs(x - std::round(x)) < 1e-12; }

double bath_j(const SpinStarParams& params) { return 0.5 * params.n_bath; }

} // namespace

void SpinStarParams::validate() const {
  if (n_bath < 2) {
    throw InvalidInput("SpinStarParams: n_bath must be at least 2");
  }
  if (a0 == 0.0 || !std::isfinite(a0)) {
    throw InvalidInput("SpinStarParams: a0 must be finite and nonzero");
  }
}

double SpinStarParams::default_t_max() const {
  return 10.0 * std::numbers::pi / (std::abs(a0) * std::sqrt(static_cast<double>(n_bath)));
}

double ladder_coefficient(double j, double m, LadderDirection direction) {
  if (!(j >= 0.0) || !is_integral(2.0 * j) || !is_integral(2.0 * m) || !is_integral(j - m) ||
      std::abs(m) > j + 1e-12) {
    throw InvalidInput("ladder_coefficient: invalid (j, m)");
  }
  const double target = direction == LadderDirection::Raise ? m + 1.0 : m - 1.0;
  if (std::abs(target) > j + 1e-12) return 0.0;
  return std::sqrt(j * (j + 1.0) - m * target);
}

HermitianOperator hamiltonian_subspace(const SpinStarParams& params) {
  params.validate();
  const double j = bath_j(params);
  const double c1 = params.a0 * ladder_coefficient(j, j, LadderDirection::Lower);
  const double c2 = params.a0 * ladder_coefficient(j, j - 1.0, LadderDirection::Lower);
  CMatrix h = CMatrix::Zero(kSubspaceDim, kSubspaceDim);
  h(kGChiPlus, kEChiMinus) = h(kEChiMinus, kGChiPlus) = c1;
  h(kGChiMinus, kEChiMinusMinus) = h(kEChiMinusMinus, kGChiMinus) = c2;
  return HermitianOperator(std::move(h));
}

CVector initial_subspace_state(const SpinStarStateSpec& spec) {
  spec.validate();
  const double l = spec.lambda;
  const double norm = 1.0 / std::sqrt(l * l + (1.0 - l) * (1.0 - l));
  const Complex up = spec.b2 * norm * (1.0 - l);
  const Complex down = spec.b2 * norm * l;
  CVector v = CVector::Zero(kSubspaceDim);
  v[kEChiPlus] = spec.b1 * spec.u(0, 0) + up * spec.u(0, 1);
  v[kGChiPlus] = spec.b1 * spec.u(1, 0) + up * spec.u(1, 1);
  v[kEChiMinus] = down * spec.u(0, 1);
  v[kGChiMinus] = down * spec.u(1, 1);
  return v;
}

DensityMatrix reduce_subspace_state(const CVector& psi) {
  if (psi.size() != static_cast<Eigen::Index>(kSubspaceDim)) {
    throw InvalidInput("reduce_subspace_state: expected a 5-component vector");
  }
  const double ee = std::norm(psi[kEChiPlus]) + std::norm(psi[kEChiMinus]) +
                    std::norm(psi[kEChiMinusMinus]);
  const double gg = std::norm(psi[kGChiPlus]) + std::norm(psi[kGChiMinus]);
  const Complex eg = psi[kEChiPlus] * std::conj(psi[kGChiPlus]) +
                     psi[kEChiMinus] * std::conj(psi[kGChiMinus]);
  CMatrix rho(2, 2);
  rho << ee, eg, std::conj(eg), gg;
  return DensityMatrix(std::move(rho));
}

DensityMatrix reduced_state_spinstar(const SpinStarParams& params, const SpinStarStateSpec& spec,
                                     double t) {
  const Propagator propagator(hamiltonian_subspace(params));
  return reduce_subspace_state(propagator.evolve(initial_subspace_state(spec), t));
}

HermitianOperator hamiltonian_full(const SpinStarParams& params) {
  params.validate();
  if (params.n_bath > kMaxBruteForceBath) {
    throw InvalidInput("hamiltonian_full: n_bath above " + std::to_string(kMaxBruteForceBath));
  }
  const int n = params.n_bath;
  const Eigen::Index bath_dim = Eigen::Index{1} << n;
  CMatrix h = CMatrix::Zero(2 * bath_dim, 2 * bath_dim);
  for (Eigen::Index bits = 0; bits < bath_dim; ++bits) {
    for (int k = 0; k < n; ++k) {
      const Eigen::Index flag = Eigen::Index{1} << k;
      if ((bits & flag) == 0) {
        // s+ s-^(k): |g, k up> -> |e, k down>
        h(bits | flag, bath_dim + bits) += params.a0;
      } else {
        // s- s+^(k): |e, k down> -> |g, k up>
        h(bath_dim + (bits & ~flag), bits) += params.a0;
      }
    }
  }
  return HermitianOperator(std::move(h));
}

CVector dicke_state(int n_bath, int excitations) {
  if (n_bath < 1 || n_bath > kMaxBruteForceBath || excitations < 0 || excitations > n_bath) {
    throw InvalidInput("dicke_state: invalid arguments");
  }
  const Eigen::Index dim = Eigen::Index{1} << n_bath;
  CVector v = CVector::Zero(dim);
  v[0] = 1.0;
  for (int step = 0; step < excitations; ++step) {
    CVector lowered = CVector::Zero(dim);
    for (Eigen::Index bits = 0; bits < dim; ++bits) {
      if (v[bits] == Complex(0.0, 0.0)) continue;
      for (int k = 0; k < n_bath; ++k) {
        const Eigen::Index flag = Eigen::Index{1} << k;
        if ((bits & flag) == 0) lowered[bits | flag] += v[bits];
      }
    }
    v = lowered / lowered.norm();
  }
  return v;
}

std::array<CVector, kSubspaceDim> subspace_basis_full(int n_bath) {
  const Eigen::Index bath_dim = Eigen::Index{1} << n_bath;
  const CVector chi[3] = {dicke_state(n_bath, 0), dicke_state(n_bath, 1), dicke_state(n_bath, 2)};
  auto embed = [&](int spin, const CVector& bath) {
    CVector v = CVector::Zero(2 * bath_dim);
    v.segment(spin * bath_dim, bath_dim) = bath;
    return v;
  };
  return {embed(0, chi[0]), embed(1, chi[0]), embed(0, chi[1]), embed(1, chi[1]),
          embed(0, chi[2])};
}

StateVector initial_full_state(const SpinStarParams& params, const SpinStarStateSpec& spec) {
  params.validate();
  const CVector sub = initial_subspace_state(spec);
  const auto basis = subspace_basis_full(params.n_bath);
  CVector psi = CVector::Zero(basis[0].size());
  for (std::size_t k = 0; k < kSubspaceDim; ++k) {
    psi += sub[static_cast<Eigen::Index>(k)] * basis[k];
  }
  return StateVector::normalized(std::move(psi));
}

BruteForceSpinStar::BruteForceSpinStar(const SpinStarParams& params)
    : params_(params), propagator_(hamiltonian_full(params)) {}

StateVector BruteForceSpinStar::evolve(const SpinStarStateSpec& spec, double t) const {
  return propagator_.evolve(initial_full_state(params_, spec), t);
}

DensityMatrix BruteForceSpinStar::reduced_state(const SpinStarStateSpec& spec, double t) const {
  const Bipartition part{2, std::size_t{1} << params_.n_bath};
  return partial_trace(evolve(spec, t), part, Keep::System);
}

DensityMatrix brute_force_reduced(const SpinStarParams& params, const SpinStarStateSpec& spec,
                                  double t) {
  return BruteForceSpinStar(params).reduced_state(spec, t);
}

} // namespace corrwitness::spinstar
