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

#include "corrwitness/models/fock_oracle.hpp"

#include <cmath>
#include <string>

#include "corrwitness/core/errors.hpp"
#include "corrwitness/distance/measures.hpp"

namespace corrwitness::dephasing {

namespace {

constexpr double kConvergence = 1e-10;

} // namespace

CVector coherent_state_fock(Complex z, std::size_t n_max) {
  CVector v(static_cast<Eigen::Index>(n_max + 1));
  v[0] = std::exp(-0.5 * std::norm(z));
  for (std::size_t k = 1; k <= n_max; ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    v[i] = v[i - 1] * z / std::sqrt(static_cast<double>(k));
  }
  return v;
}

HermitianOperator hamiltonian_fock(const DephasingParams& params, FockCutoff cutoff) {
  params.validate();
  if (cutoff.n_max < 1) {
    throw InvalidInput("hamiltonian_fock: n_max must be at least 1");
  }
  const auto d = static_cast<Eigen::Index>(cutoff.n_max + 1);
  CMatrix h = CMatrix::Zero(2 * d, 2 * d);
  for (Eigen::Index s = 0; s < 2; ++s) {
    const double sz = s == 0 ? 1.0 : -1.0;
    const Eigen::Index off = s * d;
    for (Eigen::Index n = 0; n < d; ++n) {
      h(off + n, off + n) = params.epsilon * sz + params.omega * static_cast<double>(n);
      if (n + 1 < d) {
        const double c = sz * params.g0 * std::sqrt(static_cast<double>(n + 1));
        h(off + n, off + n + 1) = c;
        h(off + n + 1, off + n) = c;
      }
    }
  }
  return HermitianOperator(std::move(h));
}

StateVector total_state_fock(const DephasingParams& params, const CorrelatedStateSpec& spec,
                             FockCutoff cutoff) {
  spec.validate();
  if (cutoff.n_max < 1) {
    throw InvalidInput("total_state_fock: n_max must be at least 1");
  }
  const CVector coherent = coherent_state_fock(params.z, cutoff.n_max);
  const double lost = 1.0 - coherent.squaredNorm();
  if (lost > 1e-12) {
    throw TruncationError("total_state_fock: cutoff " + std::to_string(cutoff.n_max) +
                          " drops " + std::to_string(lost) + " of |z>");
  }
  const auto d = coherent.size();
  CVector vacuum = CVector::Zero(d);
  vacuum[0] = 1.0;
  const double l = spec.lambda;
  const CVector omega_l = ((1.0 - l) * vacuum + l * coherent) / normalization_C(l, params.z);

  CVector psi(2 * d);
  for (Eigen::Index s = 0; s < 2; ++s) {
    psi.segment(s * d, d) = spec.b1 * spec.u(s, 0) * vacuum + spec.b2 * spec.u(s, 1) * omega_l;
  }
  return StateVector::normalized(std::move(psi));
}

FockOracle::FockOracle(const DephasingParams& params, FockCutoff start, std::size_t max_n)
    : params_(params), start_(start), max_n_(max_n) {
  params_.validate();
  if (start_.n_max < 1 || start_.n_max > max_n_) {
    throw InvalidInput("FockOracle: starting cutoff out of range");
  }
}

const FockOracle::Level& FockOracle::level(std::size_t index) const {
  std::lock_guard<std::mutex> lock(mutex_);
  while (levels_.size() <= index) {
    const std::size_t n = start_.n_max << levels_.size();
    if (n > max_n_) {
      throw TruncationError("FockOracle: no convergence up to n_max = " +
                            std::to_string(max_n_));
    }
    const FockCutoff cutoff{n};
    levels_.push_back(std::make_unique<Level>(Level{cutoff, Propagator(hamiltonian_fock(params_, cutoff))}));
  }
  return *levels_[index];
}

DensityMatrix FockOracle::reduced_at(std::size_t index, const CorrelatedStateSpec& spec,
                                     double t) const {
  const Level& lv = level(index);
  const StateVector psi = lv.propagator.evolve(total_state_fock(params_, spec, lv.cutoff), t);
  return partial_trace(psi, Bipartition{2, lv.cutoff.n_max + 1}, Keep::System);
}

DensityMatrix FockOracle::reduced_state(const CorrelatedStateSpec& spec, double t) const {
  DensityMatrix previous = reduced_at(0, spec, t);
  for (std::size_t i = 1;; ++i) {
    DensityMatrix current = reduced_at(i, spec, t);
    if (distance::trace_distance(previous, current) < kConvergence) {
      return current;
    }
    previous = std::move(current);
  }
}

StateVector FockOracle::total_state(const CorrelatedStateSpec& spec, double t) const {
  const Level& lv = level(0);
  return lv.propagator.evolve(total_state_fock(params_, spec, lv.cutoff), t);
}

DensityMatrix oracle_reduced_state(const DephasingParams& params, const CorrelatedStateSpec& spec,
                                   double t, FockCutoff cutoff) {
  return FockOracle(params, cutoff).reduced_state(spec, t);
}

} // namespace corrwitness::dephasing
