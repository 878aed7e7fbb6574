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

#include <doctest.h>

#include <cmath>

#include "corrwitness/core/errors.hpp"
#include "corrwitness/distance/measures.hpp"
#include "corrwitness/experiments/sampling.hpp"
#include "corrwitness/models/spin_star.hpp"

using namespace corrwitness;
using namespace corrwitness::spinstar;
using models::StateFamily;

namespace {

SpinStarStateSpec random_spec(experiments::RandomStream& rng, double lambda) {
  const auto [b1, b2] = experiments::random_amplitudes(rng);
  return models::family_spec(StateFamily::HaarRandom, b1, b2, lambda, &rng);
}

} // namespace

TEST_CASE("params") {
  CHECK_THROWS_AS((SpinStarParams{1.0, 1}.validate()), InvalidInput);
  CHECK_THROWS_AS((SpinStarParams{0.0, 4}.validate()), InvalidInput);
  CHECK_NOTHROW((SpinStarParams{-0.5, 2}.validate()));
}

TEST_CASE("ladder coefficients") {
  for (int n : {2, 5, 20}) {
    const double j = 0.5 * n;
    CHECK(ladder_coefficient(j, j, LadderDirection::Lower) == doctest::Approx(std::sqrt(n)));
    CHECK(ladder_coefficient(j, j - 1, LadderDirection::Lower) ==
          doctest::Approx(std::sqrt(2.0 * n - 2.0)));
    CHECK(ladder_coefficient(j, j, LadderDirection::Raise) == 0.0);
    CHECK(ladder_coefficient(j, -j, LadderDirection::Lower) == 0.0);
  }
  CHECK(ladder_coefficient(1.5, 0.5, LadderDirection::Raise) == doctest::Approx(std::sqrt(3.0)));
  CHECK_THROWS_AS(ladder_coefficient(1.0, 2.0, LadderDirection::Lower), InvalidInput);
  CHECK_THROWS_AS(ladder_coefficient(1.0, 0.5, LadderDirection::Lower), InvalidInput);
  CHECK_THROWS_AS(ladder_coefficient(-1.0, 0.0, LadderDirection::Lower), InvalidInput);
}

TEST_CASE("subspace hamiltonian") {
  const CMatrix h = hamiltonian_subspace({1.0, 4}).entries();
  CHECK(h(kGChiPlus, kEChiMinus) == Complex(2.0, 0.0));
  CHECK(std::abs(h(kGChiMinus, kEChiMinusMinus) - std::sqrt(6.0)) < 1e-15);
  CHECK(h.row(kEChiPlus).norm() == 0.0);
  CHECK(h.col(kEChiPlus).norm() == 0.0);
  CHECK(h.cwiseAbs().sum() == doctest::Approx(2 * (2.0 + std::sqrt(6.0))));
  for (int n : {2, 4, 6, 8}) {
    const SpinStarParams p{0.7, n};
    const auto basis = subspace_basis_full(n);
    const CMatrix hf = hamiltonian_full(p).entries();
    const CMatrix hs = hamiltonian_subspace(p).entries();
    for (std::size_t a = 0; a < kSubspaceDim; ++a) {
      CHECK(basis[a].norm() == doctest::Approx(1.0));
      for (std::size_t b = 0; b < kSubspaceDim; ++b) {
        CHECK(std::abs(basis[a].dot(basis[b])) == doctest::Approx(a == b ? 1.0 : 0.0));
        CHECK(std::abs(basis[a].dot(hf * basis[b]) -
                       hs(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b))) < 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(hamiltonian_full({1.0, kMaxBruteForceBath + 1}), InvalidInput);
}

TEST_CASE("dicke states") {
  const CVector top = dicke_state(4, 0);
  CHECK(top[0] == Complex(1.0, 0.0));
  const CVector one = dicke_state(4, 1);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(one[1 << k] - 0.5) < 1e-15);
  const CVector two = dicke_state(4, 2);
  CHECK(std::abs(two[0b0011] - 1.0 / std::sqrt(6.0)) < 1e-15);
  CHECK(two.norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(dicke_state(4, 5), InvalidInput);
}

TEST_CASE("analytic solutions") {
  const SpinStarParams p{1.0, 6};
  const auto excited = models::family_spec(StateFamily::Original, 1.0, 0.0, 0.0);
  const auto ground_top = models::family_spec(StateFamily::Swapped, 1.0, 0.0, 0.0);
  // family Swapped with b1 = 1 puts the weight on U|g> = |e>; use the explicit spec instead.
  SpinStarStateSpec g;
  g.b1 = 0.0;
  g.b2 = 1.0;
  g.lambda = 0.0;
  for (double t : {0.0, 0.3, 1.7, 9.0}) {
    const DensityMatrix e = reduced_state_spinstar(p, excited, t);
    CHECK(e(0, 0).real() == doctest::Approx(1.0).epsilon(1e-14));
    const DensityMatrix r = reduced_state_spinstar(p, g, t);
    CHECK(r(0, 0).real() ==
          doctest::Approx(std::pow(std::sin(std::sqrt(6.0) * t), 2)).epsilon(1e-12));
  }
  CHECK(reduced_state_spinstar(p, ground_top, 2.0)(0, 0).real() ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("subspace dynamics against the full space") {
  experiments::RandomStream rng(77);
  for (int n : {2, 4, 6}) {
    const SpinStarParams p{1.0, n};
    const BruteForceSpinStar brute(p);
    for (int s = 0; s < 8; ++s) {
      const auto spec = random_spec(rng, rng.uniform());
      const DensityMatrix r0 = brute.reduced_state(spec, 0.0);
      CHECK(distance::trace_distance(r0, reduce_subspace_state(initial_subspace_state(spec))) <
            1e-12);
      for (int i = 0; i < 6; ++i) {
        const double t = 8 * rng.uniform();
        CHECK(brute.evolve(spec, t).amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-10));
        const DensityMatrix full = brute.reduced_state(spec, t);
        CHECK(distance::trace_distance(full, reduced_state_spinstar(p, spec, t)) < 1e-10);
        CHECK(std::abs(full.entries().trace() - 1.0) < 1e-12);
      }
    }
  }
  CHECK(distance::trace_distance(
            brute_force_reduced({1.0, 3}, random_spec(rng, 0.5), 1.0),
            reduced_state_spinstar({1.0, 3}, random_spec(rng, 0.5), 1.0)) >= 0.0);
}

TEST_CASE("lambda zero leaves identical states") {
  experiments::RandomStream rng(8);
  const SpinStarParams p{1.0, 20};
  for (int s = 0; s < 10; ++s) {
    const auto spec = random_spec(rng, 0.0);
    const double t = 3 * rng.uniform();
    const auto a = reduced_state_spinstar(p, spec, t);
    const auto b = reduced_state_spinstar(p, spec.with_lambda(0.0), t);
    for (auto k : distance::kAllMeasures) CHECK(distance::distance(k, a, b) == 0.0);
  }
}
