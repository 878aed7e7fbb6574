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
#include <numbers>

#include "corrwitness/core/errors.hpp"
#include "corrwitness/core/linalg.hpp"
#include "corrwitness/experiments/sampling.hpp"

using namespace corrwitness;
using experiments::RandomStream;

namespace {

CMatrix diag2(double a, double b) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

StateVector ket(std::initializer_list<Complex> amps) {
  CVector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (Complex a : amps) v[i++] = a;
  return StateVector::normalized(v);
}

StateVector random_ket(RandomStream& rng, std::size_t dim) {
  CVector v(static_cast<Eigen::Index>(dim));
  for (auto& a : v) a = rng.complex_normal();
  return StateVector::normalized(v);
}

DensityMatrix conj_by(const CMatrix& u, const DensityMatrix& rho) {
  const CMatrix m = u * rho.entries() * u.adjoint();
  return DensityMatrix(0.5 * (m + m.adjoint()));
}

} // namespace

TEST_CASE("state and density invariants are enforced on construction") {
  CHECK_THROWS_AS(StateVector(CVector::Ones(2)), InvalidInput);
  CHECK_THROWS_AS(StateVector::normalized(CVector::Zero(2)), InvalidInput);
  CHECK_THROWS_AS(DensityMatrix(diag2(0.6, 0.6)), InvalidInput);
  CMatrix skew = diag2(0.5, 0.5);
  skew(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix{skew}, InvalidInput);
  CHECK_THROWS_AS(DensityMatrix(diag2(1.5, -0.5)), NotPositiveSemidefinite);
  CHECK_NOTHROW(DensityMatrix(diag2(1.0 + 5e-11, -5e-11)));
}

TEST_CASE("hermitian_eigs") {
  SUBCASE("identity") {
    const auto e = hermitian_eigs(HermitianOperator(CMatrix::Identity(2, 2)));
    CHECK(e.values[0] == doctest::Approx(1.0));
    CHECK(e.values[1] == doctest::Approx(1.0));
  }
  SUBCASE("diagonal state, descending") {
    const auto e = hermitian_eigs(DensityMatrix(diag2(0.25, 0.75)));
    CHECK(e.values[0] == doctest::Approx(0.75));
    CHECK(e.values[1] == doctest::Approx(0.25));
  }
  SUBCASE("pauli x") {
    CMatrix x(2, 2);
    x << 0, 1, 1, 0;
    const auto e = hermitian_eigs(HermitianOperator(x));
    CHECK(e.values[0] == doctest::Approx(1.0));
    CHECK(e.values[1] == doctest::Approx(-1.0));
    CHECK(std::abs(std::abs(e.vectors(0, 0)) - std::numbers::sqrt2 / 2) < 1e-12);
    CHECK(std::abs(e.vectors(0, 0) - e.vectors(1, 0)) < 1e-12);
    CHECK(std::abs(e.vectors(0, 1) + e.vectors(1, 1)) < 1e-12);
  }
  SUBCASE("non-Hermitian input") {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eigs(m), InvalidInput);
  }
  SUBCASE("reconstruction") {
    RandomStream rng(11);
    for (int i = 0; i < 50; ++i) {
      CMatrix g(6, 6);
      for (auto& a : g.reshaped()) a = rng.complex_normal();
      const CMatrix h = g + g.adjoint();
      const auto e = hermitian_eigs(h);
      const CMatrix back = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
      CHECK((back - h).cwiseAbs().maxCoeff() < 1e-10);
      for (Eigen::Index k = 1; k < e.values.size(); ++k) CHECK(e.values[k - 1] >= e.values[k]);
    }
  }
}

TEST_CASE("psd_sqrt") {
  const CMatrix half = psd_sqrt(DensityMatrix::maximally_mixed(2));
  CHECK((half - CMatrix::Identity(2, 2) / std::sqrt(2.0)).cwiseAbs().maxCoeff() < 1e-14);
  const DensityMatrix p = DensityMatrix::pure(ket({1.0, Complex(0.0, 1.0)}));
  CHECK((psd_sqrt(p) - p.entries()).cwiseAbs().maxCoeff() < 1e-12);
  const CMatrix r = psd_sqrt(DensityMatrix(diag2(0.81, 0.19)));
  CHECK(std::abs(r(0, 0) - 0.9) < 1e-14);
  CHECK(std::abs(r(1, 1) - std::sqrt(0.19)) < 1e-14);
  CHECK_THROWS_AS(psd_sqrt(diag2(1.0, -1e-6)), NotPositiveSemidefinite);

  RandomStream rng(3);
  for (int i = 0; i < 10000; ++i) {
    const DensityMatrix rho(experiments::random_density_entries(rng, 2));
    const CMatrix s = psd_sqrt(rho);
    REQUIRE((s * s - rho.entries()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("entropy and purity") {
  CHECK(von_neumann_entropy(DensityMatrix::pure(ket({1.0, 1.0}))) == doctest::Approx(0.0));
  CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(2)) == doctest::Approx(1.0));
  CHECK(von_neumann_entropy(DensityMatrix(diag2(0.9, 0.1)), kNaturalLog) ==
        doctest::Approx(-0.9 * std::log(0.9) - 0.1 * std::log(0.1)).epsilon(1e-14));
  CHECK(von_neumann_entropy(DensityMatrix(diag2(0.9, 0.1)), kNaturalLog) ==
        doctest::Approx(0.3251).epsilon(1e-4));
  CHECK_THROWS_AS(von_neumann_entropy(DensityMatrix::maximally_mixed(2), 1.0), InvalidInput);

  CHECK(purity(DensityMatrix::pure(ket({1.0, 2.0}))) == doctest::Approx(1.0));
  CHECK(purity(DensityMatrix::maximally_mixed(2)) == doctest::Approx(0.5));
  CHECK(purity(DensityMatrix(diag2(0.75, 0.25))) == doctest::Approx(0.625));

  RandomStream rng(5);
  for (int i = 0; i < 1000; ++i) {
    const DensityMatrix rho(experiments::random_density_entries(rng, 3));
    const CMatrix u = experiments::haar_unitary(rng, 3);
    REQUIRE(std::abs(von_neumann_entropy(conj_by(u, rho)) - von_neumann_entropy(rho)) < 1e-10);
  }
}

TEST_CASE("partial trace") {
  const DensityMatrix rs(diag2(0.7, 0.3));
  const DensityMatrix re = DensityMatrix::pure(ket({1.0, Complex(0.0, 2.0), 0.5}));
  const DensityMatrix prod = tensor_product(rs, re);
  CHECK((partial_trace(prod, {2, 3}, Keep::System).entries() - rs.entries()).norm() < 1e-14);
  CHECK((partial_trace(prod, {2, 3}, Keep::Environment).entries() - re.entries()).norm() < 1e-14);

  const StateVector bell = ket({1.0, 0.0, 0.0, 1.0});
  const DensityMatrix half = partial_trace(bell, {2, 2}, Keep::System);
  CHECK((half.entries() - CMatrix::Identity(2, 2) / 2.0).norm() < 1e-14);
  CHECK((partial_trace(DensityMatrix::pure(bell), {2, 2}, Keep::Environment).entries() -
         CMatrix::Identity(2, 2) / 2.0)
            .norm() < 1e-14);

  CHECK_THROWS_AS(partial_trace(bell, {2, 3}, Keep::System), InvalidInput);

  RandomStream rng(9);
  for (std::size_t d = 1; d <= 64; d *= 2) {
    for (int i = 0; i < 20; ++i) {
      const StateVector psi = random_ket(rng, 2 * d);
      const DensityMatrix s = partial_trace(psi, {2, d}, Keep::System);
      const DensityMatrix e = partial_trace(psi, {2, d}, Keep::Environment);
      CHECK(std::abs(s.entries().trace() - 1.0) < 1e-12);
      CHECK(std::abs(e.entries().trace() - 1.0) < 1e-12);
      CHECK(hermitian_eigs(s).values.minCoeff() > -1e-12);
      CHECK(hermitian_eigs(e).values.minCoeff() > -1e-12);
      // Schmidt spectra coincide.
      CHECK(std::abs(purity(s) - purity(e)) < 1e-12);
    }
  }
}

TEST_CASE("fidelity") {
  const DensityMatrix a = DensityMatrix::pure(ket({1.0, 0.0}));
  const DensityMatrix b = DensityMatrix::pure(ket({0.0, 1.0}));
  const DensityMatrix plus = DensityMatrix::pure(ket({1.0, 1.0}));
  CHECK(fidelity(a, a) == 1.0);
  CHECK(fidelity(a, b) == doctest::Approx(0.0));
  CHECK(fidelity(a, plus) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(fidelity(a, DensityMatrix::maximally_mixed(3)), InvalidInput);

  RandomStream rng(17);
  for (int i = 0; i < 2000; ++i) {
    const DensityMatrix r1(experiments::random_density_entries(rng, 2));
    const DensityMatrix r2(experiments::random_density_entries(rng, 2));
    const CMatrix u = experiments::haar_unitary(rng, 2);
    const double f = fidelity(r1, r2);
    REQUIRE(f >= 0.0);
    REQUIRE(f <= 1.0);
    REQUIRE(std::abs(f - fidelity(r2, r1)) < 1e-10);
    REQUIRE(std::abs(f - fidelity(conj_by(u, r1), conj_by(u, r2))) < 1e-10);
  }
  // Pure inputs: F = |<psi|phi>|^2 for pure pairs and <psi|rho|psi> for mixed partners.
  for (int i = 0; i < 2000; ++i) {
    const StateVector psi = random_ket(rng, 3);
    const StateVector phi = random_ket(rng, 3);
    const DensityMatrix mixed(experiments::random_density_entries(rng, 3));
    const CMatrix u = experiments::haar_unitary(rng, 3);
    const DensityMatrix p1 = DensityMatrix::pure(psi), p2 = DensityMatrix::pure(phi);
    const double overlap = std::norm(psi.amplitudes().dot(phi.amplitudes()));
    const double expect = psi.amplitudes().dot(mixed.entries() * psi.amplitudes()).real();
    REQUIRE(std::abs(fidelity(p1, p2) - overlap) < 1e-10);
    REQUIRE(std::abs(fidelity(conj_by(u, p1), conj_by(u, p2)) - overlap) < 1e-10);
    REQUIRE(std::abs(fidelity(p1, mixed) - expect) < 1e-10);
    REQUIRE(std::abs(fidelity(conj_by(u, p1), conj_by(u, mixed)) - expect) < 1e-10);
  }
}

TEST_CASE("concurrence of pure states") {
  CHECK(concurrence_pure(ket({1.0, 0.0, 0.0, 0.0}), {2, 2}) == doctest::Approx(0.0));
  CHECK(concurrence_pure(ket({1.0, 0.0, 0.0, 1.0}), {2, 2}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(concurrence_pure(ket({1.0, 0.0, 0.0}), {3, 1}), InvalidInput);

  RandomStream rng(23);
  for (int i = 0; i < 200; ++i) {
    const StateVector psi = random_ket(rng, 6);
    const double c = concurrence_pure(psi, {2, 3});
    const double p = purity(partial_trace(psi, {2, 3}, Keep::System));
    CHECK(c == std::sqrt(std::max(0.0, 2.0 * (1.0 - p))));
    CHECK(c >= 0.0);
    CHECK(c <= 1.0 + 1e-12);
  }
  // Schmidt rank one: the product of random factors.
  for (int i = 0; i < 50; ++i) {
    const StateVector s = random_ket(rng, 2), e = random_ket(rng, 3);
    CVector v(6);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 3; ++b) v[a * 3 + b] = s[a] * e[b];
    const StateVector prod(v);
    CHECK(std::abs(purity(partial_trace(prod, {2, 3}, Keep::System)) - 1.0) < 1e-10);
    CHECK(concurrence_pure(prod, {2, 3}) < 1e-7);
  }
}

TEST_CASE("unitary evolution") {
  RandomStream rng(29);
  CMatrix g(4, 4);
  for (auto& a : g.reshaped()) a = rng.complex_normal();
  const HermitianOperator h(g + g.adjoint());
  const StateVector psi = random_ket(rng, 4);

  const StateVector same = evolve_unitary(psi, h, 0.0);
  CHECK((same.amplitudes() - psi.amplitudes()).norm() == 0.0);

  const Propagator u(h);
  const StateVector a = u.evolve(u.evolve(psi, 0.7), 1.9);
  const StateVector b = u.evolve(psi, 2.6);
  CHECK((a.amplitudes() - b.amplitudes()).norm() < 1e-10);
  CHECK(std::abs(b.amplitudes().norm() - 1.0) < 1e-10);

  const auto eig = hermitian_eigs(h);
  const StateVector v(eig.vectors.col(1));
  const StateVector w = evolve_unitary(v, h, 3.3);
  CHECK((w.amplitudes().cwiseAbs2() - v.amplitudes().cwiseAbs2()).norm() < 1e-12);
  CHECK_THROWS_AS(evolve_unitary(random_ket(rng, 3), h, 1.0), InvalidInput);
}
