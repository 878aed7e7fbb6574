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
#include "corrwitness/distance/measures.hpp"
#include "corrwitness/experiments/sampling.hpp"

using namespace corrwitness;
using namespace corrwitness::distance;

namespace {

DensityMatrix pure(Complex a, Complex b) {
  CVector v(2);
  v << a, b;
  return DensityMatrix::pure(StateVector::normalized(v));
}

DensityMatrix diag(double a, double b) {
  RVector d(2);
  d << a, b;
  return DensityMatrix::diagonal(d);
}

} // namespace

TEST_CASE("measure names round trip") {
  for (auto kind : kAllMeasures) {
    CHECK(parse_measure(short_name(kind)) == kind);
    CHECK(parse_measure(long_name(kind)) == kind);
  }
  CHECK_FALSE(parse_measure("nope").has_value());
}

TEST_CASE("trace distance examples") {
  const DensityMatrix r = diag(0.3, 0.7);
  CHECK(trace_distance(r, r) == 0.0);
  CHECK(trace_distance(pure(1, 0), pure(0, 1)) == doctest::Approx(1.0));
  CHECK(trace_distance(diag(0.75, 0.25), diag(0.25, 0.75)) == doctest::Approx(0.5));
  CHECK_THROWS_AS(trace_distance(r, DensityMatrix::maximally_mixed(3)), InvalidInput);
}

TEST_CASE("bures examples") {
  const DensityMatrix r = diag(0.3, 0.7);
  CHECK(bures(r, r) == 0.0);
  CHECK(bures(pure(1, 0), pure(0, 1)) == doctest::Approx(1.0));
  CHECK(bures(pure(1, 0), pure(1, 1)) ==
        doctest::Approx(std::sqrt(1.0 - 1.0 / std::sqrt(2.0))).epsilon(1e-12));
  CHECK(bures(pure(1, 0), pure(1, 1)) == doctest::Approx(0.54120).epsilon(1e-5));
}

TEST_CASE("hellinger examples") {
  const DensityMatrix r = diag(0.3, 0.7);
  CHECK(hellinger(r, r) == 0.0);
  CHECK(hellinger(pure(1, 0), pure(0, 1)) == doctest::Approx(1.0));
  CHECK(hellinger(DensityMatrix::maximally_mixed(2), pure(1, 0)) ==
        doctest::Approx(std::sqrt(1.0 - 1.0 / std::sqrt(2.0))).epsilon(1e-12));
  // Commuting inputs reduce to the classical Hellinger distance.
  const double p = 0.2, q = 0.65;
  CHECK(hellinger(diag(p, 1 - p), diag(q, 1 - q)) ==
        doctest::Approx(std::sqrt(1.0 - std::sqrt(p * q) - std::sqrt((1 - p) * (1 - q))))
            .epsilon(1e-12));
}

TEST_CASE("jensen-shannon examples") {
  const DensityMatrix r = diag(0.3, 0.7);
  CHECK(jensen_shannon(r, r) == 0.0);
  CHECK(jensen_shannon(pure(1, 0), pure(0, 1)) == doctest::Approx(1.0));
  CHECK(jensen_shannon(pure(1, 0), pure(0, 1), EntropyUnit::Nats) ==
        doctest::Approx(std::sqrt(std::numbers::ln2)));
  experiments::RandomStream rng(4);
  for (int i = 0; i < 500; ++i) {
    const DensityMatrix a(experiments::random_density_entries(rng, 2));
    const DensityMatrix b(experiments::random_density_entries(rng, 2));
    CHECK(std::abs(jensen_shannon(a, b) - jensen_shannon(b, a)) < 1e-10);
  }
}

TEST_CASE("dispatch and delta") {
  const DensityMatrix a = pure(1, 0), b = pure(0, 1), m = diag(0.5, 0.5);
  for (auto kind : kAllMeasures) {
    CHECK(distance::distance(kind, m, m) == 0.0);
    CHECK(distance::distance(kind, a, b) == doctest::Approx(1.0));
    CHECK(delta_distance(kind, a, m, a, m) == 0.0);
    CHECK(delta_distance(kind, m, m, m, m) == 0.0);
  }
  CHECK(delta_distance(MeasureKind::Trace, a, b, m, m) == doctest::Approx(1.0));
  CHECK(delta_distance(MeasureKind::Trace, m, m, a, b) == doctest::Approx(-1.0));
}

TEST_CASE("q_function") {
  CHECK(q_function(1, 1) == doctest::Approx(0.0));
  CHECK(q_function(0, 0) == doctest::Approx(1.0));
  for (int i = 0; i < 100; ++i)
    for (int j = 0; j < 100; ++j) REQUIRE(q_function(i / 99.0, j / 99.0) >= 0.0);
  CHECK_THROWS_AS(q_function(-0.1, 0.5), InvalidInput);
  CHECK_THROWS_AS(q_function(0.5, 1.1), InvalidInput);
}

TEST_CASE("witness bound rhs") {
  const DensityMatrix s1 = diag(0.2, 0.8), s2 = pure(1, 1);
  const DensityMatrix e = DensityMatrix::maximally_mixed(3);
  CHECK(witness_bound_rhs(tensor_product(s1, e), tensor_product(s2, e), {2, 3}) ==
        doctest::Approx(0.0).epsilon(1e-14));
  // Product states with different environments: only the environment term.
  const DensityMatrix e2 = DensityMatrix::pure(StateVector::normalized(CVector::Ones(3)));
  CHECK(witness_bound_rhs(tensor_product(s1, e), tensor_product(s2, e2), {2, 3}) ==
        doctest::Approx(trace_distance(e, e2)).epsilon(1e-12));
  CVector bell = CVector::Zero(4);
  bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
  const DensityMatrix b = DensityMatrix::pure(StateVector(bell));
  CHECK(witness_bound_rhs(b, b, {2, 2}) > 0.0);
  CHECK_THROWS_AS(witness_bound_rhs(b, b, {2, 3}), InvalidInput);
}

TEST_CASE("guarded sqrt") {
  CHECK(guarded_sqrt(4.0) == 2.0);
  CHECK(guarded_sqrt(-5e-13) == 0.0);
  CHECK_THROWS_AS(guarded_sqrt(-1e-9), ConsistencyError);
}

TEST_CASE("metric properties on random qubit pairs") {
  experiments::RandomStream rng(31);
  for (int i = 0; i < 10000; ++i) {
    const DensityMatrix a(experiments::random_density_entries(rng, 2));
    const DensityMatrix b(experiments::random_density_entries(rng, 2));
    const DensityMatrix c(experiments::random_density_entries(rng, 2));
    for (auto kind : kAllMeasures) {
      const double d = distance::distance(kind, a, b);
      REQUIRE(d >= 0.0);
      REQUIRE(d <= 1.0);
      REQUIRE(distance::distance(kind, a, a) <= 1e-10);
      REQUIRE(std::abs(d - distance::distance(kind, b, a)) <= 1e-10);
      if (trace_distance(a, b) >= 1e-6) REQUIRE(d > 0.0);
    }
    for (auto kind : {MeasureKind::Trace, MeasureKind::Bures}) {
      REQUIRE(distance::distance(kind, a, c) <=
              distance::distance(kind, a, b) + distance::distance(kind, b, c) + 1e-10);
    }
  }
}
