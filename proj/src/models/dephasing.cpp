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

#include "corrwitness/models/dephasing.hpp"

#include <cmath>
#include <numbers>

#include "corrwitness/core/errors.hpp"
#include "corrwitness/experiments/sampling.hpp"

namespace corrwitness {

namespace models {

void CorrelatedStateSpec::validate() const {
  const double norm2 = std::norm(b1) + std::norm(b2);
  if (std::abs(norm2 - 1.0) > tolerance::kNorm) {
    throw InvalidInput("CorrelatedStateSpec: |b1|^2 + |b2|^2 must equal 1");
  }
  if ((u.adjoint() * u - Matrix2c::Identity()).cwiseAbs().maxCoeff() > tolerance::kNorm) {
    throw InvalidInput("CorrelatedStateSpec: U is not unitary");
  }
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw InvalidInput("CorrelatedStateSpec: lambda must lie in [0, 1]");
  }
}

std::string_view family_name(StateFamily family) {
  switch (family) {
  case StateFamily::Original: return "original";
  case StateFamily::Swapped: return "swapped";
  case StateFamily::SigmaX: return "sigmax";
  case StateFamily::HaarRandom: return "haar";
  }
  return "?";
}

std::optional<StateFamily> parse_family(std::string_view text) {
  for (StateFamily f : {StateFamily::Original, StateFamily::Swapped, StateFamily::SigmaX,
                        StateFamily::HaarRandom}) {
    if (text == family_name(f)) return f;
  }
  return std::nullopt;
}

CorrelatedStateSpec family_spec(StateFamily family, Complex b1, Complex b2, double lambda,
                                experiments::RandomStream* rng) {
  CorrelatedStateSpec spec;
  spec.lambda = lambda;
  switch (family) {
  case StateFamily::Original:
    spec.b1 = b1;
    spec.b2 = b2;
    break;
  case StateFamily::Swapped:
    // b1 |e>|Omega> + b2 |g>|0>
    spec.b1 = b2;
    spec.b2 = b1;
    spec.u << 0.0, 1.0, 1.0, 0.0;
    break;
  case StateFamily::SigmaX: {
    // b1 |+1_x>|Omega> + b2 |-1_x>|0>
    const double r = std::numbers::sqrt2 / 2.0;
    spec.b1 = b2;
    spec.b2 = b1;
    spec.u << r, r, -r, r;
    break;
  }
  case StateFamily::HaarRandom:
    if (rng == nullptr) {
      throw InvalidInput("family_spec: HaarRandom requires a random stream");
    }
    spec.b1 = b1;
    spec.b2 = b2;
    spec.u = experiments::haar_unitary(*rng);
    break;
  }
  spec.validate();
  return spec;
}

} // namespace models

namespace dephasing {

void DephasingParams::validate() const {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw InvalidInput("DephasingParams: omega must be positive");
  }
  if (!std::isfinite(epsilon) || !std::isfinite(g0) || !std::isfinite(z.real()) ||
      !std::isfinite(z.imag())) {
    throw InvalidInput("DephasingParams: parameters must be finite");
  }
}

double DephasingParams::period() const { return 2.0 * std::numbers::pi / omega; }

Complex coherent_overlap(Complex x, Complex y) {
  return std::exp(-0.5 * std::norm(x) - 0.5 * std::norm(y) + std::conj(x) * y);
}

Complex alpha(const DephasingParams& params, double t) {
  return params.g0 / params.omega * (1.0 - std::polar(1.0, params.omega * t));
}

Complex phase_A(const DephasingParams& params, double t) {
  const Complex a = alpha(params, t);
  const Complex exponent = 0.5 * (a * std::conj(params.z) - std::conj(a) * params.z);
  // The exponent is purely imaginary; drop the roundoff in the real part.
  return std::polar(1.0, exponent.imag());
}

double normalization_C(double lambda, Complex z) {
  const double overlap = coherent_overlap(Complex(0.0, 0.0), z).real();
  return std::sqrt((1.0 - lambda) * (1.0 - lambda) + lambda * lambda +
                   2.0 * lambda * (1.0 - lambda) * overlap);
}

std::array<Complex, kCoherenceTerms> coherence_weights(const DephasingParams& params,
                                                       const CorrelatedStateSpec& spec) {
  const double l = spec.lambda;
  const double inv_c = 1.0 / normalization_C(l, params.z);
  const Complex u11 = spec.u(0, 0), u12 = spec.u(0, 1);
  const Complex u21 = spec.u(1, 0), u22 = spec.u(1, 1);
  const Complex b1 = spec.b1, b2 = spec.b2;
  const double b1sq = std::norm(b1), b2sq = std::norm(b2);
  const double vac = inv_c * (1.0 - l);
  const double coh = inv_c * l;

  std::array<Complex, kCoherenceTerms> w;
  w[0] = b1sq * u11 * std::conj(u21) + b2sq * vac * vac * u12 * std::conj(u22) +
         vac * (u11 * std::conj(u22) * b1 * std::conj(b2) +
                u12 * std::conj(u21) * std::conj(b1) * b2);
  w[1] = coh * u12 * (b2sq * vac * std::conj(u22) + std::conj(b1) * b2 * std::conj(u21));
  w[2] = coh * coh * b2sq * u12 * std::conj(u22);
  w[3] = coh * std::conj(u22) * (b2sq * vac * u12 + b1 * std::conj(b2) * u11);
  return w;
}

std::array<Complex, kCoherenceTerms> coherence_series(const DephasingParams& params, double t) {
  const Complex a = alpha(params, t);
  const Complex z = params.z;
  const Complex phase = phase_A(params, t);
  const Complex free = std::polar(1.0, -2.0 * params.epsilon * t);
  return {coherent_overlap(-a, a) * free, coherent_overlap(-a, z + a) * phase * free,
          coherent_overlap(z - a, z + a) * phase * phase * free,
          coherent_overlap(z - a, a) * phase * free};
}

Complex coherence_factor(const DephasingParams& params, const CorrelatedStateSpec& spec,
                         double t) {
  const auto w = coherence_weights(params, spec);
  const auto s = coherence_series(params, t);
  Complex b{0.0, 0.0};
  for (std::size_t k = 0; k < kCoherenceTerms; ++k) b += w[k] * s[k];
  return b;
}

double population_e(const DephasingParams& params, const CorrelatedStateSpec& spec) {
  const double l = spec.lambda;
  const double inv_c = 1.0 / normalization_C(l, params.z);
  const Complex u11 = spec.u(0, 0), u12 = spec.u(0, 1);
  const Complex env_overlap =
      (1.0 - l) + l * coherent_overlap(params.z, Complex(0.0, 0.0));
  const Complex cross = spec.b1 * std::conj(spec.b2) * u11 * std::conj(u12) * env_overlap;
  return std::norm(spec.b1) * std::norm(u11) + std::norm(spec.b2) * std::norm(u12) +
         2.0 * inv_c * cross.real();
}

DensityMatrix reduced_state(const DephasingParams& params, const CorrelatedStateSpec& spec,
                            double t) {
  const double p = population_e(params, spec);
  const Complex b = coherence_factor(params, spec, t);
  Matrix2c rho;
  rho << p, b, std::conj(b), 1.0 - p;
  try {
    return DensityMatrix(CMatrix(rho));
  } catch (const NotPositiveSemidefinite& e) {
    throw ConsistencyError(std::string("dephasing::reduced_state: ") + e.what());
  }
}

} // namespace dephasing

} // namespace corrwitness
