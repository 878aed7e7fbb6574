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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "corrwitness/simd/kernels.hpp"

namespace corrwitness::simd::scalar {

namespace {

// -(p log2 p + q log2 q) for the eigenvalues (1 +- n)/2 of a qubit state
// with Bloch length n.
inline double binary_entropy_bits(double n) {
  const double up = 0.5 * (1.0 + n);
  const double down = std::max(0.5 * (1.0 - n), 0.0);
  double s = 0.0;
  if (up > 0.0) s -= up * std::log(up);
  if (down > 0.0) s -= down * std::log(down);
  return s * (1.0 / std::numbers::ln2);
}

} // namespace

void qubit_distances(BlochView a, BlochView b, DistanceBuffers out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double x1 = a.x[i], y1 = a.y[i], z1 = a.z[i];
    const double x2 = b.x[i], y2 = b.y[i], z2 = b.z[i];
    const double dx = x1 - x2, dy = y1 - y2, dz = z1 - z2;
    const double d2 = dx * dx + dy * dy + dz * dz;
    const double n1sq = x1 * x1 + y1 * y1 + z1 * z1;
    const double n2sq = x2 * x2 + y2 * y2 + z2 * z2;

    out.trace[i] = std::min(0.5 * std::sqrt(d2), 1.0);

    // 1 - F = (|d|^2 - |r1 x d|^2) / (2 (1 - r1.r2 + sqrt((1-|r1|^2)(1-|r2|^2))))
    const double cx = y1 * dz - z1 * dy;
    const double cy = z1 * dx - x1 * dz;
    const double cz = x1 * dy - y1 * dx;
    const double num = std::max(d2 - (cx * cx + cy * cy + cz * cz), 0.0);
    const double dot = x1 * x2 + y1 * y2 + z1 * z2;
    const double s = std::sqrt(std::max(1.0 - n1sq, 0.0) * std::max(1.0 - n2sq, 0.0));
    const double den = 2.0 * (1.0 - dot + s);
    const double one_minus_f = (num > 0.0 && den > 0.0) ? std::min(num / den, 1.0) : 0.0;
    const double root_f = std::sqrt(1.0 - one_minus_f);
    out.bures[i] = std::min(std::sqrt(one_minus_f / (1.0 + root_f)), 1.0);

    // sqrt(rho) = a + c.sigma with a = (sp + sm)/2 and c = r / (2 (sp + sm)).
    const double n1 = std::min(std::sqrt(n1sq), 1.0);
    const double n2 = std::min(std::sqrt(n2sq), 1.0);
    const double sp1 = std::sqrt(0.5 * (1.0 + n1)), sm1 = std::sqrt(0.5 * (1.0 - n1));
    const double sp2 = std::sqrt(0.5 * (1.0 + n2)), sm2 = std::sqrt(0.5 * (1.0 - n2));
    const double g1 = 0.5 / (sp1 + sm1), g2 = 0.5 / (sp2 + sm2);
    const double da = 0.5 * ((sp1 + sm1) - (sp2 + sm2));
    const double ex = g1 * x1 - g2 * x2, ey = g1 * y1 - g2 * y2, ez = g1 * z1 - g2 * z2;
    out.hellinger[i] = std::min(std::sqrt(da * da + ex * ex + ey * ey + ez * ez), 1.0);

    const double mx = 0.5 * (x1 + x2), my = 0.5 * (y1 + y2), mz = 0.5 * (z1 + z2);
    const double nm = std::min(std::sqrt(mx * mx + my * my + mz * mz), 1.0);
    const double js = binary_entropy_bits(nm) -
                      0.5 * (binary_entropy_bits(n1) + binary_entropy_bits(n2));
    out.jensen[i] = std::min(std::sqrt(std::max(js, 0.0)), 1.0);
  }
}

void complex_combination(const Complex* coeffs, const SeriesView* series, std::size_t terms,
                         double* out_re, double* out_im, std::size_t n) {
  std::fill(out_re, out_re + n, 0.0);
  std::fill(out_im, out_im + n, 0.0);
  for (std::size_t j = 0; j < terms; ++j) {
    const double cr = coeffs[j].real(), ci = coeffs[j].imag();
    const double* sr = series[j].re;
    const double* si = series[j].im;
    for (std::size_t i = 0; i < n; ++i) {
      out_re[i] += cr * sr[i] - ci * si[i];
      out_im[i] += cr * si[i] + ci * sr[i];
    }
  }
}

void log(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::log(x[i]);
}

} // namespace corrwitness::simd::scalar
