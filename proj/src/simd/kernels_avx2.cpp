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

// Compiled with -mavx2 -mfma; only reached through the dispatcher after a
// runtime CPU check.

#include <immintrin.h>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>

#include "corrwitness/simd/kernels.hpp"

namespace corrwitness::simd::avx2 {

namespace {

constexpr std::size_t kLanes = 4;

inline __m256d set1(double v) { return _mm256_set1_pd(v); }

// int64 lanes with |k| < 2^51 to double.
inline __m256d int64_to_double(__m256i k) {
  const __m256i bias = _mm256_set1_epi64x(0x4338000000000000LL);
  return _mm256_sub_pd(_mm256_castsi256_pd(_mm256_add_epi64(k, bias)),
                       set1(6755399441055744.0));
}

// fdlibm's __ieee754_log reduction and minimax polynomial, four lanes at a
// time. Inputs must be positive normal numbers.
inline __m256d log_pd(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);
  __m256i k = _mm256_sub_epi64(_mm256_srli_epi64(bits, 52), _mm256_set1_epi64x(1023));
  const __m256i mantissa = _mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL));
  __m256d m = _mm256_castsi256_pd(_mm256_or_si256(mantissa, _mm256_set1_epi64x(0x3FF0000000000000LL)));

  const __m256d big = _mm256_cmp_pd(m, set1(std::numbers::sqrt2), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, set1(0.5)), big);
  k = _mm256_add_epi64(k, _mm256_and_si256(_mm256_castpd_si256(big), _mm256_set1_epi64x(1)));
  const __m256d dk = int64_to_double(k);

  const __m256d f = _mm256_sub_pd(m, set1(1.0));
  const __m256d s = _mm256_div_pd(f, _mm256_add_pd(set1(2.0), f));
  const __m256d z = _mm256_mul_pd(s, s);
  const __m256d w = _mm256_mul_pd(z, z);
  __m256d t1 = _mm256_fmadd_pd(w, set1(1.531383769920937332e-01), set1(2.222219843214978396e-01));
  t1 = _mm256_fmadd_pd(w, t1, set1(3.999999999940941908e-01));
  t1 = _mm256_mul_pd(w, t1);
  __m256d t2 = _mm256_fmadd_pd(w, set1(1.479819860511658591e-01), set1(1.818357216161805012e-01));
  t2 = _mm256_fmadd_pd(w, t2, set1(2.857142874366239149e-01));
  t2 = _mm256_fmadd_pd(w, t2, set1(6.666666666666735130e-01));
  t2 = _mm256_mul_pd(z, t2);
  const __m256d r = _mm256_add_pd(t1, t2);
  const __m256d hfsq = _mm256_mul_pd(set1(0.5), _mm256_mul_pd(f, f));

  constexpr double ln2_hi = 6.93147180369123816490e-01;
  constexpr double ln2_lo = 1.90821492927058770002e-10;
  // k ln2_hi - ((hfsq - (s (hfsq + R) + k ln2_lo)) - f)
  const __m256d inner = _mm256_fmadd_pd(s, _mm256_add_pd(hfsq, r), _mm256_mul_pd(dk, set1(ln2_lo)));
  const __m256d tail = _mm256_sub_pd(_mm256_sub_pd(hfsq, inner), f);
  return _mm256_sub_pd(_mm256_mul_pd(dk, set1(ln2_hi)), tail);
}

inline __m256d clamp01(__m256d v) {
  return _mm256_min_pd(_mm256_max_pd(v, _mm256_setzero_pd()), set1(1.0));
}

// Same rounding as the scalar kernel: 1 - |r|^2 feeds square roots that are
// not Lipschitz at the surface of the Bloch ball.
inline __m256d norm2(__m256d x, __m256d y, __m256d z) {
  return _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(x, x), _mm256_mul_pd(y, y)),
                       _mm256_mul_pd(z, z));
}

// -(p log2 p + q log2 q) with p,q = (1 +- n)/2; q = 0 contributes 0.
inline __m256d binary_entropy_bits(__m256d n) {
  const __m256d up = _mm256_mul_pd(set1(0.5), _mm256_add_pd(set1(1.0), n));
  const __m256d down = _mm256_max_pd(_mm256_mul_pd(set1(0.5), _mm256_sub_pd(set1(1.0), n)),
                                     _mm256_setzero_pd());
  const __m256d tiny = set1(DBL_MIN);
  const __m256d lu = log_pd(_mm256_max_pd(up, tiny));
  const __m256d ld = log_pd(_mm256_max_pd(down, tiny));
  const __m256d s = _mm256_fmadd_pd(up, lu, _mm256_mul_pd(down, ld));
  return _mm256_mul_pd(s, set1(-1.0 / std::numbers::ln2));
}

struct Block {
  __m256d trace, bures, hellinger, jensen;
};

inline Block distances_block(__m256d x1, __m256d y1, __m256d z1, __m256d x2, __m256d y2,
                             __m256d z2) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = set1(1.0);
  const __m256d half = set1(0.5);

  const __m256d dx = _mm256_sub_pd(x1, x2);
  const __m256d dy = _mm256_sub_pd(y1, y2);
  const __m256d dz = _mm256_sub_pd(z1, z2);
  const __m256d d2 = norm2(dx, dy, dz);
  const __m256d n1sq = norm2(x1, y1, z1);
  const __m256d n2sq = norm2(x2, y2, z2);

  Block out;
  out.trace = _mm256_min_pd(_mm256_mul_pd(half, _mm256_sqrt_pd(d2)), one);

  const __m256d cx = _mm256_fmsub_pd(y1, dz, _mm256_mul_pd(z1, dy));
  const __m256d cy = _mm256_fmsub_pd(z1, dx, _mm256_mul_pd(x1, dz));
  const __m256d cz = _mm256_fmsub_pd(x1, dy, _mm256_mul_pd(y1, dx));
  const __m256d num = _mm256_max_pd(_mm256_sub_pd(d2, norm2(cx, cy, cz)), zero);
  const __m256d dot = _mm256_fmadd_pd(x1, x2, _mm256_fmadd_pd(y1, y2, _mm256_mul_pd(z1, z2)));
  const __m256d s = _mm256_sqrt_pd(_mm256_mul_pd(_mm256_max_pd(_mm256_sub_pd(one, n1sq), zero),
                                                 _mm256_max_pd(_mm256_sub_pd(one, n2sq), zero)));
  const __m256d den = _mm256_mul_pd(set1(2.0), _mm256_add_pd(_mm256_sub_pd(one, dot), s));
  const __m256d valid = _mm256_and_pd(_mm256_cmp_pd(num, zero, _CMP_GT_OQ),
                                      _mm256_cmp_pd(den, zero, _CMP_GT_OQ));
  const __m256d safe_den = _mm256_blendv_pd(one, den, valid);
  const __m256d one_minus_f =
      _mm256_and_pd(valid, _mm256_min_pd(_mm256_div_pd(num, safe_den), one));
  const __m256d root_f = _mm256_sqrt_pd(_mm256_sub_pd(one, one_minus_f));
  out.bures = _mm256_min_pd(
      _mm256_sqrt_pd(_mm256_div_pd(one_minus_f, _mm256_add_pd(one, root_f))), one);

  const __m256d n1 = _mm256_min_pd(_mm256_sqrt_pd(n1sq), one);
  const __m256d n2 = _mm256_min_pd(_mm256_sqrt_pd(n2sq), one);
  const __m256d sp1 = _mm256_sqrt_pd(_mm256_mul_pd(half, _mm256_add_pd(one, n1)));
  const __m256d sm1 = _mm256_sqrt_pd(_mm256_mul_pd(half, _mm256_sub_pd(one, n1)));
  const __m256d sp2 = _mm256_sqrt_pd(_mm256_mul_pd(half, _mm256_add_pd(one, n2)));
  const __m256d sm2 = _mm256_sqrt_pd(_mm256_mul_pd(half, _mm256_sub_pd(one, n2)));
  const __m256d sum1 = _mm256_add_pd(sp1, sm1);
  const __m256d sum2 = _mm256_add_pd(sp2, sm2);
  const __m256d g1 = _mm256_div_pd(half, sum1);
  const __m256d g2 = _mm256_div_pd(half, sum2);
  const __m256d da = _mm256_mul_pd(half, _mm256_sub_pd(sum1, sum2));
  // No FMA here: it would leave a rounding residue when both inputs coincide.
  const __m256d ex = _mm256_sub_pd(_mm256_mul_pd(g1, x1), _mm256_mul_pd(g2, x2));
  const __m256d ey = _mm256_sub_pd(_mm256_mul_pd(g1, y1), _mm256_mul_pd(g2, y2));
  const __m256d ez = _mm256_sub_pd(_mm256_mul_pd(g1, z1), _mm256_mul_pd(g2, z2));
  out.hellinger = _mm256_min_pd(_mm256_sqrt_pd(_mm256_fmadd_pd(da, da, norm2(ex, ey, ez))), one);

  const __m256d mx = _mm256_mul_pd(half, _mm256_add_pd(x1, x2));
  const __m256d my = _mm256_mul_pd(half, _mm256_add_pd(y1, y2));
  const __m256d mz = _mm256_mul_pd(half, _mm256_add_pd(z1, z2));
  const __m256d nm = _mm256_min_pd(_mm256_sqrt_pd(norm2(mx, my, mz)), one);
  const __m256d js = _mm256_sub_pd(
      binary_entropy_bits(nm),
      _mm256_mul_pd(half, _mm256_add_pd(binary_entropy_bits(n1), binary_entropy_bits(n2))));
  out.jensen = clamp01(_mm256_sqrt_pd(_mm256_max_pd(js, zero)));
  return out;
}

} // namespace

void qubit_distances(BlochView a, BlochView b, DistanceBuffers out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const Block blk = distances_block(_mm256_loadu_pd(a.x + i), _mm256_loadu_pd(a.y + i),
                                      _mm256_loadu_pd(a.z + i), _mm256_loadu_pd(b.x + i),
                                      _mm256_loadu_pd(b.y + i), _mm256_loadu_pd(b.z + i));
    _mm256_storeu_pd(out.trace + i, blk.trace);
    _mm256_storeu_pd(out.bures + i, blk.bures);
    _mm256_storeu_pd(out.hellinger + i, blk.hellinger);
    _mm256_storeu_pd(out.jensen + i, blk.jensen);
  }
  if (i == n) return;

  // Pad the tail with maximally mixed states so every lane runs the same code.
  alignas(32) double buf[6][kLanes] = {};
  const std::size_t rest = n - i;
  for (std::size_t j = 0; j < rest; ++j) {
    buf[0][j] = a.x[i + j];
    buf[1][j] = a.y[i + j];
    buf[2][j] = a.z[i + j];
    buf[3][j] = b.x[i + j];
    buf[4][j] = b.y[i + j];
    buf[5][j] = b.z[i + j];
  }
  const Block blk = distances_block(_mm256_load_pd(buf[0]), _mm256_load_pd(buf[1]),
                                    _mm256_load_pd(buf[2]), _mm256_load_pd(buf[3]),
                                    _mm256_load_pd(buf[4]), _mm256_load_pd(buf[5]));
  alignas(32) double res[4][kLanes];
  _mm256_store_pd(res[0], blk.trace);
  _mm256_store_pd(res[1], blk.bures);
  _mm256_store_pd(res[2], blk.hellinger);
  _mm256_store_pd(res[3], blk.jensen);
  for (std::size_t j = 0; j < rest; ++j) {
    out.trace[i + j] = res[0][j];
    out.bures[i + j] = res[1][j];
    out.hellinger[i + j] = res[2][j];
    out.jensen[i + j] = res[3][j];
  }
}

void complex_combination(const Complex* coeffs, const SeriesView* series, std::size_t terms,
                         double* out_re, double* out_im, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    for (std::size_t j = 0; j < terms; ++j) {
      const __m256d cr = set1(coeffs[j].real());
      const __m256d ci = set1(coeffs[j].imag());
      const __m256d sr = _mm256_loadu_pd(series[j].re + i);
      const __m256d si = _mm256_loadu_pd(series[j].im + i);
      acc_re = _mm256_fmadd_pd(cr, sr, _mm256_fnmadd_pd(ci, si, acc_re));
      acc_im = _mm256_fmadd_pd(cr, si, _mm256_fmadd_pd(ci, sr, acc_im));
    }
    _mm256_storeu_pd(out_re + i, acc_re);
    _mm256_storeu_pd(out_im + i, acc_im);
  }
  for (; i < n; ++i) {
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < terms; ++j) {
      const double cr = coeffs[j].real(), ci = coeffs[j].imag();
      re = std::fma(cr, series[j].re[i], std::fma(-ci, series[j].im[i], re));
      im = std::fma(cr, series[j].im[i], std::fma(ci, series[j].re[i], im));
    }
    out_re[i] = re;
    out_im[i] = im;
  }
}

void log(const double* x, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    _mm256_storeu_pd(out + i, log_pd(_mm256_loadu_pd(x + i)));
  }
  if (i == n) return;
  alignas(32) double buf[kLanes] = {1.0, 1.0, 1.0, 1.0};
  std::copy(x + i, x + n, buf);
  alignas(32) double res[kLanes];
  _mm256_store_pd(res, log_pd(_mm256_load_pd(buf)));
  std::copy(res, res + (n - i), out + i);
}

} // namespace corrwitness::simd::avx2
