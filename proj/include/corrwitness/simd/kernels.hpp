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

// Batched qubit kernels used by the Monte Carlo sweeps. Every kernel has a
// portable scalar reference and, where the CPU supports it, an AVX2/FMA
// variant; the active table is chosen once at runtime and can be forced with
// CORRWITNESS_SIMD=scalar|avx2.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "corrwitness/core/types.hpp"

namespace corrwitness::simd {

enum class Isa { Scalar, Avx2 };

/// Structure-of-arrays Bloch vectors; rho = (1 + x sx + y sy + z sz) / 2.
struct BlochView {
  const double* x;
  const double* y;
  const double* z;
};

struct DistanceBuffers {
  double* trace;
  double* bures;
  double* hellinger;
  double* jensen;
};

struct SeriesView {
  const double* re;
  const double* im;
};

/// Writes the four normalized distances (Jensen-Shannon in bits) between
/// a[i] and b[i] for i < n.
using QubitDistancesFn = void (*)(BlochView a, BlochView b, DistanceBuffers out, std::size_t n);

/// out[i] = sum_j coeffs[j] * series[j][i] over complex numbers.
using ComplexCombinationFn = void (*)(const Complex* coeffs, const SeriesView* series,
                                      std::size_t terms, double* out_re, double* out_im,
                                      std::size_t n);

/// Elementwise natural logarithm for positive normal inputs.
using LogFn = void (*)(const double* x, double* out, std::size_t n);

struct KernelTable {
  Isa isa;
  QubitDistancesFn qubit_distances;
  ComplexCombinationFn complex_combination;
  LogFn log;
};

namespace scalar {
void qubit_distances(BlochView a, BlochView b, DistanceBuffers out, std::size_t n);
void complex_combination(const Complex* coeffs, const SeriesView* series, std::size_t terms,
                         double* out_re, double* out_im, std::size_t n);
void log(const double* x, double* out, std::size_t n);
} // namespace scalar

#if defined(CORRWITNESS_WITH_AVX2)
namespace avx2 {
void qubit_distances(BlochView a, BlochView b, DistanceBuffers out, std::size_t n);
void complex_combination(const Complex* coeffs, const SeriesView* series, std::size_t terms,
                         double* out_re, double* out_im, std::size_t n);
void log(const double* x, double* out, std::size_t n);
} // namespace avx2
#endif

std::string_view isa_name(Isa isa);
std::optional<Isa> parse_isa(std::string_view name);

/// Compiled in and supported by the running CPU.
bool isa_available(Isa isa);

/// Best available ISA unless CORRWITNESS_SIMD names another available one.
Isa active_isa();

/// Throws InvalidInput if `isa` is not available.
void set_active_isa(Isa isa);

const KernelTable& kernel_table(Isa isa);
const KernelTable& active_kernels();

} // namespace corrwitness::simd
