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

#include <atomic>
#include <cstdlib>
#include <string>

#include "corrwitness/core/errors.hpp"
#include "corrwitness/simd/kernels.hpp"

namespace corrwitness::simd {

namespace {

constexpr KernelTable kScalarTable{Isa::Scalar, scalar::qubit_distances,
                                   scalar::complex_combination, scalar::log};
#if defined(CORRWITNESS_WITH_AVX2)
constexpr KernelTable kAvx2Table{Isa::Avx2, avx2::qubit_distances, avx2::complex_combination,
                                 avx2::log};
#endif

bool cpu_has_avx2() {
#if defined(CORRWITNESS_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect_isa() {
  if (const char* env = std::getenv("CORRWITNESS_SIMD")) {
    if (auto requested = parse_isa(env); requested && isa_available(*requested)) {
      return *requested;
    }
  }
  return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<int>& active_slot() {
  static std::atomic<int> slot{static_cast<int>(detect_isa())};
  return slot;
}

} // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
  case Isa::Scalar: return "scalar";
  case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

std::optional<Isa> parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::Scalar;
  if (name == "avx2") return Isa::Avx2;
  return std::nullopt;
}

bool isa_available(Isa isa) {
  switch (isa) {
  case Isa::Scalar: return true;
  case Isa::Avx2: {
    static const bool has = cpu_has_avx2();
    return has;
  }
  }
  return false;
}

Isa active_isa() { return static_cast<Isa>(active_slot().load(std::memory_order_relaxed)); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw InvalidInput("SIMD variant '" + std::string(isa_name(isa)) + "' is not available");
  }
  active_slot().store(static_cast<int>(isa), std::memory_order_relaxed);
}

const KernelTable& kernel_table(Isa isa) {
  if (!isa_available(isa)) {
    throw InvalidInput("SIMD variant '" + std::string(isa_name(isa)) + "' is not available");
  }
#if defined(CORRWITNESS_WITH_AVX2)
  if (isa == Isa::Avx2) return kAvx2Table;
#endif
  return kScalarTable;
}

const KernelTable& active_kernels() { return kernel_table(active_isa()); }

} // namespace corrwitness::simd
