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

#include <array>
#include <optional>
#include <string_view>

#include "corrwitness/core/types.hpp"

namespace corrwitness::distance {

enum class MeasureKind { Trace, Bures, Hellinger, JensenShannon };

inline constexpr std::array<MeasureKind, 4> kAllMeasures = {
    MeasureKind::Trace, MeasureKind::Bures, MeasureKind::Hellinger, MeasureKind::JensenShannon};

/// Single-letter tag used in CSV headers: T, B, H, J.
std::string_view short_name(MeasureKind kind);
std::string_view long_name(MeasureKind kind);
std::optional<MeasureKind> parse_measure(std::string_view text);

/// Entropy unit for the Jensen-Shannon divergence. Bits normalize the
/// divergence to [0, 1]; Nats cap it at sqrt(ln 2).
enum class EntropyUnit { Bits, Nats };

double trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2);
double bures(const DensityMatrix& rho1, const DensityMatrix& rho2);
double hellinger(const DensityMatrix& rho1, const DensityMatrix& rho2);
double jensen_shannon(const DensityMatrix& rho1, const DensityMatrix& rho2,
                      EntropyUnit unit = EntropyUnit::Bits);

double distance(MeasureKind kind, const DensityMatrix& rho1, const DensityMatrix& rho2);

/// D(rho_t_corr, rho_t_ref) - D(rho_0_corr, rho_0_ref).
double delta_distance(MeasureKind kind, const DensityMatrix& rho_t_corr,
                      const DensityMatrix& rho_t_ref, const DensityMatrix& rho_0_corr,
                      const DensityMatrix& rho_0_ref);

/// sqrt(1-sqrt R) + sqrt(1-sqrt S) - sqrt(1-sqrt(RS)) for R, S in [0, 1].
double q_function(double r, double s);

/// Right-hand side of the trace-distance witness inequality:
///   sum_k D_T(rho_SE^k, rho_S^k (x) rho_E^k) + D_T(rho_E^1, rho_E^2).
double witness_bound_rhs(const DensityMatrix& rho_se_1, const DensityMatrix& rho_se_2,
                         const Bipartition& part);

/// sqrt(x) with x in [-1e-12, 0) treated as zero.
double guarded_sqrt(double x);

} // namespace corrwitness::distance
