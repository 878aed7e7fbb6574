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

#include "corrwitness/distance/measures.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "corrwitness/core/errors.hpp"
#include "corrwitness/core/linalg.hpp"

namespace corrwitness::distance {

namespace {

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw InvalidInput(std::string(what) + ": dimension mismatch");
  }
}

} // namespace

std::string_view short_name(MeasureKind kind) {
  switch (kind) {
  case MeasureKind::Trace: return "T";
  case MeasureKind::Bures: return "B";
  case MeasureKind::Hellinger: return "H";
  case MeasureKind::JensenShannon: return "J";
  }
  return "?";
}

std::string_view long_name(MeasureKind kind) {
  switch (kind) {
  case MeasureKind::Trace: return "trace";
  case MeasureKind::Bures: return "bures";
  case MeasureKind::Hellinger: return "hellinger";
  case MeasureKind::JensenShannon: return "jensen-shannon";
  }
  return "?";
}

std::optional<MeasureKind> parse_measure(std::string_view text) {
  for (MeasureKind k : kAllMeasures) {
    if (text == short_name(k) || text == long_name(k)) return k;
  }
  return std::nullopt;
}

double guarded_sqrt(double x) {
  if (x < 0.0) {
    if (x < -tolerance::kRadicand) {
      throw ConsistencyError("negative radicand " + std::to_string(x));
    }
    return 0.0;
  }
  return std::sqrt(x);
}

double trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  require_same_dim(rho1, rho2, "trace_distance");
  if (rho1 == rho2) return 0.0;
  const RVector w = hermitian_eigs(CMatrix(rho1.entries() - rho2.entries())).values;
  return std::min(1.0, 0.5 * w.cwiseAbs().sum());
}

double bures(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  require_same_dim(rho1, rho2, "bures");
  // Exact zero at coinciding states.
  if (rho1 == rho2) return 0.0;
  const double root_f = std::sqrt(fidelity(rho1, rho2));
  return std::min(1.0, guarded_sqrt(1.0 - root_f));
}

double hellinger(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  require_same_dim(rho1, rho2, "hellinger");
  if (rho1 == rho2) return 0.0;
  // 1 - Tr(sqrt(rho2) sqrt(rho1)) = ||sqrt(rho1) - sqrt(rho2)||_F^2 / 2 for unit traces.
  const CMatrix diff = psd_sqrt(rho1) - psd_sqrt(rho2);
  return std::min(1.0, std::sqrt(0.5 * diff.squaredNorm()));
}

double jensen_shannon(const DensityMatrix& rho1, const DensityMatrix& rho2, EntropyUnit unit) {
  require_same_dim(rho1, rho2, "jensen_shannon");
  if (rho1 == rho2) return 0.0;
  const double base = unit == EntropyUnit::Bits ? 2.0 : kNaturalLog;
  const DensityMatrix mid(0.5 * (rho1.entries() + rho2.entries()));
  const double js = von_neumann_entropy(mid, base) -
                    0.5 * (von_neumann_entropy(rho1, base) + von_neumann_entropy(rho2, base));
  const double cap = unit == EntropyUnit::Bits ? 1.0 : std::sqrt(std::numbers::ln2);
  return std::min(cap, guarded_sqrt(js));
}

double distance(MeasureKind kind, const DensityMatrix& rho1, const DensityMatrix& rho2) {
  switch (kind) {
  case MeasureKind::Trace: return trace_distance(rho1, rho2);
  case MeasureKind::Bures: return bures(rho1, rho2);
  case MeasureKind::Hellinger: return hellinger(rho1, rho2);
  case MeasureKind::JensenShannon: return jensen_shannon(rho1, rho2);
  }
  throw InvalidInput("distance: unknown measure");
}

double delta_distance(MeasureKind kind, const DensityMatrix& rho_t_corr,
                      const DensityMatrix& rho_t_ref, const DensityMatrix& rho_0_corr,
                      const DensityMatrix& rho_0_ref) {
  if (rho_t_corr.dim() != rho_t_ref.dim() || rho_t_corr.dim() != rho_0_corr.dim() ||
      rho_t_corr.dim() != rho_0_ref.dim()) {
    throw InvalidInput("delta_distance: dimension mismatch");
  }
  return distance(kind, rho_t_corr, rho_t_ref) - distance(kind, rho_0_corr, rho_0_ref);
}

double q_function(double r, double s) {
  if (!(r >= 0.0 && r <= 1.0 && s >= 0.0 && s <= 1.0)) {
    throw InvalidInput("q_function: arguments must lie in [0, 1]");
  }
  return std::sqrt(1.0 - std::sqrt(r)) + std::sqrt(1.0 - std::sqrt(s)) -
         std::sqrt(1.0 - std::sqrt(r * s));
}

double witness_bound_rhs(const DensityMatrix& rho_se_1, const DensityMatrix& rho_se_2,
                         const Bipartition& part) {
  if (rho_se_1.dim() != part.total() || rho_se_2.dim() != part.total()) {
    throw InvalidInput("witness_bound_rhs: bipartition does not match the states");
  }
  double rhs = 0.0;
  DensityMatrix env_1 = partial_trace(rho_se_1, part, Keep::Environment);
  DensityMatrix env_2 = partial_trace(rho_se_2, part, Keep::Environment);
  for (const DensityMatrix* rho : {&rho_se_1, &rho_se_2}) {
    const DensityMatrix sys = partial_trace(*rho, part, Keep::System);
    const DensityMatrix& env = rho == &rho_se_1 ? env_1 : env_2;
    rhs += trace_distance(*rho, tensor_product(sys, env));
  }
  return rhs + trace_distance(env_1, env_2);
}

} // namespace corrwitness::distance
