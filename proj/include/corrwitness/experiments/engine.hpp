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
#include <span>
#include <variant>
#include <vector>

#include "corrwitness/distance/measures.hpp"
#include "corrwitness/models/dephasing.hpp"
#include "corrwitness/models/spin_star.hpp"
#include "corrwitness/simd/kernels.hpp"

namespace corrwitness::experiments {

using ModelParams = std::variant<dephasing::DephasingParams, spinstar::SpinStarParams>;

/// Time-only factors of a model tabulated on the caller's grid with t = 0
/// prepended and the edge probes appended. Immutable once built; shared
/// read-only between workers.
///
/// Edge probes are `edge_points` uniformly spaced interior points of
/// (0, t_first] and of (t_last, t_last + h), h the last grid spacing, each
/// window present only when its width is positive.
class TimeTable {
public:
  TimeTable(const ModelParams& model, std::span<const double> times,
            std::size_t edge_points = 0);

  const ModelParams& model() const { return model_; }
  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& probe_times() const { return probes_; }
  /// Grid points plus probes after the leading t = 0.
  std::size_t points() const { return times_.size() + 1 + probes_.size(); }
  /// Leading t = 0 plus grid.
  std::size_t grid_points() const { return times_.size() + 1; }
  std::size_t terms() const { return re_.size(); }
  simd::SeriesView series(std::size_t term) const { return {re_[term].data(), im_[term].data()}; }

  /// Spin star only: eigenvectors of the 5x5 subspace Hamiltonian.
  const CMatrix& eigenvectors() const { return eigenvectors_; }

private:
  ModelParams model_;
  std::vector<double> times_;
  std::vector<double> probes_;
  std::vector<std::vector<double>> re_;
  std::vector<std::vector<double>> im_;
  CMatrix eigenvectors_;
};

/// Reusable scratch space that turns one correlated spec into the four
/// Delta D_k series against its lambda = 0 partner in a single kernel pass.
/// One instance per worker thread.
class DeltaEngine {
public:
  explicit DeltaEngine(const TimeTable& table,
                       const simd::KernelTable& kernels = simd::active_kernels());

  /// Fills delta(k)[i] = D_k(t_i) - D_k(0) for every grid time t_i, and
  /// probe_delta(k) likewise for the edge probes.
  void compute(const models::CorrelatedStateSpec& spec);

  std::span<const double> delta(distance::MeasureKind kind) const;
  std::span<const double> probe_delta(distance::MeasureKind kind) const;
  /// Bitmask over measures (bit = index in kAllMeasures) with some grid or
  /// probe delta > tol.
  unsigned increase_mask(double tol) const;

  /// Bloch vector (x, y, z) of the correlated or reference state at grid point i
  /// (i = 0 is t = 0).
  std::array<double, 3> bloch(bool reference, std::size_t i) const;

private:
  struct Bloch {
    std::vector<double> x, y, z;
  };
  void fill_bloch(const models::CorrelatedStateSpec& spec, Bloch& out);

  const TimeTable& table_;
  const simd::KernelTable& kernels_;
  std::size_t n_;
  Bloch corr_, ref_;
  std::vector<double> re_, im_, re2_, im2_;
  std::array<std::vector<double>, 4> raw_;
  std::array<std::vector<double>, 4> delta_;
  std::array<std::vector<double>, 4> probe_delta_;
};

} // namespace corrwitness::experiments
