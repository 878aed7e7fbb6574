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

#include "corrwitness/experiments/engine.hpp"

#include <algorithm>
#include <cmath>

#include "corrwitness/core/errors.hpp"

namespace corrwitness::experiments {

namespace {

std::size_t measure_index(distance::MeasureKind kind) {
  for (std::size_t k = 0; k < distance::kAllMeasures.size(); ++k) {
    if (distance::kAllMeasures[k] == kind) return k;
  }
  throw InvalidInput("unknown measure");
}

} // namespace

TimeTable::TimeTable(const ModelParams& model, std::span<const double> times,
                     std::size_t edge_points)
    : model_(model), times_(times.begin(), times.end()) {
  if (times_.empty()) throw InvalidInput("TimeTable: empty time grid");
  if (edge_points > 0) {
    const auto window = [&](double start, double width) {
      if (!(width > 0.0)) return;
      for (std::size_t k = 1; k <= edge_points; ++k) {
        probes_.push_back(start + width * static_cast<double>(k) /
                                      static_cast<double>(edge_points + 1));
      }
    };
    const auto first = std::find_if(times_.begin(), times_.end(), [](double t) { return t > 0.0; });
    if (first != times_.end()) window(0.0, *first);
    if (times_.size() >= 2) {
      const double last = times_.back();
      window(last, last - times_[times_.size() - 2]);
    }
  }
  const std::size_t m = points();
  const std::size_t g = grid_points();
  auto at = [&](std::size_t i) {
    return i == 0 ? 0.0 : i < g ? times_[i - 1] : probes_[i - g];
  };

  if (const auto* deph = std::get_if<dephasing::DephasingParams>(&model_)) {
    deph->validate();
    re_.assign(dephasing::kCoherenceTerms, std::vector<double>(m));
    im_.assign(dephasing::kCoherenceTerms, std::vector<double>(m));
    for (std::size_t i = 0; i < m; ++i) {
      const auto s = dephasing::coherence_series(*deph, at(i));
      for (std::size_t k = 0; k < dephasing::kCoherenceTerms; ++k) {
        re_[k][i] = s[k].real();
        im_[k][i] = s[k].imag();
      }
    }
    return;
  }

  const auto& star = std::get<spinstar::SpinStarParams>(model_);
  const EigenSystem eig = hermitian_eigs(spinstar::hamiltonian_subspace(star));
  eigenvectors_ = eig.vectors;
  const std::size_t d = spinstar::kSubspaceDim;
  re_.assign(d, std::vector<double>(m));
  im_.assign(d, std::vector<double>(m));
  for (std::size_t j = 0; j < d; ++j) {
    const double w = eig.values[static_cast<Eigen::Index>(j)];
    for (std::size_t i = 0; i < m; ++i) {
      const Complex e = std::polar(1.0, -w * at(i));
      re_[j][i] = e.real();
      im_[j][i] = e.imag();
    }
  }
}

DeltaEngine::DeltaEngine(const TimeTable& table, const simd::KernelTable& kernels)
    : table_(table), kernels_(kernels), n_(table.points()) {
  for (Bloch* b : {&corr_, &ref_}) {
    b->x.resize(n_);
    b->y.resize(n_);
    b->z.resize(n_);
  }
  re_.resize(n_);
  im_.resize(n_);
  re2_.resize(n_);
  im2_.resize(n_);
  for (auto& v : raw_) v.resize(n_);
  for (auto& v : delta_) v.resize(table.grid_points() - 1);
  for (auto& v : probe_delta_) v.resize(n_ - table.grid_points());
}

void DeltaEngine::fill_bloch(const models::CorrelatedStateSpec& spec, Bloch& out) {
  std::vector<simd::SeriesView> series(table_.terms());
  for (std::size_t k = 0; k < series.size(); ++k) series[k] = table_.series(k);

  if (const auto* deph = std::get_if<dephasing::DephasingParams>(&table_.model())) {
    const auto w = dephasing::coherence_weights(*deph, spec);
    kernels_.complex_combination(w.data(), series.data(), w.size(), re_.data(), im_.data(), n_);
    const double z = 2.0 * dephasing::population_e(*deph, spec) - 1.0;
    for (std::size_t i = 0; i < n_; ++i) {
      out.x[i] = 2.0 * re_[i];
      out.y[i] = -2.0 * im_[i];
      out.z[i] = z;
    }
    return;
  }

  // psi_k(t) = sum_j V_kj (V^dagger v)_j e^{-i w_j t}.
  const CMatrix& v = table_.eigenvectors();
  const CVector c = v.adjoint() * spinstar::initial_subspace_state(spec);
  const std::size_t d = spinstar::kSubspaceDim;
  std::array<Complex, spinstar::kSubspaceDim> coeffs{};
  auto component = [&](std::size_t k, double* re, double* im) {
    for (std::size_t j = 0; j < d; ++j) {
      coeffs[j] = v(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) *
                  c[static_cast<Eigen::Index>(j)];
    }
    kernels_.complex_combination(coeffs.data(), series.data(), d, re, im, n_);
  };
  // z = p_e - p_g; x - i y = 2 (psi0 psi1* + psi2 psi3*).
  std::fill(out.x.begin(), out.x.end(), 0.0);
  std::fill(out.y.begin(), out.y.end(), 0.0);
  std::fill(out.z.begin(), out.z.end(), 0.0);
  for (std::size_t pair = 0; pair < 2; ++pair) {
    component(2 * pair, re_.data(), im_.data());
    component(2 * pair + 1, re2_.data(), im2_.data());
    for (std::size_t i = 0; i < n_; ++i) {
      const double er = re_[i], ei = im_[i], gr = re2_[i], gi = im2_[i];
      out.x[i] += 2.0 * (er * gr + ei * gi);
      out.y[i] += -2.0 * (ei * gr - er * gi);
      out.z[i] += (er * er + ei * ei) - (gr * gr + gi * gi);
    }
  }
  component(spinstar::kEChiMinusMinus, re_.data(), im_.data());
  for (std::size_t i = 0; i < n_; ++i) out.z[i] += re_[i] * re_[i] + im_[i] * im_[i];
}

void DeltaEngine::compute(const models::CorrelatedStateSpec& spec) {
  spec.validate();
  fill_bloch(spec, corr_);
  fill_bloch(spec.with_lambda(0.0), ref_);
  kernels_.qubit_distances({corr_.x.data(), corr_.y.data(), corr_.z.data()},
                           {ref_.x.data(), ref_.y.data(), ref_.z.data()},
                           {raw_[0].data(), raw_[1].data(), raw_[2].data(), raw_[3].data()}, n_);
  for (std::size_t k = 0; k < raw_.size(); ++k) {
    const double initial = raw_[k][0];
    const std::size_t g = table_.grid_points();
    for (std::size_t i = 1; i < g; ++i) delta_[k][i - 1] = raw_[k][i] - initial;
    for (std::size_t i = g; i < n_; ++i) probe_delta_[k][i - g] = raw_[k][i] - initial;
  }
}

std::span<const double> DeltaEngine::delta(distance::MeasureKind kind) const {
  return delta_[measure_index(kind)];
}

std::span<const double> DeltaEngine::probe_delta(distance::MeasureKind kind) const {
  return probe_delta_[measure_index(kind)];
}

unsigned DeltaEngine::increase_mask(double tol) const {
  const auto above = [tol](double v) { return v > tol; };
  unsigned mask = 0;
  for (std::size_t k = 0; k < delta_.size(); ++k) {
    if (std::any_of(delta_[k].begin(), delta_[k].end(), above) ||
        std::any_of(probe_delta_[k].begin(), probe_delta_[k].end(), above)) {
      mask |= 1u << k;
    }
  }
  return mask;
}

std::array<double, 3> DeltaEngine::bloch(bool reference, std::size_t i) const {
  const Bloch& b = reference ? ref_ : corr_;
  return {b.x[i], b.y[i], b.z[i]};
}

} // namespace corrwitness::experiments
