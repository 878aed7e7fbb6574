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

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace corrwitness {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Matrix2c = Eigen::Matrix2cd;

namespace tolerance {
inline constexpr double kNorm = 1e-12;
inline constexpr double kHermitian = 1e-12;
inline constexpr double kTrace = 1e-12;
/// Eigenvalues in [-kEigenClamp, 0) are roundoff and clamp to zero.
inline constexpr double kEigenClamp = 1e-10;
/// Outer square-root arguments in [-kRadicand, 0) clamp to zero.
inline constexpr double kRadicand = 1e-12;
} // namespace tolerance

/// Normalized pure state of a finite-dimensional Hilbert space.
class StateVector {
public:
  explicit StateVector(CVector amplitudes);

  /// Normalizes before validating; rejects the zero vector.
  static StateVector normalized(CVector amplitudes);

  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const CVector& amplitudes() const { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }

private:
  CVector amplitudes_;
};

/// Positive-semidefinite matrix of unit trace. All invariants are
/// checked on construction.
class DensityMatrix {
public:
  explicit DensityMatrix(CMatrix entries);

  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(std::size_t dim);
  static DensityMatrix diagonal(const RVector& populations);

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  const CMatrix& entries() const { return entries_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  friend bool operator==(const DensityMatrix& a, const DensityMatrix& b) {
    return a.entries_.rows() == b.entries_.rows() && a.entries_ == b.entries_;
  }

private:
  CMatrix entries_;
};

class HermitianOperator {
public:
  explicit HermitianOperator(CMatrix entries);

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  const CMatrix& entries() const { return entries_; }

private:
  CMatrix entries_;
};

struct Bipartition {
  std::size_t dim_system = 2;
  std::size_t dim_environment = 1;

  std::size_t total() const { return dim_system * dim_environment; }
};

enum class Keep { System, Environment };

} // namespace corrwitness
