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

#include "corrwitness/core/linalg.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "corrwitness/core/errors.hpp"

namespace corrwitness {

namespace {

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw InvalidInput(std::string(what) + ": expected a non-empty square matrix");
  }
}

double hermitian_tolerance(const CMatrix& a) {
  return tolerance::kHermitian * std::max(1.0, a.cwiseAbs().maxCoeff());
}

RVector clamped_spectrum(const RVector& values) {
  RVector out = values;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (out[i] < 0.0) {
      if (out[i] < -tolerance::kEigenClamp) {
        throw NotPositiveSemidefinite("eigenvalue " + std::to_string(out[i]) +
                                      " below -1e-10");
      }
      out[i] = 0.0;
    }
  }
  return out;
}

} // namespace

StateVector::StateVector(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) {
    throw InvalidInput("StateVector: empty amplitude vector");
  }
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > tolerance::kNorm) {
    throw InvalidInput("StateVector: squared norm " + std::to_string(norm2) + " differs from 1");
  }
}

StateVector StateVector::normalized(CVector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw InvalidInput("StateVector::normalized: zero or non-finite vector");
  }
  amplitudes /= norm;
  return StateVector(std::move(amplitudes));
}

DensityMatrix::DensityMatrix(CMatrix entries) : entries_(std::move(entries)) {
  require_square(entries_, "DensityMatrix");
  const double defect = hermiticity_defect(entries_);
  if (defect > tolerance::kHermitian) {
    throw InvalidInput("DensityMatrix: not Hermitian (defect " + std::to_string(defect) + ")");
  }
  const Complex tr = entries_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tolerance::kTrace) {
    throw InvalidInput("DensityMatrix: trace differs from 1");
  }
  const CMatrix sym = 0.5 * (entries_ + entries_.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -tolerance::kEigenClamp) {
    throw NotPositiveSemidefinite("DensityMatrix: negative eigenvalue " +
                                  std::to_string(solver.eigenvalues().minCoeff()));
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  const CVector& v = psi.amplitudes();
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return DensityMatrix(CMatrix::Identity(n, n) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::diagonal(const RVector& populations) {
  return DensityMatrix(populations.cast<Complex>().asDiagonal());
}

HermitianOperator::HermitianOperator(CMatrix entries) : entries_(std::move(entries)) {
  require_square(entries_, "HermitianOperator");
  if (hermiticity_defect(entries_) > hermitian_tolerance(entries_)) {
    throw InvalidInput("HermitianOperator: matrix is not Hermitian");
  }
}

double hermiticity_defect(const CMatrix& a) {
  if (a.rows() != a.cols()) {
    throw InvalidInput("hermiticity_defect: matrix is not square");
  }
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

EigenSystem hermitian_eigs(const CMatrix& a) {
  require_square(a, "hermitian_eigs");
  if (hermiticity_defect(a) > hermitian_tolerance(a)) {
    throw InvalidInput("hermitian_eigs: input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (a + a.adjoint()));
  if (solver.info() != Eigen::Success) {
    throw ConsistencyError("hermitian_eigs: eigensolver did not converge");
  }
  // Eigen sorts ascending.
  const Eigen::Index n = a.rows();
  EigenSystem out{RVector(n), CMatrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values[i] = solver.eigenvalues()[n - 1 - i];
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

EigenSystem hermitian_eigs(const HermitianOperator& a) { return hermitian_eigs(a.entries()); }

EigenSystem hermitian_eigs(const DensityMatrix& rho) { return hermitian_eigs(rho.entries()); }

CMatrix psd_sqrt(const CMatrix& hermitian_psd) {
  const EigenSystem eig = hermitian_eigs(hermitian_psd);
  const RVector roots = clamped_spectrum(eig.values).cwiseSqrt();
  return eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

CMatrix psd_sqrt(const DensityMatrix& rho) { return psd_sqrt(rho.entries()); }

double von_neumann_entropy(const DensityMatrix& rho, double log_base) {
  if (!(log_base > 1.0)) {
    throw InvalidInput("von_neumann_entropy: log base must exceed 1");
  }
  const RVector w = clamped_spectrum(hermitian_eigs(rho).values);
  double s = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w[i] > 0.0) {
      s -= w[i] * std::log(w[i]);
    }
  }
  return std::max(0.0, s / std::log(log_base));
}

double purity(const DensityMatrix& rho) {
  // Tr rho^2 = sum |rho_ij|^2 for Hermitian rho.
  return rho.entries().squaredNorm();
}

DensityMatrix partial_trace(const StateVector& psi, const Bipartition& part, Keep keep) {
  if (part.dim_system == 0 || part.dim_environment == 0 || part.total() != psi.dim()) {
    throw InvalidInput("partial_trace: bipartition does not match the state dimension");
  }
  const auto ds = static_cast<Eigen::Index>(part.dim_system);
  const auto de = static_cast<Eigen::Index>(part.dim_environment);
  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMajor> m(psi.amplitudes().data(), ds, de);
  CMatrix reduced = keep == Keep::System ? CMatrix(m * m.adjoint())
                                         : CMatrix(m.transpose() * m.conjugate());
  return DensityMatrix(std::move(reduced));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const Bipartition& part, Keep keep) {
  if (part.dim_system == 0 || part.dim_environment == 0 || part.total() != rho.dim()) {
    throw InvalidInput("partial_trace: bipartition does not match the state dimension");
  }
  const auto ds = static_cast<Eigen::Index>(part.dim_system);
  const auto de = static_cast<Eigen::Index>(part.dim_environment);
  const CMatrix& r = rho.entries();
  if (keep == Keep::System) {
    CMatrix out = CMatrix::Zero(ds, ds);
    for (Eigen::Index i = 0; i < ds; ++i)
      for (Eigen::Index j = 0; j < ds; ++j)
        for (Eigen::Index e = 0; e < de; ++e) out(i, j) += r(i * de + e, j * de + e);
    return DensityMatrix(std::move(out));
  }
  CMatrix out = CMatrix::Zero(de, de);
  for (Eigen::Index a = 0; a < de; ++a)
    for (Eigen::Index b = 0; b < de; ++b)
      for (Eigen::Index s = 0; s < ds; ++s) out(a, b) += r(s * de + a, s * de + b);
  return DensityMatrix(std::move(out));
}

namespace {

/// Square root with eigenvalues below 8 d eps lambda_max set to zero, the
/// numerical rank of a state after rounding.
CMatrix rank_truncated_sqrt(const DensityMatrix& rho) {
  const EigenSystem eig = hermitian_eigs(rho.entries());
  RVector w = clamped_spectrum(eig.values);
  const double floor = 8.0 * static_cast<double>(w.size()) *
                       std::numeric_limits<double>::epsilon() * w.maxCoeff();
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w[i] <= floor) w[i] = 0.0;
  }
  return eig.vectors * w.cwiseSqrt().cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

} // namespace

double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.dim() != rho2.dim()) {
    throw InvalidInput("fidelity: dimension mismatch");
  }
  if (rho1 == rho2) {
    return 1.0;
  }
  const CMatrix product = rank_truncated_sqrt(rho2) * rank_truncated_sqrt(rho1);
  Eigen::JacobiSVD<CMatrix> svd(product);
  const double root = svd.singularValues().sum();
  return std::clamp(root * root, 0.0, 1.0);
}

double concurrence_pure(const StateVector& psi, const Bipartition& part) {
  if (part.dim_system != 2) {
    throw InvalidInput("concurrence_pure: system must be a qubit");
  }
  const double p = purity(partial_trace(psi, part, Keep::System));
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - p)));
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  const CMatrix& x = a.entries();
  const CMatrix& y = b.entries();
  CMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
  return DensityMatrix(std::move(out));
}

Propagator::Propagator(const HermitianOperator& h) : eigen_(hermitian_eigs(h)) {}

CVector Propagator::evolve(const CVector& psi, double t) const {
  if (psi.size() != eigen_.values.size()) {
    throw InvalidInput("Propagator::evolve: dimension mismatch");
  }
  CVector coeffs = eigen_.vectors.adjoint() * psi;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    coeffs[i] *= std::polar(1.0, -eigen_.values[i] * t);
  }
  return eigen_.vectors * coeffs;
}

StateVector Propagator::evolve(const StateVector& psi, double t) const {
  return StateVector(evolve(psi.amplitudes(), t));
}

StateVector evolve_unitary(const StateVector& psi, const HermitianOperator& h, double t) {
  if (psi.dim() != h.dim()) {
    throw InvalidInput("evolve_unitary: dimension mismatch");
  }
  if (t == 0.0) {
    return psi;
  }
  return Propagator(h).evolve(psi, t);
}

} // namespace corrwitness
