// Copyright 2026 The qdarwin Authors
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

#include "qdarwin/complex_matrix.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "qdarwin/error.hpp"
#include "qdarwin/linalg.hpp"
#include "qdarwin/simd/kernels.hpp"

namespace qdarwin {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
  if (dim == 0) throw InvalidArgument("ComplexMatrix: dim must be >= 1");
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), data_(std::move(entries)) {
  if (dim == 0) throw InvalidArgument("ComplexMatrix: dim must be >= 1");
  if (data_.size() != dim * dim) {
    throw InvalidArgument("ComplexMatrix: expected " + std::to_string(dim * dim) + " entries, got " +
                          std::to_string(data_.size()));
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : ComplexMatrix(rows.size()) {
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != dim_) throw InvalidArgument("ComplexMatrix: ragged initializer");
    std::size_t j = 0;
    for (const auto& v : row) (*this)(i, j++) = v;
    ++i;
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::hermiticity_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return worst;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (other.dim_ != dim_) throw InvalidArgument("ComplexMatrix: dimension mismatch in +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (other.dim_ != dim_) throw InvalidArgument("ComplexMatrix: dimension mismatch in -");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("ComplexMatrix: dimension mismatch in *");
  ComplexMatrix c(a.dim());
  simd::active_kernels().complex_gemm(a.entries().data(), b.entries().data(), c.entries().data(), a.dim());
  return c;
}

StateVector::StateVector(std::size_t n_qubits) : n_qubits_(n_qubits), amps_(std::size_t{1} << n_qubits) {
  amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  if (amps_.size() != (std::size_t{1} << n_qubits)) {
    throw InvalidArgument("StateVector: expected 2^" + std::to_string(n_qubits) + " amplitudes");
  }
  if (std::abs(norm_squared() - 1.0) > 1e-12) throw InvalidArgument("StateVector: amplitudes are not normalized");
}

double StateVector::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

Complex StateVector::inner(const StateVector& other) const {
  if (other.size() != size()) throw InvalidArgument("StateVector: dimension mismatch in inner product");
  Complex s = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) s += std::conj(amps_[i]) * other.amps_[i];
  return s;
}

namespace {

void check_density(const ComplexMatrix& mat) {
  if (mat.hermiticity_defect() > DensityMatrix::kHermitianTol) {
    throw InvalidArgument("DensityMatrix: matrix is not Hermitian");
  }
  if (std::abs(mat.trace() - 1.0) > DensityMatrix::kTraceTol) {
    throw InvalidArgument("DensityMatrix: trace is not 1");
  }
}

}  // namespace

DensityMatrix DensityMatrix::raw(ComplexMatrix mat) {
  check_density(mat);
  return DensityMatrix(std::move(mat), false);
}

DensityMatrix DensityMatrix::checked_physical(ComplexMatrix mat) {
  check_density(mat);
  const auto values = hermitian_eigenvalues(mat);
  if (values.front() < -kPhysicalTol) throw InvalidArgument("DensityMatrix: matrix has negative eigenvalues");
  return DensityMatrix(std::move(mat), true);
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  const std::size_t d = psi.size();
  ComplexMatrix m(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = psi[i] * std::conj(psi[j]);
  return DensityMatrix(std::move(m), true);
}

DensityMatrix DensityMatrix::trusted(ComplexMatrix mat, bool physical) {
  check_density(mat);
  return DensityMatrix(std::move(mat), physical);
}

std::size_t DensityMatrix::n_qubits() const {
  const std::size_t d = dim();
  if (!std::has_single_bit(d)) throw InvalidArgument("DensityMatrix: dimension is not a power of two");
  return static_cast<std::size_t>(std::countr_zero(d));
}

}  // namespace qdarwin
