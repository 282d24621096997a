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

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qdarwin {

using Complex = std::complex<double>;

/// Dense square complex matrix stored row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  /// Zero matrix of size dim x dim. Throws InvalidArgument if dim == 0.
  explicit ComplexMatrix(std::size_t dim);
  /// Takes ownership of dim*dim row-major entries.
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t dim() const { return dim_; }
  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

  std::span<Complex> entries() { return data_; }
  std::span<const Complex> entries() const { return data_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  double frobenius_norm() const;
  /// max |a(i,j) - conj(a(j,i))|
  double hermiticity_defect() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  /// Matrix product; routed through the active SIMD kernel.
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

/// Pure state of an n-qubit register. Qubit 0 is the most significant bit of
/// the amplitude index.
class StateVector {
 public:
  /// |0...0> on n qubits.
  explicit StateVector(std::size_t n_qubits);
  /// Throws InvalidArgument unless amplitudes.size() == 2^n and the norm is 1
  /// within 1e-12.
  StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t size() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  std::span<Complex> mutable_amplitudes() { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const;
  Complex inner(const StateVector& other) const;  // <this|other>

 private:
  std::size_t n_qubits_;
  std::vector<Complex> amps_;
};

/// Hermitian, unit-trace matrix. physical() is true only when all eigenvalues
/// are known to be >= -1e-9.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-9;
  static constexpr double kTraceTol = 1e-9;
  static constexpr double kPhysicalTol = 1e-9;

  /// Validates Hermiticity and trace; physical() == false.
  static DensityMatrix raw(ComplexMatrix mat);
  /// Validates Hermiticity, trace and eigenvalues; physical() == true.
  static DensityMatrix checked_physical(ComplexMatrix mat);
  /// |psi><psi|; physical() == true.
  static DensityMatrix pure(const StateVector& psi);
  /// Caller vouches for positivity (output of a positivity-preserving map).
  static DensityMatrix trusted(ComplexMatrix mat, bool physical);

  const ComplexMatrix& mat() const { return mat_; }
  std::size_t dim() const { return mat_.dim(); }
  bool physical() const { return physical_; }
  /// log2(dim); throws if dim is not a power of two.
  std::size_t n_qubits() const;

 private:
  DensityMatrix(ComplexMatrix mat, bool physical) : mat_(std::move(mat)), physical_(physical) {}
  ComplexMatrix mat_;
  bool physical_ = false;
};

}  // namespace qdarwin
