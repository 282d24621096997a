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

#include <cstddef>
#include <span>
#include <vector>

#include "qdarwin/complex_matrix.hpp"

namespace qdarwin {

enum class EntropyMode { Physical, Raw };

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k pairs with values[k]
};

/// result((i*b.dim + k), (j*b.dim + l)) = a(i,j) * b(k,l)
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Reduced state on the qubits in `keep`. Kept qubits appear in register
/// order in the result regardless of the order they are listed in.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep, std::size_t n_qubits);

/// Cyclic complex Jacobi. Throws InvalidArgument if h is not Hermitian within
/// 1e-9, NumericalError if the sweeps fail to converge.
EigenDecomposition hermitian_eig(const ComplexMatrix& h);

/// Eigenvalues only, ascending.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);

/// Principal square root of a positive semidefinite density matrix.
/// Eigenvalues in [-1e-6, 0) are clamped to zero; anything more negative
/// throws NumericalError.
ComplexMatrix matrix_sqrt_psd(const DensityMatrix& rho);

/// Entropy in bits over eigenvalues above 1e-12. Physical mode requires
/// rho.physical(); raw mode silently ignores negative eigenvalues.
double von_neumann_entropy(const DensityMatrix& rho, EntropyMode mode);

/// Tr(rho^2)
double purity(const DensityMatrix& rho);

/// Tr sqrt(sqrt(rho_t) rho_e sqrt(rho_t)), clamped to [0, 1].
double fidelity(const DensityMatrix& rho_t, const DensityMatrix& rho_e);

/// V diag(values) V^dagger
ComplexMatrix from_spectrum(const ComplexMatrix& vectors, std::span<const double> values);

}  // namespace qdarwin
