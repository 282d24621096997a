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

#include <bit>

#include "qdarwin/simd/kernels.hpp"

namespace qdarwin::simd {
namespace {

void apply_1q_scalar(Complex* amps, std::size_t size, std::size_t stride, const Complex* u) {
  for (std::size_t base = 0; base < size; base += 2 * stride) {
    for (std::size_t i0 = base; i0 < base + stride; ++i0) {
      const Complex a0 = amps[i0];
      const Complex a1 = amps[i0 + stride];
      amps[i0] = u[0] * a0 + u[1] * a1;
      amps[i0 + stride] = u[2] * a0 + u[3] * a1;
    }
  }
}

void apply_controlled_1q_scalar(Complex* amps, std::size_t size, std::size_t control_stride,
                                std::size_t target_stride, const Complex* u) {
  for (std::size_t i0 = 0; i0 < size; ++i0) {
    if ((i0 & target_stride) != 0 || (i0 & control_stride) == 0) continue;
    const Complex a0 = amps[i0];
    const Complex a1 = amps[i0 + target_stride];
    amps[i0] = u[0] * a0 + u[1] * a1;
    amps[i0 + target_stride] = u[2] * a0 + u[3] * a1;
  }
}

void complex_gemm_scalar(const Complex* a, const Complex* b, Complex* c, std::size_t dim) {
  for (std::size_t i = 0; i < dim * dim; ++i) c[i] = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    Complex* crow = c + i * dim;
    for (std::size_t k = 0; k < dim; ++k) {
      const Complex aik = a[i * dim + k];
      const Complex* brow = b + k * dim;
      for (std::size_t j = 0; j < dim; ++j) crow[j] += aik * brow[j];
    }
  }
}

void apply_real_2x2_scalar(double* values, std::size_t size, std::size_t stride, const double* m) {
  for (std::size_t base = 0; base < size; base += 2 * stride) {
    for (std::size_t i0 = base; i0 < base + stride; ++i0) {
      const double v0 = values[i0];
      const double v1 = values[i0 + stride];
      values[i0] = m[0] * v0 + m[1] * v1;
      values[i0 + stride] = m[2] * v0 + m[3] * v1;
    }
  }
}

double parity_signed_sum_scalar(const double* values, std::size_t size, std::uint64_t mask) {
  double sum = 0.0;
  for (std::size_t b = 0; b < size; ++b) {
    sum += (std::popcount(b & mask) & 1) ? -values[b] : values[b];
  }
  return sum;
}

constexpr KernelTable kScalar{
    SimdLevel::Scalar,        apply_1q_scalar,         apply_controlled_1q_scalar,
    complex_gemm_scalar,      apply_real_2x2_scalar,   parity_signed_sum_scalar,
};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace qdarwin::simd
