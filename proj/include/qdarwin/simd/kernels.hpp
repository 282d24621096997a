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

// Data-parallel inner loops. Every kernel has a scalar reference version and,
// on x86-64, an AVX2+FMA version. The active table is picked once at startup
// from the CPU feature set (override with QDARWIN_SIMD=scalar|avx2) and can be
// switched at runtime with set_simd_level().

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace qdarwin::simd {

using Complex = std::complex<double>;

enum class SimdLevel { Scalar, Avx2 };

std::string_view to_string(SimdLevel level);

struct KernelTable {
  SimdLevel level;

  // amps has 2^n entries. For each index pair (i, i | stride) with the stride
  // bit clear in i, applies the 2x2 row-major matrix u.
  void (*apply_1q)(Complex* amps, std::size_t size, std::size_t stride, const Complex* u);

  // Same as apply_1q but only on indices whose control bit is set.
  void (*apply_controlled_1q)(Complex* amps, std::size_t size, std::size_t control_stride,
                              std::size_t target_stride, const Complex* u);

  // c = a * b for dim x dim row-major matrices. c must not alias a or b.
  void (*complex_gemm)(const Complex* a, const Complex* b, Complex* c, std::size_t dim);

  // Real 2x2 row-major matrix m applied along one bit of a real vector.
  void (*apply_real_2x2)(double* values, std::size_t size, std::size_t stride, const double* m);

  // sum_b (-1)^popcount(b & mask) * values[b]
  double (*parity_signed_sum)(const double* values, std::size_t size, std::uint64_t mask);
};

const KernelTable& scalar_kernels();
/// nullptr when the build or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();

SimdLevel detected_simd_level();
const KernelTable& active_kernels();
SimdLevel active_simd_level();
/// Throws qdarwin::InvalidArgument if the level is not available.
void set_simd_level(SimdLevel level);

}  // namespace qdarwin::simd
