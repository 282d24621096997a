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

#include <immintrin.h>

#include <bit>

#include "qdarwin/simd/kernels.hpp"

// Compiled with -mavx2 -mfma. Nothing here may run before dispatch.cpp has
// confirmed CPU support.

namespace qdarwin::simd {
namespace {

// Two complex doubles per register: [re0, im0, re1, im1].
inline __m256d load2(const Complex* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(Complex* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

// Lane-wise complex product x * y.
inline __m256d cmul(__m256d x, __m256d y) {
  const __m256d xr = _mm256_movedup_pd(x);
  const __m256d xi = _mm256_permute_pd(x, 0xF);
  const __m256d yswap = _mm256_permute_pd(y, 0x5);
  return _mm256_fmaddsub_pd(xr, y, _mm256_mul_pd(xi, yswap));
}

inline __m256d splat(Complex z) { return _mm256_setr_pd(z.real(), z.imag(), z.real(), z.imag()); }

inline __m128d load1(const Complex* p) { return _mm_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store1(Complex* p, __m128d v) { _mm_storeu_pd(reinterpret_cast<double*>(p), v); }

inline __m128d cmul1(__m128d x, __m128d y) {
  const __m128d xr = _mm_movedup_pd(x);
  const __m128d xi = _mm_permute_pd(x, 0x3);
  const __m128d yswap = _mm_permute_pd(y, 0x1);
  return _mm_fmaddsub_pd(xr, y, _mm_mul_pd(xi, yswap));
}

inline void pair_update1(Complex* p0, Complex* p1, const Complex* u) {
  const __m128d a0 = load1(p0);
  const __m128d a1 = load1(p1);
  const __m128d u0 = load1(u), u1 = load1(u + 1), u2 = load1(u + 2), u3 = load1(u + 3);
  store1(p0, _mm_add_pd(cmul1(u0, a0), cmul1(u1, a1)));
  store1(p1, _mm_add_pd(cmul1(u2, a0), cmul1(u3, a1)));
}

// Two consecutive pair starts (i0, i0 + 1) updated at once.
inline void pair_update2(Complex* p0, Complex* p1, __m256d u0, __m256d u1, __m256d u2, __m256d u3) {
  const __m256d a0 = load2(p0);
  const __m256d a1 = load2(p1);
  store2(p0, _mm256_add_pd(cmul(u0, a0), cmul(u1, a1)));
  store2(p1, _mm256_add_pd(cmul(u2, a0), cmul(u3, a1)));
}

void apply_1q_avx2(Complex* amps, std::size_t size, std::size_t stride, const Complex* u) {
  if (stride == 1) {
    for (std::size_t i0 = 0; i0 + 1 < size; i0 += 2) pair_update1(amps + i0, amps + i0 + 1, u);
    return;
  }
  const __m256d u0 = splat(u[0]), u1 = splat(u[1]), u2 = splat(u[2]), u3 = splat(u[3]);
  for (std::size_t base = 0; base < size; base += 2 * stride) {
    for (std::size_t i0 = base; i0 < base + stride; i0 += 2) {
      pair_update2(amps + i0, amps + i0 + stride, u0, u1, u2, u3);
    }
  }
}

void apply_controlled_1q_avx2(Complex* amps, std::size_t size, std::size_t control_stride,
                              std::size_t target_stride, const Complex* u) {
  if (control_stride == 1 || target_stride == 1) {
    for (std::size_t i0 = 0; i0 < size; ++i0) {
      if ((i0 & target_stride) != 0 || (i0 & control_stride) == 0) continue;
      pair_update1(amps + i0, amps + i0 + target_stride, u);
    }
    return;
  }
  const __m256d u0 = splat(u[0]), u1 = splat(u[1]), u2 = splat(u[2]), u3 = splat(u[3]);
  for (std::size_t i0 = 0; i0 < size; i0 += 2) {
    if ((i0 & target_stride) != 0 || (i0 & control_stride) == 0) continue;
    pair_update2(amps + i0, amps + i0 + target_stride, u0, u1, u2, u3);
  }
}

void complex_gemm_avx2(const Complex* a, const Complex* b, Complex* c, std::size_t dim) {
  const std::size_t vec_end = dim & ~std::size_t{1};
  for (std::size_t i = 0; i < dim * dim; ++i) c[i] = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    Complex* crow = c + i * dim;
    for (std::size_t k = 0; k < dim; ++k) {
      const Complex aik = a[i * dim + k];
      const __m256d ar = _mm256_set1_pd(aik.real());
      const __m256d ai = _mm256_set1_pd(aik.imag());
      const Complex* brow = b + k * dim;
      for (std::size_t j = 0; j < vec_end; j += 2) {
        const __m256d bv = load2(brow + j);
        const __m256d prod = _mm256_fmaddsub_pd(ar, bv, _mm256_mul_pd(ai, _mm256_permute_pd(bv, 0x5)));
        store2(crow + j, _mm256_add_pd(load2(crow + j), prod));
      }
      for (std::size_t j = vec_end; j < dim; ++j) crow[j] += aik * brow[j];
    }
  }
}

void apply_real_2x2_avx2(double* values, std::size_t size, std::size_t stride, const double* m) {
  if (stride < 4) {
    for (std::size_t base = 0; base < size; base += 2 * stride) {
      for (std::size_t i0 = base; i0 < base + stride; ++i0) {
        const double v0 = values[i0];
        const double v1 = values[i0 + stride];
        values[i0] = m[0] * v0 + m[1] * v1;
        values[i0 + stride] = m[2] * v0 + m[3] * v1;
      }
    }
    return;
  }
  const __m256d m0 = _mm256_set1_pd(m[0]), m1 = _mm256_set1_pd(m[1]);
  const __m256d m2 = _mm256_set1_pd(m[2]), m3 = _mm256_set1_pd(m[3]);
  for (std::size_t base = 0; base < size; base += 2 * stride) {
    for (std::size_t i0 = base; i0 < base + stride; i0 += 4) {
      const __m256d v0 = _mm256_loadu_pd(values + i0);
      const __m256d v1 = _mm256_loadu_pd(values + i0 + stride);
      _mm256_storeu_pd(values + i0, _mm256_fmadd_pd(m0, v0, _mm256_mul_pd(m1, v1)));
      _mm256_storeu_pd(values + i0 + stride, _mm256_fmadd_pd(m2, v0, _mm256_mul_pd(m3, v1)));
    }
  }
}

double parity_signed_sum_avx2(const double* values, std::size_t size, std::uint64_t mask) {
  if (size < 4) {
    double sum = 0.0;
    for (std::size_t b = 0; b < size; ++b) sum += (std::popcount(b & mask) & 1) ? -values[b] : values[b];
    return sum;
  }
  // Sign of lane k within an aligned block of four depends only on the low two
  // bits; the block's own parity flips all four.
  double lane_sign[4];
  for (std::size_t k = 0; k < 4; ++k) lane_sign[k] = (std::popcount(k & mask) & 1) ? -0.0 : 0.0;
  const __m256d even_signs = _mm256_loadu_pd(lane_sign);
  const __m256d odd_signs = _mm256_xor_pd(even_signs, _mm256_set1_pd(-0.0));
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t base = 0; base < size; base += 4) {
    const __m256d signs = (std::popcount(base & mask) & 1) ? odd_signs : even_signs;
    acc = _mm256_add_pd(acc, _mm256_xor_pd(_mm256_loadu_pd(values + base), signs));
  }
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

constexpr KernelTable kAvx2{
    SimdLevel::Avx2,        apply_1q_avx2,         apply_controlled_1q_avx2,
    complex_gemm_avx2,      apply_real_2x2_avx2,   parity_signed_sum_avx2,
};

}  // namespace

const KernelTable* avx2_kernels_built() { return &kAvx2; }

}  // namespace qdarwin::simd
