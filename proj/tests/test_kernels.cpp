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

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "qdarwin/error.hpp"
#include "qdarwin/simd/kernels.hpp"

using namespace qdarwin::simd;

namespace {

std::vector<Complex> random_complex(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Complex> v(n);
  for (auto& z : v) z = Complex(g(rng), g(rng));
  return v;
}

std::vector<double> random_real(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar apply_1q matches hand-computed Hadamard") {
    const double r = 1.0 / std::sqrt(2.0);
    const Complex h[4] = {r, r, r, -r};
    std::vector<Complex> amps = {1.0, 0.0, 0.0, 0.0};
    scalar_kernels().apply_1q(amps.data(), 4, 2, h);
    CHECK(std::abs(amps[0] - r) < 1e-15);
    CHECK(std::abs(amps[2] - r) < 1e-15);
    CHECK(std::abs(amps[1]) == 0.0);
    CHECK(std::abs(amps[3]) == 0.0);
  }

  TEST_CASE("scalar parity_signed_sum on a small vector") {
    const double v[4] = {1, 2, 3, 4};
    CHECK(scalar_kernels().parity_signed_sum(v, 4, 0) == 10.0);
    CHECK(scalar_kernels().parity_signed_sum(v, 4, 1) == -2.0);
    CHECK(scalar_kernels().parity_signed_sum(v, 4, 3) == 0.0);
  }

  TEST_CASE("set_simd_level switches the active table") {
    const SimdLevel before = active_simd_level();
    set_simd_level(SimdLevel::Scalar);
    CHECK(active_kernels().level == SimdLevel::Scalar);
    if (avx2_kernels() != nullptr) {
      set_simd_level(SimdLevel::Avx2);
      CHECK(active_kernels().level == SimdLevel::Avx2);
    } else {
      CHECK_THROWS_AS(set_simd_level(SimdLevel::Avx2), qdarwin::InvalidArgument);
    }
    set_simd_level(before);
  }

  TEST_CASE("AVX2 kernels agree with the scalar reference") {
    const KernelTable* fast = avx2_kernels();
    if (fast == nullptr) {
      MESSAGE("AVX2 unavailable, equivalence test skipped");
      return;
    }
    const KernelTable& ref = scalar_kernels();
    std::mt19937_64 rng(1234);

    SUBCASE("apply_1q") {
      for (std::size_t n = 1; n <= 8; ++n) {
        const std::size_t size = std::size_t{1} << n;
        for (std::size_t stride = 1; stride < size; stride <<= 1) {
          const auto u = random_complex(4, rng);
          auto a = random_complex(size, rng);
          auto b = a;
          ref.apply_1q(a.data(), size, stride, u.data());
          fast->apply_1q(b.data(), size, stride, u.data());
          CHECK(max_diff(a, b) < 1e-13);
        }
      }
    }

    SUBCASE("apply_controlled_1q") {
      for (std::size_t n = 2; n <= 8; ++n) {
        const std::size_t size = std::size_t{1} << n;
        for (std::size_t cs = 1; cs < size; cs <<= 1)
          for (std::size_t ts = 1; ts < size; ts <<= 1) {
            if (cs == ts) continue;
            const auto u = random_complex(4, rng);
            auto a = random_complex(size, rng);
            auto b = a;
            ref.apply_controlled_1q(a.data(), size, cs, ts, u.data());
            fast->apply_controlled_1q(b.data(), size, cs, ts, u.data());
            CHECK(max_diff(a, b) < 1e-13);
          }
      }
    }

    SUBCASE("complex_gemm") {
      for (std::size_t dim : {1u, 2u, 3u, 4u, 7u, 8u, 16u, 33u, 64u}) {
        const auto a = random_complex(dim * dim, rng);
        const auto b = random_complex(dim * dim, rng);
        std::vector<Complex> c1(dim * dim), c2(dim * dim);
        ref.complex_gemm(a.data(), b.data(), c1.data(), dim);
        fast->complex_gemm(a.data(), b.data(), c2.data(), dim);
        CHECK(max_diff(c1, c2) < 1e-11 * static_cast<double>(dim));
      }
    }

    SUBCASE("apply_real_2x2") {
      for (std::size_t n = 1; n <= 8; ++n) {
        const std::size_t size = std::size_t{1} << n;
        for (std::size_t stride = 1; stride < size; stride <<= 1) {
          const auto m = random_real(4, rng);
          auto a = random_real(size, rng);
          auto b = a;
          ref.apply_real_2x2(a.data(), size, stride, m.data());
          fast->apply_real_2x2(b.data(), size, stride, m.data());
          for (std::size_t i = 0; i < size; ++i) CHECK(std::abs(a[i] - b[i]) < 1e-13);
        }
      }
    }

    SUBCASE("parity_signed_sum") {
      for (std::size_t n = 1; n <= 10; ++n) {
        const std::size_t size = std::size_t{1} << n;
        const auto v = random_real(size, rng);
        for (std::uint64_t mask = 0; mask < size; mask += 1 + mask / 3) {
          const double x = ref.parity_signed_sum(v.data(), size, mask);
          const double y = fast->parity_signed_sum(v.data(), size, mask);
          CHECK(std::abs(x - y) < 1e-12 * static_cast<double>(size));
        }
      }
    }
  }
}
