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

#include <atomic>
#include <cstdlib>
#include <string>

#include "qdarwin/error.hpp"
#include "qdarwin/simd/kernels.hpp"

namespace qdarwin::simd {

#if QDARWIN_BUILD_AVX2
const KernelTable* avx2_kernels_built();
#endif

namespace {

bool cpu_has_avx2() {
#if QDARWIN_BUILD_AVX2 && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* initial_table() {
  const KernelTable* best = avx2_kernels() ? avx2_kernels() : &scalar_kernels();
  if (const char* env = std::getenv("QDARWIN_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return &scalar_kernels();
    if (want == "avx2" && avx2_kernels()) return avx2_kernels();
  }
  return best;
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{initial_table()};
  return slot;
}

}  // namespace

std::string_view to_string(SimdLevel level) {
  switch (level) {
    case SimdLevel::Scalar: return "scalar";
    case SimdLevel::Avx2: return "avx2";
  }
  return "unknown";
}

const KernelTable* avx2_kernels() {
#if QDARWIN_BUILD_AVX2
  static const bool supported = cpu_has_avx2();
  return supported ? avx2_kernels_built() : nullptr;
#else
  return nullptr;
#endif
}

SimdLevel detected_simd_level() { return avx2_kernels() ? SimdLevel::Avx2 : SimdLevel::Scalar; }

const KernelTable& active_kernels() { return *active_slot().load(std::memory_order_acquire); }

SimdLevel active_simd_level() { return active_kernels().level; }

void set_simd_level(SimdLevel level) {
  const KernelTable* table = level == SimdLevel::Scalar ? &scalar_kernels() : avx2_kernels();
  if (table == nullptr) {
    throw InvalidArgument("SIMD level '" + std::string(to_string(level)) + "' is not available on this CPU/build");
  }
  active_slot().store(table, std::memory_order_release);
}

}  // namespace qdarwin::simd
