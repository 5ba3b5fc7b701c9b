// Copyright 2026 The socle Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "socle/kernels.hpp"

namespace socle::kernels {
namespace {

bool cpu_has_avx2() {
#ifdef SOCLE_HAVE_AVX2_KERNELS
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() {
  const char* force = std::getenv("SOCLE_FORCE_SCALAR");
  if (force != nullptr && std::strcmp(force, "0") != 0 && *force != '\0') return Isa::scalar;
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& selected() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

Isa active_isa() { return selected().load(std::memory_order_relaxed); }

bool avx2_available() { return cpu_has_avx2(); }

void force_isa(Isa isa) {
  if (isa == Isa::avx2 && !cpu_has_avx2()) return;
  selected().store(isa, std::memory_order_relaxed);
}

void matmul(const cplx* a, const cplx* b, cplx* c, std::size_t n) {
#ifdef SOCLE_HAVE_AVX2_KERNELS
  if (active_isa() == Isa::avx2) return avx2::matmul(a, b, c, n);
#endif
  scalar::matmul(a, b, c, n);
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t len) {
#ifdef SOCLE_HAVE_AVX2_KERNELS
  if (active_isa() == Isa::avx2) return avx2::axpy(alpha, x, y, len);
#endif
  scalar::axpy(alpha, x, y, len);
}

double sum_abs2(const cplx* x, std::size_t len) {
#ifdef SOCLE_HAVE_AVX2_KERNELS
  if (active_isa() == Isa::avx2) return avx2::sum_abs2(x, len);
#endif
  return scalar::sum_abs2(x, len);
}

}  // namespace socle::kernels
