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

#include "socle/kernels.hpp"

#ifdef SOCLE_HAVE_AVX2_KERNELS

#include <immintrin.h>

// The functions below carry a target attribute instead of the whole file being
// built with -mavx2, so no inline template from a shared header gets emitted
// with AVX2 code and picked up by the linker for the scalar path.
#define SOCLE_AVX2 __attribute__((target("avx2,fma")))

namespace socle::kernels::avx2 {
namespace {

// (ar + i ai) * (br0, bi0, br1, bi1): two complex products per register.
SOCLE_AVX2 inline __m256d cmul_bcast(__m256d ar, __m256d ai, __m256d b) {
  const __m256d bswap = _mm256_permute_pd(b, 0b0101);
  return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, bswap));
}

}  // namespace

SOCLE_AVX2 void matmul(const cplx* a, const cplx* b, cplx* c, std::size_t n) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* bd = reinterpret_cast<const double*>(b);
  double* cd = reinterpret_cast<double*>(c);
  const std::size_t pairs = n / 2;
  for (std::size_t i = 0; i < n; ++i) {
    double* crow = cd + 2 * i * n;
    for (std::size_t j = 0; j < 2 * n; ++j) crow[j] = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double* aik = ad + 2 * (i * n + k);
      const __m256d ar = _mm256_set1_pd(aik[0]);
      const __m256d ai = _mm256_set1_pd(aik[1]);
      const double* brow = bd + 2 * k * n;
      for (std::size_t p = 0; p < pairs; ++p) {
        const __m256d bv = _mm256_loadu_pd(brow + 4 * p);
        const __m256d cv = _mm256_loadu_pd(crow + 4 * p);
        _mm256_storeu_pd(crow + 4 * p, _mm256_add_pd(cv, cmul_bcast(ar, ai, bv)));
      }
      if (n % 2) {
        const std::size_t j = n - 1;
        const double br = brow[2 * j], bi = brow[2 * j + 1];
        crow[2 * j] += aik[0] * br - aik[1] * bi;
        crow[2 * j + 1] += aik[0] * bi + aik[1] * br;
      }
    }
  }
}

SOCLE_AVX2 void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t len) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  const std::size_t pairs = len / 2;
  for (std::size_t p = 0; p < pairs; ++p) {
    const __m256d xv = _mm256_loadu_pd(xd + 4 * p);
    const __m256d yv = _mm256_loadu_pd(yd + 4 * p);
    _mm256_storeu_pd(yd + 4 * p, _mm256_add_pd(yv, cmul_bcast(ar, ai, xv)));
  }
  if (len % 2) {
    const std::size_t j = len - 1;
    const double xr = xd[2 * j], xi = xd[2 * j + 1];
    yd[2 * j] += alpha.real() * xr - alpha.imag() * xi;
    yd[2 * j + 1] += alpha.real() * xi + alpha.imag() * xr;
  }
}

SOCLE_AVX2 double sum_abs2(const cplx* x, std::size_t len) {
  const double* xd = reinterpret_cast<const double*>(x);
  const std::size_t doubles = 2 * len;
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= doubles; j += 4) {
    const __m256d v = _mm256_loadu_pd(xd + j);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; j < doubles; ++j) s += xd[j] * xd[j];
  return s;
}

}  // namespace socle::kernels::avx2

#endif  // SOCLE_HAVE_AVX2_KERNELS
