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

#ifndef SOCLE_KERNELS_HPP
#define SOCLE_KERNELS_HPP

#include <complex>
#include <cstddef>
#include <string_view>

// Inner loops over interleaved complex<double> storage. Each kernel has a
// scalar reference in `scalar::` and, on x86-64, an AVX2+FMA variant in
// `avx2::`. The unqualified entry points dispatch once per process on cpuid.
namespace socle::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// The instruction set selected for this process. Honors SOCLE_FORCE_SCALAR=1.
Isa active_isa();

/// True when the AVX2 variants were compiled in and the CPU reports AVX2 and FMA.
bool avx2_available();

/// Overrides dispatch (tests only). Requesting avx2 on a machine without it is ignored.
void force_isa(Isa isa);

// c = a * b for row-major n x n matrices. c must not alias a or b.
void matmul(const cplx* a, const cplx* b, cplx* c, std::size_t n);
// y += alpha * x
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t len);
// sum |x_i|^2
double sum_abs2(const cplx* x, std::size_t len);

namespace scalar {
void matmul(const cplx* a, const cplx* b, cplx* c, std::size_t n);
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t len);
double sum_abs2(const cplx* x, std::size_t len);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define SOCLE_HAVE_AVX2_KERNELS 1
namespace avx2 {
void matmul(const cplx* a, const cplx* b, cplx* c, std::size_t n);
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t len);
double sum_abs2(const cplx* x, std::size_t len);
}  // namespace avx2
#endif

}  // namespace socle::kernels

#endif  // SOCLE_KERNELS_HPP
