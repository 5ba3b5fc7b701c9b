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

#include <doctest.h>

#include <vector>

#include "socle/kernels.hpp"
#include "socle/rng.hpp"

using socle::Stream;
using socle::kernels::cplx;
namespace k = socle::kernels;

namespace {

std::vector<cplx> random_vec(std::size_t n, Stream& rng) {
  std::vector<cplx> v(n);
  for (auto& z : v) z = rng.complex_normal();
  return v;
}

double max_rel_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double scale = 1.0, d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    scale = std::max(scale, std::abs(b[i]));
    d = std::max(d, std::abs(a[i] - b[i]));
  }
  return d / scale;
}

// Textbook triple loop, independent of both kernel variants.
std::vector<cplx> naive_matmul(const std::vector<cplx>& a, const std::vector<cplx>& b, std::size_t n) {
  std::vector<cplx> c(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) c[i * n + j] += a[i * n + l] * b[l * n + j];
  return c;
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar matmul matches the naive product") {
    Stream rng(11);
    for (std::size_t n = 1; n <= 12; ++n) {
      const auto a = random_vec(n * n, rng), b = random_vec(n * n, rng);
      std::vector<cplx> c(n * n);
      k::scalar::matmul(a.data(), b.data(), c.data(), n);
      CHECK(max_rel_diff(c, naive_matmul(a, b, n)) <= 1e-14);
    }
  }

  TEST_CASE("scalar axpy and sum_abs2") {
    std::vector<cplx> x{{1, 2}, {3, -1}, {0, 0.5}};
    std::vector<cplx> y{{1, 0}, {0, 1}, {2, 2}};
    k::scalar::axpy({0, 1}, x.data(), y.data(), x.size());
    CHECK(y[0] == cplx{-1, 1});
    CHECK(y[1] == cplx{1, 4});
    CHECK(y[2] == cplx{1.5, 2});
    CHECK(k::scalar::sum_abs2(x.data(), x.size()) == doctest::Approx(5 + 10 + 0.25));
    CHECK(k::scalar::sum_abs2(x.data(), 0) == 0.0);
  }

#ifdef SOCLE_HAVE_AVX2_KERNELS
  TEST_CASE("avx2 variants agree with scalar references") {
    if (!k::avx2_available()) {
      MESSAGE("CPU lacks AVX2/FMA; equivalence test not applicable");
      return;
    }
    Stream rng(12);
    for (std::size_t n = 1; n <= 19; ++n) {
      const auto a = random_vec(n * n, rng), b = random_vec(n * n, rng);
      std::vector<cplx> cs(n * n), cv(n * n);
      k::scalar::matmul(a.data(), b.data(), cs.data(), n);
      k::avx2::matmul(a.data(), b.data(), cv.data(), n);
      CHECK(max_rel_diff(cv, cs) <= 1e-13);

      const cplx alpha = rng.complex_normal();
      auto ys = random_vec(n * n, rng);
      auto yv = ys;
      k::scalar::axpy(alpha, a.data(), ys.data(), ys.size());
      k::avx2::axpy(alpha, a.data(), yv.data(), yv.size());
      CHECK(max_rel_diff(yv, ys) <= 1e-14);

      for (std::size_t len : {std::size_t{0}, std::size_t{1}, n, n * n}) {
        const double s = k::scalar::sum_abs2(a.data(), len);
        const double v = k::avx2::sum_abs2(a.data(), len);
        CHECK(std::abs(s - v) <= 1e-13 * std::max(1.0, s));
      }
    }
  }

  TEST_CASE("dispatch honours forced isa") {
    const k::Isa before = k::active_isa();
    k::force_isa(k::Isa::scalar);
    CHECK(k::active_isa() == k::Isa::scalar);
    CHECK(k::isa_name(k::Isa::scalar) == "scalar");
    std::vector<cplx> a{{1, 1}}, b{{2, -1}}, c(1);
    k::matmul(a.data(), b.data(), c.data(), 1);
    CHECK(c[0] == cplx{3, 1});
    if (k::avx2_available()) {
      k::force_isa(k::Isa::avx2);
      CHECK(k::active_isa() == k::Isa::avx2);
      k::matmul(a.data(), b.data(), c.data(), 1);
      CHECK(std::abs(c[0] - cplx{3, 1}) <= 1e-15);
    }
    k::force_isa(before);
  }
#endif
}
