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

#include <algorithm>

#include "oracle.hpp"
#include "socle/errors.hpp"
#include "socle/numkernel.hpp"

using namespace socle;

namespace {

CMatrix diag(std::vector<cplx> d) { return CMatrix::diagonal(d); }

CMatrix mat2(cplx a, cplx b, cplx c, cplx d) { return CMatrix(2, {a, b, c, d}); }

CMatrix random_matrix(std::size_t n, Stream& rng) {
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.complex_normal();
  return m;
}

// Greedy multiset match of two eigenvalue lists within tol.
bool same_multiset(EigenList a, EigenList b, double tol) {
  if (a.size() != b.size()) return false;
  for (const cplx& z : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](cplx x, cplx y) { return std::abs(x - z) < std::abs(y - z); });
    if (it == b.end() || std::abs(*it - z) > tol) return false;
    b.erase(it);
  }
  return true;
}

double max_entry_diff(const CMatrix& a, const CMatrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) d = std::max(d, std::abs(a.data()[i] - b.data()[i]));
  return d;
}

}  // namespace

TEST_SUITE("numkernel") {
  TEST_CASE("CMatrix rejects bad construction") {
    CHECK_THROWS_AS(CMatrix(2, {1.0, 2.0, 3.0}), ShapeMismatch);
    CHECK_THROWS_AS(CMatrix(1, {cplx{std::nan(""), 0.0}}), DomainError);
    CHECK_THROWS_AS(CMatrix(1) + CMatrix(2), ShapeMismatch);
  }

  TEST_CASE("eig examples") {
    CHECK(same_multiset(eig(CMatrix::identity(2)), {1.0, 1.0}, 1e-14));
    CHECK(same_multiset(eig(mat2(0, 1, 0, 0)), {0.0, 0.0}, 1e-14));
    // companion of z^2 - 3z + 2, roots by the quadratic formula
    const double disc = std::sqrt(9.0 - 8.0);
    const EigenList roots{(3.0 - disc) / 2.0, (3.0 + disc) / 2.0};
    CHECK(same_multiset(eig(mat2(0, -2, 1, 3)), roots, 1e-12));
  }

  TEST_CASE("eig of the transpose is the same multiset") {
    Stream rng(21);
    for (int t = 0; t < 200; ++t) {
      const auto n = static_cast<std::size_t>(rng.uniform_int(1, 8));
      const CMatrix m = random_matrix(n, rng);
      const EigenList e = eig(m);
      const double tol = std::max(1e-9, 1e-8 * spectral_radius(e));
      CHECK(same_multiset(e, eig(m.transpose()), tol));
    }
  }

  TEST_CASE("cluster examples") {
    const auto one = cluster({1.0, 1.0 + 1e-12}, 1e-8);
    REQUIRE(one.size() == 1);
    CHECK(one.points[0].count == 2);
    CHECK(cluster({0.0, 1.0}, 1e-8).size() == 2);
    const auto three = cluster(eig(diag({1.0, 1.0 + 1e-4, 5.0})), 1e-8);
    CHECK(three.size() == 3);
    CHECK(three.total_count() == 3);
    CHECK_THROWS_AS(cluster({1.0}, 0.0), DomainError);
  }

  TEST_CASE("cluster chains by single linkage and keeps distinct points apart") {
    // 0, 0.6e-8, 1.2e-8 chain at tol 1e-8 although the ends are 1.2e-8 apart.
    const auto c = cluster({0.0, 0.6e-8, 1.2e-8, 1.0}, 1e-8);
    REQUIRE(c.size() == 2);
    Stream rng(22);
    for (int t = 0; t < 50; ++t) {
      EigenList e;
      for (int i = 0; i < 12; ++i) e.push_back(cplx{rng.uniform_int(0, 3) * 1.0, 0.0} + 1e-10 * rng.complex_normal());
      const auto s = cluster(e, 1e-8);
      CHECK(s.total_count() == 12);
      for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) CHECK(std::abs(s.points[i].value - s.points[j].value) > 1e-8);
    }
  }

  TEST_CASE("mat_rank examples") {
    CHECK(mat_rank(CMatrix(3), 1e-9) == 0);
    CHECK(mat_rank(diag({1.0, 0.0, 0.0}), 1e-9) == 1);
    CHECK(mat_rank(mat2(0, 1, 0, 0), 1e-9) == 1);
    CHECK(mat_rank(CMatrix::identity(4), 1e-9) == 4);
  }

  TEST_CASE("mat_det examples") {
    CHECK(std::abs(mat_det(diag({1.0, 2.0, 3.0})) - 6.0) <= 1e-13);
    CHECK(std::abs(mat_det(diag({1.0, 0.0}))) == 0.0);
    // ad - bc
    CHECK(std::abs(mat_det(mat2(1, 2, 3, 4)) - cplx{1.0 * 4 - 2.0 * 3}) <= 1e-13);
  }

  TEST_CASE("mat_det is multiplicative") {
    Stream rng(23);
    for (int t = 0; t < 100; ++t) {
      const auto n = static_cast<std::size_t>(rng.uniform_int(1, 6));
      const CMatrix a = CMatrix::identity(n) + random_matrix(n, rng), b = CMatrix::identity(n) + random_matrix(n, rng);
      const cplx lhs = mat_det(a * b), rhs = mat_det(a) * mat_det(b);
      CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, std::abs(rhs)));
    }
  }

  TEST_CASE("mat_inverse") {
    const CMatrix m = mat2(1, 2, 3, 4);
    const CMatrix inv = mat_inverse(m, 1e-9);
    CHECK(max_entry_diff(m * inv, CMatrix::identity(2)) <= 1e-13);
    CHECK_THROWS_AS(mat_inverse(diag({1.0, 0.0}), 1e-9), NotInvertible);
  }

  TEST_CASE("classical_charpoly examples") {
    const Coefficients c = classical_charpoly(diag({1.0, 0.0, 0.0}));
    // (-z)^2 (1 - z) = z^2 - z^3
    REQUIRE(c.size() == 4);
    CHECK(std::abs(c[0]) <= 1e-14);
    CHECK(std::abs(c[1]) <= 1e-14);
    CHECK(std::abs(c[2] - 1.0) <= 1e-14);
    CHECK(std::abs(c[3] + 1.0) <= 1e-14);
    const Coefficients one = classical_charpoly(CMatrix(1, {cplx{2.5, 1.0}}));
    REQUIRE(one.size() == 2);
    CHECK(std::abs(one[0] - cplx{2.5, 1.0}) <= 1e-14);
    CHECK(std::abs(one[1] + 1.0) <= 1e-14);
    const Coefficients nil = classical_charpoly(mat2(0, 1, 0, 0));
    REQUIRE(nil.size() == 3);
    CHECK(std::abs(nil[0]) + std::abs(nil[1]) <= 1e-14);
    CHECK(std::abs(nil[2] - 1.0) <= 1e-14);
  }

  TEST_CASE("classical_charpoly agrees with Faddeev-LeVerrier") {
    Stream rng(24);
    for (int t = 0; t < 100; ++t) {
      const auto n = static_cast<std::size_t>(rng.uniform_int(1, 6));
      const CMatrix m = random_matrix(n, rng);
      const Coefficients got = classical_charpoly(m);
      const auto want = oracle::faddeev_leverrier(oracle::to_eigen(m));
      REQUIRE(got.size() == want.size());
      CHECK(std::abs(got.back() - std::pow(-1.0, static_cast<double>(n))) <= 1e-12);
      double scale = 1.0;
      for (const auto& w : want) scale = std::max(scale, std::abs(w));
      for (std::size_t k = 0; k < got.size(); ++k) CHECK(std::abs(got[k] - want[k]) <= 1e-9 * scale);
    }
  }

  TEST_CASE("expand_factored and eval_coefficients") {
    const std::vector<cplx> roots{1.0, 0.0};
    const std::vector<int> mults{1, 2};
    const Coefficients c = expand_factored(roots, mults);
    for (cplx z : {cplx{2.0}, cplx{-1.0, 0.5}, cplx{0.3, -2.0}})
      CHECK(std::abs(eval_coefficients(c, z) - (1.0 - z) * (0.0 - z) * (0.0 - z)) <= 1e-13);
  }

  TEST_CASE("riesz_projection examples") {
    const CMatrix p = riesz_projection(diag({1.0, 0.0, 0.0}), 1.0, 0.4, 64);
    CHECK(max_entry_diff(p, diag({1.0, 0.0, 0.0})) <= 1e-10);
    CHECK(std::abs(p.trace() - 1.0) <= 1e-10);
    CHECK(max_entry_diff(riesz_projection(diag({5.0}), 0.0, 1.0, 64), CMatrix(1)) <= 1e-12);
    const CMatrix id = riesz_projection(mat2(2, 1, 0, 2), 2.0, 1.0, 64);
    CHECK(max_entry_diff(id, CMatrix::identity(2)) <= 1e-10);
    CHECK(std::abs(id.trace() - 2.0) <= 1e-10);
  }

  TEST_CASE("riesz_projection rejects contours near the spectrum") {
    CHECK_THROWS_AS(riesz_projection(diag({1.0, 0.0}), 0.0, 1.0, 64), ContourError);
    CHECK_THROWS_AS(riesz_projection(diag({1.0}), 0.0, 0.5, 8), DomainError);
  }

  TEST_CASE("riesz_projection properties on random matrices") {
    Stream rng(25);
    for (int t = 0; t < 50; ++t) {
      const auto n = static_cast<std::size_t>(rng.uniform_int(1, 6));
      const CMatrix m = random_matrix(n, rng);
      const EigenList e = eig(m);
      const double rho = spectral_radius(e);
      // enclosing everything gives the identity
      const CMatrix all = riesz_projection(m, 0.0, 2.0 * rho + 1.0, 128);
      CHECK(max_entry_diff(all, CMatrix::identity(n)) <= 1e-8);
      // a circle around one eigenvalue: rank equals rounded trace, node doubling converges
      double gap = INFINITY;
      for (std::size_t i = 1; i < e.size(); ++i) gap = std::min(gap, std::abs(e[i] - e[0]));
      const double r = std::isfinite(gap) ? gap / 2.0 : 1.0;
      const CMatrix p64 = riesz_projection(m, e[0], r, 64);
      const CMatrix p128 = riesz_projection(m, e[0], r, 128);
      CHECK(mat_rank(p64, 1e-6) == static_cast<int>(std::lround(p64.trace().real())));
      CHECK(max_entry_diff(p64, p128) <= 1e-10 * (1.0 + p64.frobenius_norm()));
    }
  }

  TEST_CASE("arithmetic helpers") {
    const CMatrix a = mat2({1, 1}, 2, 3, {0, -1});
    CHECK(a.trace() == cplx{1, 0});
    CHECK(a.adjoint()(0, 0) == cplx{1, -1});
    CHECK(a.transpose()(0, 1) == cplx{3, 0});
    CHECK(a.frobenius_norm() == doctest::Approx(std::sqrt(2.0 + 4.0 + 9.0 + 1.0)));
    CHECK(max_entry_diff((a + a) - 2.0 * a, CMatrix(2)) == 0.0);
    CHECK(max_entry_diff(-a + a, CMatrix(2)) == 0.0);
  }
}
