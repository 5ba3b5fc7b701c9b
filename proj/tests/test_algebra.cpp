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

#include "oracle.hpp"
#include "socle/errors.hpp"
#include "socle/rank.hpp"
#include "socle/serialize.hpp"

using namespace socle;

namespace {

Element diag_element(std::vector<std::vector<cplx>> blocks, Ambient amb = Ambient::finite) {
  std::vector<std::size_t> dims;
  std::vector<CMatrix> m;
  for (auto& b : blocks) {
    dims.push_back(b.size());
    m.push_back(CMatrix::diagonal(b));
  }
  return Element(AlgebraShape(dims, amb), std::move(m));
}

double dist(const Element& a, const Element& b) { return norm(a - b); }

std::vector<cplx> values(const ClusteredSpectrum& s) {
  std::vector<cplx> v;
  for (const auto& p : s.points) v.push_back(p.value);
  return v;
}

bool contains(const ClusteredSpectrum& s, cplx z) { return s.find(z) >= 0; }

}  // namespace

TEST_SUITE("algebra") {
  TEST_CASE("shape validation") {
    CHECK_THROWS_AS(AlgebraShape(std::vector<std::size_t>{}), DomainError);
    CHECK_THROWS_AS(AlgebraShape({2, 0}), DomainError);
    CHECK(AlgebraShape({2, 3}).total_dim() == 5);
    CHECK_THROWS_AS(Element(AlgebraShape({2}), {CMatrix(3)}), ShapeMismatch);
    CHECK_THROWS_AS(Element::identity(AlgebraShape({2})) + Element::identity(AlgebraShape({3})), ShapeMismatch);
  }

  TEST_CASE("ring identities") {
    Stream rng(31);
    for (int t = 0; t < 50; ++t) {
      const AlgebraShape s = oracle::random_shape(rng, Ambient::finite);
      const Element a = random_element(s, rng), b = random_element(s, rng), c = random_element(s, rng);
      const Element one = Element::identity(s);
      CHECK(dist(one * a, a) == 0.0);
      CHECK(norm(a + (-a)) == 0.0);
      CHECK(dist((a * b) * c, a * (b * c)) <= 1e-12 * (1.0 + norm(a) * norm(b) * norm(c)));
      CHECK(norm(a * b) <= norm(a) * norm(b) * (1.0 + 1e-12));
    }
  }

  TEST_CASE("norm examples") {
    CHECK(norm(Element::identity(AlgebraShape({2, 5, 3}))) == doctest::Approx(std::sqrt(5.0)));
    CHECK(norm(Element::zero(AlgebraShape({4}))) == 0.0);
  }

  TEST_CASE("inverse") {
    const AlgebraShape s({2, 3});
    CHECK(dist(inverse(Element::identity(s)), Element::identity(s)) <= 1e-15);
    CHECK(dist(inverse(Element::scalar(s, 2.0)), Element::scalar(s, 0.5)) <= 1e-15);
    CHECK(dist(inverse(diag_element({{1.0, 2.0}, {3.0}})), diag_element({{1.0, 0.5}, {1.0 / 3.0}})) <= 1e-15);
    CHECK_THROWS_AS(inverse(diag_element({{1.0, 0.0}})), NotInvertible);
    CHECK_THROWS_AS(inverse(Element::identity(AlgebraShape({2}, Ambient::infinite_socle))), NotInvertible);
    Stream rng(32);
    for (int t = 0; t < 20; ++t) {
      const Element a = Element::identity(s) + random_element(s, rng);
      CHECK(dist(a * inverse(a), Element::identity(s)) <= 1e-8 * (1.0 + norm(a) * norm(inverse(a))));
    }
  }

  TEST_CASE("spectrum examples") {
    const auto s1 = spectrum(diag_element({{1.0, 0.0, 0.0}}));
    CHECK(s1.size() == 2);
    CHECK(contains(s1, 0.0));
    CHECK(contains(s1, 1.0));
    const auto s3 = spectrum(diag_element({{1.0}, {1.0}, {0.0}}));
    CHECK(s3.size() == 2);
    CHECK(s3.points[s3.find(1.0)].count == 2);
    const auto inf = spectrum(diag_element({{1.0, 2.0}}, Ambient::infinite_socle));
    REQUIRE(contains(inf, 0.0));
    CHECK(inf.points[inf.find(0.0)].ambient_forced);
    CHECK(inf.points[inf.find(0.0)].count == 0);
    CHECK(nonzero_spectrum(Element::zero(AlgebraShape({3}))).empty());
    const auto nz = nonzero_spectrum(diag_element({{1.0, 0.0, 0.0}}));
    REQUIRE(nz.size() == 1);
    CHECK(std::abs(nz.points[0].value - 1.0) <= 1e-14);
  }

  TEST_CASE("spectrum is the union of block spectra") {
    Stream rng(33);
    for (int t = 0; t < 50; ++t) {
      const AlgebraShape s = oracle::random_shape(rng, Ambient::finite);
      const Element a = random_element(s, rng);
      // one big block-diagonal matrix, solved independently
      oracle::Mat big = oracle::Mat::Zero(s.total_dim(), s.total_dim());
      Eigen::Index off = 0;
      for (const auto& b : a.blocks()) {
        big.block(off, off, b.dim(), b.dim()) = oracle::to_eigen(b);
        off += b.dim();
      }
      Eigen::ComplexEigenSolver<oracle::Mat> es(big);
      const auto sp = spectrum(a);
      CHECK(sp.total_count() == static_cast<int>(s.total_dim()));
      for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) CHECK(contains(sp, es.eigenvalues()(i)));
    }
  }

  TEST_CASE("Jacobson: nonzero spectra of xa and ax coincide") {
    Stream rng(34);
    for (int t = 0; t < 500; ++t) {
      const AlgebraShape s = oracle::random_shape(rng, t % 2 ? Ambient::infinite_socle : Ambient::finite);
      const Element a = random_socle_element(s, oracle::random_ranks(s, rng), rng);
      const Element x = random_element(s, rng);
      const auto sxa = nonzero_spectrum(x * a), sax = nonzero_spectrum(a * x);
      CHECK(sxa.size() == sax.size());
      CHECK(hausdorff(sxa, sax) <= 10.0 * std::max(sxa.tol, sax.tol));
    }
  }

  TEST_CASE("hausdorff") {
    ClusteredSpectrum a{{{0.0, 1}, {1.0, 1}}, 1e-9}, b{{{0.0, 1}, {1.5, 1}}, 1e-9};
    CHECK(hausdorff(a, b) == doctest::Approx(0.5));
    CHECK(hausdorff(a, a) == 0.0);
  }

  TEST_CASE("projection and compression examples") {
    CHECK_THROWS_AS(ProjectionElement::make(diag_element({{2.0}})), DomainError);
    const AlgebraShape s({3});
    const auto full = CompressedView::make(ProjectionElement::make(Element::identity(s)));
    const Element a = diag_element({{1.0, 2.0, 3.0}});
    CHECK(full.view_shape().dims == std::vector<std::size_t>{3});
    CHECK(full.compress(a).block(0).dim() == 3);
    CHECK(spectrum(full.compress(a)).size() == 3);
    const auto corner = CompressedView::make(ProjectionElement::make(diag_element({{1.0, 0.0, 0.0}})));
    const Element v = corner.compress(a);
    REQUIRE(v.block(0).dim() == 1);
    CHECK(std::abs(v.block(0)(0, 0) - 1.0) <= 1e-14);
    CHECK(dist(corner.compress(corner.projection().underlying()), corner.identity()) <= 1e-14);
    CHECK(dist(corner.identity(), Element::identity(corner.view_shape())) <= 1e-14);
    CHECK(dist(corner.expand(v), diag_element({{1.0, 0.0, 0.0}})) <= 1e-14);
  }

  TEST_CASE("compression by a sum of Riesz projections") {
    Stream rng(35);
    for (int t = 0; t < 100; ++t) {
      const AlgebraShape s = oracle::random_shape(rng, Ambient::finite);
      // p = eigenprojections of a random maximal element; drawn per block
      std::vector<CMatrix> pb;
      for (std::size_t j = 0; j < s.num_blocks(); ++j) {
        const auto n = static_cast<Eigen::Index>(s.dims[j]);
        std::vector<cplx> d(s.dims[j], 0.0);
        for (auto& z : d) z = rng.uniform() < 0.5 ? 1.0 : 0.0;
        const oracle::Mat q = oracle::Mat::Identity(n, n) + 0.3 * oracle::random_gaussian(n, rng) / std::sqrt(double(n));
        oracle::Mat dm = oracle::Mat::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i) dm(i, i) = d[i];
        pb.push_back(oracle::from_eigen(q * dm * q.inverse()));
      }
      const Element pe(s, pb);
      if (norm(pe) <= 1e-12) continue;
      const ProjectionElement p = ProjectionElement::make(pe, Tolerances{.idempotency = 1e-6});
      const CompressedView view = CompressedView::make(p);
      for (std::size_t j = 0; j < view.view_shape().num_blocks(); ++j)
        CHECK(view.view_shape().dims[j] ==
              static_cast<std::size_t>(oracle::svd_rank(oracle::to_eigen(pe.block(view.block_map()[j])))));
      const Element x = random_element(s, rng), y = random_element(s, rng);
      const Element pxp = pe * x * pe, pyp = pe * y * pe;
      // Spectra agree between view and ambient.
      const auto sv = nonzero_spectrum(view.compress(pxp)), sa = nonzero_spectrum(pxp);
      CHECK(sv.size() == sa.size());
      CHECK(hausdorff(sv, sa) <= 1e-7 * (1.0 + norm(pxp)));
      // Compression is multiplicative on corner elements.
      const double scale = 1.0 + norm(pxp) * norm(pyp);
      CHECK(dist(view.compress(pxp) * view.compress(pyp), view.compress(pe * pxp * pyp * pe)) <= 1e-10 * scale);
    }
  }

  TEST_CASE("random_socle_element hits its target ranks") {
    Stream rng(36);
    CHECK(norm(random_socle_element(AlgebraShape({3, 2}), {0, 0}, rng)) == 0.0);
    CHECK_THROWS_AS(random_socle_element(AlgebraShape({2}), {3}, rng), DomainError);
    for (int t = 0; t < 100; ++t) {
      const AlgebraShape s = oracle::random_shape(rng, Ambient::finite);
      const auto r = oracle::random_ranks(s, rng);
      const Element a = random_socle_element(s, r, rng);
      for (std::size_t j = 0; j < r.size(); ++j)
        CHECK(static_cast<std::size_t>(oracle::svd_rank(oracle::to_eigen(a.block(j)))) == r[j]);
    }
  }

  TEST_CASE("random x lands in E(a)") {
    Stream rng(37);
    const AlgebraShape s({4, 3, 2});
    const Element a = random_socle_element(s, {2, 3, 1}, rng);
    const RankCertificate cert = spectral_rank(a, rng);
    REQUIRE(cert.certified());
    int hits = 0;
    for (int t = 0; t < 100; ++t) hits += assumes_rank_at(a, random_element(s, rng), cert);
    CHECK(hits >= 99);
  }

  TEST_CASE("element JSON round trip") {
    Stream rng(38);
    for (Ambient amb : {Ambient::finite, Ambient::infinite_socle}) {
      const Element a = random_element(AlgebraShape({2, 1}, amb), rng);
      const Element b = io::element_from_json(nlohmann::json::parse(io::to_json(a).dump()));
      CHECK(b.shape() == a.shape());
      CHECK(dist(a, b) == 0.0);
    }
    CHECK_THROWS_AS(io::element_from_json(nlohmann::json::parse(R"({"dims":[2],"blocks":[[[[1,0]]]]})")),
                    DomainError);
    CHECK_THROWS_AS(io::element_from_json(nlohmann::json::parse(R"({"dims":[1],"ambient":"x","blocks":[[[[1,0]]]]})")),
                    DomainError);
  }
}
