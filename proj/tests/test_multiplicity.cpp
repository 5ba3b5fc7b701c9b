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
#include "socle/multiplicity.hpp"
#include "socle/rank.hpp"

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

Element jordan2_plus_3() {
  return Element(AlgebraShape({2, 1}), {CMatrix(2, {2.0, 1.0, 0.0, 2.0}), CMatrix(1, {3.0})});
}

}  // namespace

TEST_SUITE("multiplicity") {
  TEST_CASE("spectral_gap examples") {
    CHECK(spectral_gap(diag_element({{0.0, 1.0}})) == doctest::Approx(1.0));
    CHECK(spectral_gap(diag_element({{0.0, 1.0, 1.01}})) == doctest::Approx(0.01));
    CHECK(std::isinf(spectral_gap(Element::zero(AlgebraShape({3})))));
  }

  TEST_CASE("counting multiplicity examples") {
    Stream rng(51);
    const Element m3 = diag_element({{1.0, 0.0, 0.0}});
    CHECK(multiplicity(m3, 1.0, rng).m_counting == 1);
    CHECK(multiplicity(m3, 0.0, rng).m_counting == 1);
    CHECK(multiplicity(Element::zero(AlgebraShape({2, 3})), 0.0, rng).m_counting == 1);
    CHECK(multiplicity(Element(AlgebraShape({2}), {CMatrix(2, {0.0, 1.0, 0.0, 0.0})}), 0.0, rng).m_counting == 2);
    const Element c3 = diag_element({{1.0}, {1.0}, {0.0}});
    CHECK(multiplicity(c3, 1.0, rng).m_counting == 2);
    CHECK(multiplicity(c3, 0.0, rng).m_counting == 1);
    const MultiplicityRecord j = multiplicity(jordan2_plus_3(), 2.0, rng);
    CHECK(j.m_counting == 2);
    CHECK(j.m_riesz == 2);
    CHECK(j.disk_radius == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(multiplicity(m3, 5.0, rng), DomainError);
  }

  TEST_CASE("long Jordan chains keep the perturbed spectrum inside the disks") {
    // J_5(2) + [2.5]: the defective eigenvalue moves like eps^(1/5) under x = 1 + eps G.
    CMatrix j(5);
    for (std::size_t i = 0; i < 5; ++i) j(i, i) = 2.0;
    for (std::size_t i = 0; i + 1 < 5; ++i) j(i, i + 1) = 1.0;
    const Element a(AlgebraShape({5, 1}), {j, CMatrix(1, {2.5})});
    Stream rng(57);
    const MultiplicityRecord r = multiplicity(a, 2.0, rng);
    CHECK(r.m_counting == 5);
    CHECK(r.m_riesz == 5);
    CHECK(multiplicity(a, 2.5, rng).m_counting == 1);
  }

  TEST_CASE("infinite ambient always counts the forced zero") {
    Stream rng(52);
    const Element a = diag_element({{1.0, 2.0}}, Ambient::infinite_socle);
    // invertible as a matrix, yet 0 is in the spectrum and counted once
    CHECK(multiplicity(a, 0.0, rng).m_counting == 1);
    CHECK(multiplicity_oracle(a, 0.0) == 1);
    CHECK(multiplicity(diag_element({{1.0, 2.0}}), 1.0, rng).m_counting == 1);
  }

  TEST_CASE("Riesz multiplicity examples") {
    CHECK(multiplicity_riesz(diag_element({{1.0, 0.0, 0.0}}), 1.0) == 1);
    CHECK(multiplicity_riesz(diag_element({{1.0}, {1.0}, {0.0}}), 1.0) == 2);
    CHECK(multiplicity_riesz(jordan2_plus_3(), 2.0) == 2);
    CHECK_THROWS_AS(multiplicity_riesz(diag_element({{1.0, 0.0}}), 0.0), DomainError);
  }

  TEST_CASE("oracle examples") {
    CHECK(multiplicity_oracle(diag_element({{1.0, 0.0, 0.0}}), 0.0) == 1);
    CHECK(multiplicity_oracle(Element::zero(AlgebraShape({3})), 0.0) == 1);
    CHECK(multiplicity_oracle(diag_element({{1.0}, {1.0}, {0.0}}), 0.0) == 1);
    CHECK(multiplicity_oracle(jordan2_plus_3(), 2.0) == 2);
  }

  TEST_CASE("zero-point oracle formula agrees with counting") {
    // The formula for m(0, a) is only trusted after this gate.
    Stream rng(53);
    for (int t = 0; t < 200; ++t) {
      const AlgebraShape s = oracle::random_shape(rng, t % 2 ? Ambient::infinite_socle : Ambient::finite);
      const Element a = random_socle_element(s, oracle::random_ranks(s, rng), rng);
      const SpectralData data = analyze(a, rng);
      const auto recs = multiplicities(a, data, rng);
      for (const auto& r : recs) CHECK(r.m_counting == multiplicity_oracle(a, r.lambda));
    }
  }

  TEST_CASE("maximal elements have multiplicity one everywhere nonzero") {
    Stream rng(54);
    for (int t = 0; t < 200; ++t) {
      const AlgebraShape s = oracle::random_shape(rng, Ambient::finite);
      std::vector<cplx> eigs;
      std::vector<std::size_t> assign;
      for (std::size_t j = 0; j < s.num_blocks(); ++j)
        for (int i = rng.uniform_int(0, static_cast<int>(s.dims[j])); i > 0; --i) {
          eigs.push_back(std::polar(1.0 + static_cast<double>(eigs.size()), rng.uniform(0.0, 6.28)));
          assign.push_back(j);
        }
      const Element a = make_maximal(s, eigs, assign, rng);
      const SpectralData data = analyze(a, rng);
      for (const auto& r : multiplicities(a, data, rng))
        if (std::abs(r.lambda) > data.spectrum.tol) CHECK(r.m_counting == 1);
    }
  }

  TEST_CASE("degree bound and similarity invariance") {
    Stream rng(55);
    for (int t = 0; t < 100; ++t) {
      const AlgebraShape s = oracle::random_shape(rng, t % 2 ? Ambient::infinite_socle : Ambient::finite);
      const Element a = random_socle_element(s, oracle::random_ranks(s, rng), rng);
      std::vector<CMatrix> sb, sinv;
      for (auto n : s.dims) {
        const oracle::Mat q = oracle::Mat::Identity(n, n) + 0.3 * oracle::random_gaussian(n, rng) / std::sqrt(double(n));
        sb.push_back(oracle::from_eigen(q));
        sinv.push_back(oracle::from_eigen(q.inverse()));
      }
      const Element b = Element(s, sb) * a * Element(s, sinv);
      const SpectralData da = analyze(a, rng), db = analyze(b, rng);
      const auto ra = multiplicities(a, da, rng), rb = multiplicities(b, db, rng);
      int deg = 0;
      for (const auto& r : ra) deg += r.m_counting;
      CHECK(deg <= da.cert.rank + 1);
      REQUIRE(ra.size() == rb.size());
      for (const auto& r : ra) {
        const int idx = db.spectrum.find(r.lambda);
        REQUIRE(idx >= 0);
        CHECK(rb[static_cast<std::size_t>(idx)].m_counting == r.m_counting);
      }
    }
  }

  TEST_CASE("votes are recorded") {
    Stream rng(56);
    const MultiplicityRecord r = multiplicity(diag_element({{1.0, 0.0, 0.0}}), 1.0, rng);
    int total = 0;
    for (const auto& [k, v] : r.votes) total += v;
    CHECK(total == r.samples);
    CHECK(r.samples >= 5);
  }
}
