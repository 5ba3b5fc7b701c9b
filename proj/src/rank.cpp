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

#include "socle/rank.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "socle/errors.hpp"

namespace socle {
namespace {

constexpr int kResampleCap = 16;

struct SampleCount {
  int count = 0;
  bool fragile = false;
};

SampleCount count_sample(const Element& xa, const Tolerances& tol) {
  const ClusteredSpectrum s = nonzero_spectrum(xa, tol);
  SampleCount out{static_cast<int>(s.size()), false};
  for (const auto& p : s.points)
    if (std::abs(p.value) <= 10.0 * s.tol) out.fragile = true;
  return out;
}

double condition_number(const CMatrix& m) {
  using EM = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const auto n = static_cast<Eigen::Index>(m.dim());
  Eigen::JacobiSVD<EM> svd(Eigen::Map<const EM>(m.data().data(), n, n));
  const auto& s = svd.singularValues();
  return s(n - 1) > 0 ? s(0) / s(n - 1) : INFINITY;
}

}  // namespace

int count_nonzero_distinct(const Element& a, const Tolerances& tol) {
  return static_cast<int>(nonzero_spectrum(a, tol).size());
}

int rank_oracle(const Element& a, const Tolerances& tol) {
  int r = 0;
  for (const CMatrix& m : a.blocks()) r += mat_rank(m, tol.rank_rel);
  return r;
}

RankCertificate spectral_rank(const Element& a, Stream& rng, int samples, int escalated, const Tolerances& tol) {
  if (samples < 1) throw DomainError("spectral_rank: samples must be >= 1");
  escalated = std::max(escalated, samples);
  RankCertificate cert{0, Element::identity(a.shape()), 0, rank_oracle(a, tol), false};
  bool have_witness = false;
  int failures = 0;
  while (cert.samples_used < escalated) {
    if (cert.samples_used >= samples && cert.rank >= cert.oracle_rank) break;
    Element x = random_element(a.shape(), rng);
    SampleCount c;
    try {
      c = count_sample(x * a, tol);
    } catch (const ConvergenceError&) {
      if (++failures > kResampleCap) throw;
      continue;
    }
    ++cert.samples_used;
    if (!have_witness || c.count > cert.rank) {
      cert.rank = c.count;
      cert.witness = std::move(x);
      cert.fragile = c.fragile;
      have_witness = true;
    }
  }
  return cert;
}

bool assumes_rank_at(const Element& a, const Element& x, const RankCertificate& cert, const Tolerances& tol) {
  if (!cert.certified())
    throw UncertifiedRank("assumes_rank_at: rank certificate is not certified (sampled " +
                          std::to_string(cert.rank) + ", oracle " + std::to_string(cert.oracle_rank) + ")");
  return count_nonzero_distinct(x * a, tol) == cert.rank;
}

bool is_maximal(const Element& a, const RankCertificate& cert, const Tolerances& tol) {
  return assumes_rank_at(a, Element::identity(a.shape()), cert, tol);
}

bool is_maximal(const Element& a, Stream& rng, const Tolerances& tol) {
  return is_maximal(a, spectral_rank(a, rng, 8, 32, tol), tol);
}

Element make_maximal(const AlgebraShape& shape, std::span<const cplx> nonzero_eigs,
                     std::span<const std::size_t> assignment, Stream& rng, const Tolerances& tol) {
  if (nonzero_eigs.size() != assignment.size()) throw ShapeMismatch("make_maximal: one block index per eigenvalue");
  std::vector<std::vector<cplx>> per_block(shape.num_blocks());
  for (std::size_t i = 0; i < nonzero_eigs.size(); ++i) {
    const cplx z = nonzero_eigs[i];
    if (std::abs(z) <= tol.cluster_floor) throw DomainError("make_maximal: eigenvalues must be nonzero");
    for (std::size_t k = 0; k < i; ++k)
      if (std::abs(nonzero_eigs[k] - z) <= tol.cluster_floor)
        throw DomainError("make_maximal: eigenvalues must be pairwise distinct");
    if (assignment[i] >= shape.num_blocks()) throw DomainError("make_maximal: block index out of range");
    per_block[assignment[i]].push_back(z);
  }

  std::vector<CMatrix> blocks;
  for (std::size_t j = 0; j < shape.num_blocks(); ++j) {
    const std::size_t n = shape.dims[j];
    if (per_block[j].size() > n) throw DomainError("make_maximal: more eigenvalues than block dimension");
    std::vector<cplx> d(n, 0.0);
    std::copy(per_block[j].begin(), per_block[j].end(), d.begin());
    const CMatrix diag = CMatrix::diagonal(d);
    if (per_block[j].empty()) {
      blocks.push_back(CMatrix(n));
      continue;
    }
    for (int attempt = 0;; ++attempt) {
      if (attempt >= kResampleCap) throw GeneratorExhausted("make_maximal: could not draw a well-conditioned S");
      const CMatrix s = CMatrix::identity(n) + ginibre(n, rng);
      if (condition_number(s) > 1e6) continue;
      blocks.push_back(s * diag * mat_inverse(s, tol.rank_rel));
      break;
    }
  }
  return Element(shape, std::move(blocks));
}

}  // namespace socle
