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

#ifndef SOCLE_MULTIPLICITY_HPP
#define SOCLE_MULTIPLICITY_HPP

#include <map>
#include <optional>
#include <vector>

#include "socle/algebra.hpp"
#include "socle/rank.hpp"

namespace socle {

/// m(lambda, a) by the counting definition, plus the Riesz cross-check when lambda != 0.
struct MultiplicityRecord {
  cplx lambda;
  int m_counting = 0;
  std::optional<int> m_riesz;
  double disk_radius = 0.0;
  int samples = 0;
  std::map<int, int> votes;
};

/// Spectrum, certified rank and gap of a, computed once and shared by the
/// per-value multiplicity computations.
struct SpectralData {
  ClusteredSpectrum spectrum;
  RankCertificate cert;
  double gap;
};

SpectralData analyze(const Element& a, Stream& rng, const Tolerances& tol = default_tolerances());

/// min |alpha - beta| over distinct alpha, beta in sigma(a) u {0};
/// +inf when that set is {0}.
double spectral_gap(const Element& a, const Tolerances& tol = default_tolerances());
double spectral_gap(const ClusteredSpectrum& s);

/// Counting multiplicity for every distinct spectral value, in spectrum order.
///
/// Draws x = 1 + eps G until x lies in E(a), with eps = min(gap / (8 (||a|| + 1)), 0.05),
/// and counts the distinct points of sigma(x a) within gap/3 of each value.
/// Five accepted samples must agree; otherwise ten more are drawn and must
/// agree among themselves, else UnstableMultiplicity.
std::vector<MultiplicityRecord> multiplicities(const Element& a, const SpectralData& data, Stream& rng,
                                               const Tolerances& tol = default_tolerances());

/// Single value; `lambda` must be within tol of a spectral point (DomainError otherwise).
MultiplicityRecord multiplicity(const Element& a, cplx lambda, Stream& rng,
                                const Tolerances& tol = default_tolerances());

/// Trace of the blockwise Riesz projection at lambda != 0, radius gap/2.
int multiplicity_riesz(const Element& a, cplx lambda, const Tolerances& tol = default_tolerances());
int multiplicity_riesz(const Element& a, const ClusteredSpectrum& s, cplx lambda,
                       const Tolerances& tol = default_tolerances());

/// Independent oracle. lambda != 0: algebraic multiplicity over all blocks.
/// lambda = 0: rank(a) - sum_{mu != 0} alg(mu) + s, with s = 1 when a is
/// singular in the finite model or the ambient is infinite_socle.
int multiplicity_oracle(const Element& a, cplx lambda, const Tolerances& tol = default_tolerances());

}  // namespace socle

#endif  // SOCLE_MULTIPLICITY_HPP
