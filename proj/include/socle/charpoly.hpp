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

#ifndef SOCLE_CHARPOLY_HPP
#define SOCLE_CHARPOLY_HPP

#include <string>
#include <vector>

#include "socle/algebra.hpp"
#include "socle/multiplicity.hpp"

namespace socle {

struct CharFactor {
  cplx root;
  int mult = 0;
};

/// p(z) = prod (root - z)^mult, kept factored.
struct CharPoly {
  std::vector<CharFactor> factors;
  int source_rank = 0;

  int degree() const;
  bool has_root(cplx z, double tol) const;
  /// Expanded coefficients, lowest degree first. For display and coefficient comparisons only.
  Coefficients coefficients() const;
};

/// Generalized characteristic polynomial: one factor per distinct spectral
/// value (ambient-forced 0 included) with its counting multiplicity.
CharPoly char_poly(const Element& a, Stream& rng, const Tolerances& tol = default_tolerances());
CharPoly char_poly(const SpectralData& data, const std::vector<MultiplicityRecord>& mults);

cplx eval_scalar(const CharPoly& p, cplx z);

/// prod (alpha e - x)^m, factors multiplied left to right in order of
/// decreasing |alpha|. `e` is the identity of the algebra x lives in.
Element eval_element(const CharPoly& p, const Element& x, const Element& e);
Element eval_element(const CharPoly& p, const Element& x);

/// prod (|alpha| + ||a||)^m, floored at 1.
double residual_scale(const CharPoly& p, const Element& a);

/// ||p(a)|| / residual_scale(p, a), evaluated with identity e.
double cayley_hamilton_residual(const CharPoly& p, const Element& a, const Element& e);
double cayley_hamilton_residual(const Element& a, Stream& rng, const Tolerances& tol = default_tolerances());

/// The corner-algebra form of Cayley-Hamilton for a nonzero singular maximal
/// element: with e = p_1 + ... + p_n from its diagonalization, p_{a,e}(a)
/// is evaluated inside eAe (identity = view identity) and p_a(a) in A.
struct CompressedResidual {
  double view_residual = 0.0;
  double ambient_residual = 0.0;
  std::size_t view_dim = 0;
};
CompressedResidual cayley_hamilton_compressed(const Element& a, Stream& rng,
                                              const Tolerances& tol = default_tolerances());

cplx trace(const Element& a, Stream& rng, const Tolerances& tol = default_tolerances());
cplx trace(const CharPoly& p);

/// prod (lambda + 1)^m; exactly 0 when -1 is a spectral value.
cplx det_plus_one(const Element& a, Stream& rng, const Tolerances& tol = default_tolerances());
cplx det_plus_one(const CharPoly& p, double tol);

struct SpectralTerm {
  cplx lambda;
  ProjectionElement projection;
};

/// a = sum lambda_i p_i for a nonzero maximal element, p_i blockwise Riesz
/// projections. Verifies reconstruction, orthogonality and rank one.
std::vector<SpectralTerm> diagonalize_maximal(const Element& a, Stream& rng,
                                              const Tolerances& tol = default_tolerances());

struct ApproximationStep {
  int m = 0;
  double perturbation = 0.0;    // 2^-m
  double poly_deviation = 0.0;  // |p_{x_m a}(lambda0) - p_a(lambda0)|
  double ch_residual = 0.0;     // normalized ||p_{x_m a}(x_m a)||
  int attempts = 0;
  bool maximal = false;
};

struct ApproximationRecord {
  cplx lambda0;
  cplx target_value;  // p_a(lambda0)
  std::vector<ApproximationStep> steps;
  bool aborted = false;
  std::string abort_reason;
};

/// x_m = 1 + 2^-m G for m = 1..steps with a single direction G, redrawn at a
/// step only if x_m a leaves E(a); aborts after 20 redraws at one step.
ApproximationRecord approximation_sequence(const Element& a, int steps, cplx lambda0, Stream& rng,
                                           const Tolerances& tol = default_tolerances());

/// The tempting determinant det(a - z 1) := p_a(z) on C^3 with a = (1, 1, 0).
struct NaiveDetReport {
  std::vector<CharFactor> a_factors;     // p_a
  cplx det_a_minus_2;                    // p_a(2)
  cplx det_half_a_minus_1;               // p_{a/2}(1)
  cplx det_two_reading_zero;             // p_0(-2): 2 1 read as 0 - (-2) 1
  cplx det_two_reading_scalar;           // p_{2 1}(0): 2 1 read as itself
  int m_zero_at_zero = 0;                // m(0, 0)
  int m_two_at_two = 0;                  // m(2, 2 1)
  bool differs_reading_zero = false;
  bool differs_reading_scalar = false;
};
NaiveDetReport naive_det_demo(Stream& rng, const Tolerances& tol = default_tolerances());

}  // namespace socle

#endif  // SOCLE_CHARPOLY_HPP
