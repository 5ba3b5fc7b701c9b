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

#ifndef SOCLE_NUMKERNEL_HPP
#define SOCLE_NUMKERNEL_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "socle/tolerances.hpp"

namespace socle {

using cplx = std::complex<double>;

/// Dense square complex matrix, row-major.
///
/// Constructors reject non-finite entries. Arithmetic results are not
/// re-checked; overflow in long products shows up downstream as a
/// non-convergent eigenvalue computation.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t dim);
  CMatrix(std::size_t dim, std::vector<cplx> row_major);

  static CMatrix identity(std::size_t dim);
  static CMatrix diagonal(std::span<const cplx> values);

  std::size_t dim() const { return dim_; }
  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  std::span<const cplx> data() const { return data_; }
  std::span<cplx> data() { return data_; }

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);

  CMatrix transpose() const;
  CMatrix adjoint() const;
  cplx trace() const;
  double frobenius_norm() const;
  bool operator==(const CMatrix& o) const = default;

 private:
  std::size_t dim_ = 0;
  std::vector<cplx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(cplx s, CMatrix a);

/// Eigenvalues repeated by algebraic multiplicity, sorted by (real, imag).
using EigenList = std::vector<cplx>;

struct SpectralPoint {
  cplx value;
  int count = 0;
  // Set when the point was adjoined by an ambient rule rather than computed.
  bool ambient_forced = false;
};

/// Distinct spectral values with algebraic counts at tolerance `tol`.
struct ClusteredSpectrum {
  std::vector<SpectralPoint> points;
  double tol = 0.0;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  int total_count() const;
  /// Index of the point within `tol` of z, or -1.
  int find(cplx z) const;
  /// Points with |value| > tol.
  ClusteredSpectrum nonzero() const;
};

/// All eigenvalues via Hessenberg reduction and shifted complex QR.
/// Throws ConvergenceError after 100 * dim sweeps without deflation.
EigenList eig(const CMatrix& m);

/// Single-linkage clustering at `tol`; each cluster is its count-weighted
/// mean. Means closer than `tol` are merged again until none remain.
ClusteredSpectrum cluster(const EigenList& e, double tol);

double spectral_radius(const EigenList& e);

/// Number of singular values above tol * max(sigma_max, 1).
int mat_rank(const CMatrix& m, double tol);

cplx mat_det(const CMatrix& m);

/// Throws NotInvertible when the LU factorization is numerically singular.
CMatrix mat_inverse(const CMatrix& m, double rank_tol);

/// Polynomial coefficients c[0..deg], p(z) = sum c[k] z^k.
using Coefficients = std::vector<cplx>;

/// Expands prod_i (root_i - z)^{mult_i}.
Coefficients expand_factored(std::span<const cplx> roots, std::span<const int> mults);

/// det(m - z I) as coefficients, built from eig(m).
Coefficients classical_charpoly(const CMatrix& m);

/// Evaluates coefficient form by Horner's rule.
cplx eval_coefficients(const Coefficients& c, cplx z);

/// (2 pi i)^{-1} \oint (zeta I - m)^{-1} d zeta over |zeta - center| = radius,
/// trapezoidal rule with `nodes` equally spaced points.
///
/// Rejects contours passing within 0.1 * radius of an eigenvalue
/// (ContourError with defect 0), then checks the result: ||p^2 - p|| must be
/// at most idempotency * (1 + ||p||) and trace(p) within trace_integrality of
/// an integer, otherwise ContourError carrying the measured ||p^2 - p||.
CMatrix riesz_projection(const CMatrix& m, cplx center, double radius, int nodes,
                         const Tolerances& tol = default_tolerances());

}  // namespace socle

#endif  // SOCLE_NUMKERNEL_HPP
