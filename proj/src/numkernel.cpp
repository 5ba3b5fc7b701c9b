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

#include "socle/numkernel.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "socle/errors.hpp"
#include "socle/kernels.hpp"

namespace socle {
namespace {

using EMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using EMap = Eigen::Map<const EMatrix>;

EMap view(const CMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.dim());
  return EMap(m.data().data(), n, n);
}

CMatrix from_eigen(const EMatrix& e) {
  const auto n = static_cast<std::size_t>(e.rows());
  CMatrix out(n);
  std::copy(e.data(), e.data() + n * n, out.data().begin());
  return out;
}

bool lex_less(cplx a, cplx b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

CMatrix::CMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, cplx{0.0, 0.0}) {}

CMatrix::CMatrix(std::size_t dim, std::vector<cplx> row_major)
    : dim_(dim), data_(std::move(row_major)) {
  if (data_.size() != dim_ * dim_) throw ShapeMismatch("CMatrix: entry count is not dim*dim");
  for (const cplx& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw DomainError("CMatrix: non-finite entry");
  }
}

CMatrix CMatrix::identity(std::size_t dim) {
  CMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const cplx> values) {
  CMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (o.dim_ != dim_) throw ShapeMismatch("CMatrix: dimension mismatch in +");
  kernels::axpy(1.0, o.data_.data(), data_.data(), data_.size());
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  if (o.dim_ != dim_) throw ShapeMismatch("CMatrix: dimension mismatch in -");
  kernels::axpy(-1.0, o.data_.data(), data_.data(), data_.size());
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (cplx& z : data_) z *= s;
  return *this;
}

CMatrix CMatrix::transpose() const {
  CMatrix t(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

CMatrix CMatrix::adjoint() const {
  CMatrix t(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) t(j, i) = std::conj((*this)(i, j));
  return t;
}

cplx CMatrix::trace() const {
  cplx s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) s += (*this)(i, i);
  return s;
}

double CMatrix::frobenius_norm() const {
  return std::sqrt(kernels::sum_abs2(data_.data(), data_.size()));
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator-(CMatrix a) { return a *= -1.0; }
CMatrix operator*(cplx s, CMatrix a) { return a *= s; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != b.dim()) throw ShapeMismatch("CMatrix: dimension mismatch in *");
  CMatrix c(a.dim());
  kernels::matmul(a.data().data(), b.data().data(), c.data().data(), a.dim());
  return c;
}

int ClusteredSpectrum::total_count() const {
  int s = 0;
  for (const auto& p : points) s += p.count;
  return s;
}

int ClusteredSpectrum::find(cplx z) const {
  int best = -1;
  double best_d = tol;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d = std::abs(points[i].value - z);
    if (d <= best_d) {
      best_d = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

ClusteredSpectrum ClusteredSpectrum::nonzero() const {
  ClusteredSpectrum out;
  out.tol = tol;
  for (const auto& p : points)
    if (std::abs(p.value) > tol) out.points.push_back(p);
  return out;
}

EigenList eig(const CMatrix& m) {
  const std::size_t n = m.dim();
  if (n == 0) return {};
  if (n == 1) return {m(0, 0)};
  Eigen::ComplexEigenSolver<EMatrix> solver;
  solver.setMaxIterations(static_cast<Eigen::Index>(100 * n));
  solver.compute(view(m), /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("eig: shifted QR did not converge within 100*dim sweeps");
  EigenList out(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

ClusteredSpectrum cluster(const EigenList& e, double tol) {
  if (!(tol > 0)) throw DomainError("cluster: tolerance must be positive");
  const std::size_t n = e.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(e[i] - e[j]) <= tol) parent[root(i)] = root(j);

  std::vector<SpectralPoint> pts;
  std::vector<std::size_t> rep;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = root(i);
    auto it = std::find(rep.begin(), rep.end(), r);
    if (it == rep.end()) {
      rep.push_back(r);
      pts.push_back({e[i], 1, false});
    } else {
      auto& p = pts[static_cast<std::size_t>(it - rep.begin())];
      p.value += e[i];
      ++p.count;
    }
  }
  for (auto& p : pts) p.value /= static_cast<double>(p.count);

  // A long chain can put two means within tol of each other; merge those too.
  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t i = 0; i < pts.size() && !merged; ++i)
      for (std::size_t j = i + 1; j < pts.size() && !merged; ++j)
        if (std::abs(pts[i].value - pts[j].value) <= tol) {
          const double ci = pts[i].count, cj = pts[j].count;
          pts[i].value = (ci * pts[i].value + cj * pts[j].value) / (ci + cj);
          pts[i].count += pts[j].count;
          pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(j));
          merged = true;
        }
  }
  std::sort(pts.begin(), pts.end(),
            [](const SpectralPoint& a, const SpectralPoint& b) { return lex_less(a.value, b.value); });
  return {std::move(pts), tol};
}

double spectral_radius(const EigenList& e) {
  double r = 0.0;
  for (const cplx& z : e) r = std::max(r, std::abs(z));
  return r;
}

int mat_rank(const CMatrix& m, double tol) {
  if (!(tol > 0)) throw DomainError("mat_rank: tolerance must be positive");
  if (m.dim() == 0) return 0;
  Eigen::JacobiSVD<EMatrix> svd(view(m));
  const auto& s = svd.singularValues();
  const double threshold = tol * std::max(s(0), 1.0);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > threshold) ++r;
  return r;
}

cplx mat_det(const CMatrix& m) {
  if (m.dim() == 0) return 1.0;
  return Eigen::PartialPivLU<EMatrix>(view(m)).determinant();
}

CMatrix mat_inverse(const CMatrix& m, double rank_tol) {
  if (mat_rank(m, rank_tol) < static_cast<int>(m.dim()))
    throw NotInvertible("mat_inverse: matrix is numerically singular");
  return from_eigen(Eigen::PartialPivLU<EMatrix>(view(m)).inverse());
}

Coefficients expand_factored(std::span<const cplx> roots, std::span<const int> mults) {
  if (roots.size() != mults.size()) throw ShapeMismatch("expand_factored: roots/mults length");
  Coefficients c{1.0};
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (int k = 0; k < mults[i]; ++k) {
      // multiply by (root - z)
      Coefficients next(c.size() + 1, 0.0);
      for (std::size_t d = 0; d < c.size(); ++d) {
        next[d] += roots[i] * c[d];
        next[d + 1] -= c[d];
      }
      c = std::move(next);
    }
  }
  return c;
}

Coefficients classical_charpoly(const CMatrix& m) {
  const EigenList e = eig(m);
  const std::vector<int> ones(e.size(), 1);
  return expand_factored(e, ones);
}

cplx eval_coefficients(const Coefficients& c, cplx z) {
  cplx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

CMatrix riesz_projection(const CMatrix& m, cplx center, double radius, int nodes,
                         const Tolerances& tol) {
  if (!(radius > 0)) throw DomainError("riesz_projection: radius must be positive");
  if (nodes < 16) throw DomainError("riesz_projection: at least 16 nodes required");
  const std::size_t n = m.dim();
  for (const cplx& z : eig(m)) {
    if (std::abs(std::abs(z - center) - radius) < 0.1 * radius)
      throw ContourError("riesz_projection: contour too close to spectrum", 0.0);
  }

  // With zeta_k = c + r w_k, d zeta = i r w_k d theta, so the rule reduces to
  // (1/N) sum_k r w_k (zeta_k I - m)^{-1}.
  CMatrix p(n);
  const EMap mm = view(m);
  const EMatrix eye = EMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (int k = 0; k < nodes; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / nodes;
    const cplx w = std::polar(1.0, theta);
    const cplx zeta = center + radius * w;
    const EMatrix resolvent = Eigen::PartialPivLU<EMatrix>(zeta * eye - mm).inverse();
    kernels::axpy(radius * w / static_cast<double>(nodes), resolvent.data(), p.data().data(), n * n);
  }

  const double defect = (p * p - p).frobenius_norm();
  if (defect > tol.idempotency * (1.0 + p.frobenius_norm()))
    throw ContourError("riesz_projection: contour too close to spectrum (||p^2-p|| = " +
                           std::to_string(defect) + ")",
                       defect);
  const double tr = p.trace().real();
  if (std::abs(tr - std::round(tr)) > tol.trace_integrality || std::abs(p.trace().imag()) > tol.trace_integrality)
    throw ContourError("riesz_projection: trace is not an integer", defect);
  return p;
}

}  // namespace socle
