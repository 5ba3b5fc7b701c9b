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

#include "socle/algebra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "socle/errors.hpp"

namespace socle {
namespace {

void require_same_shape(const Element& a, const Element& b, const char* op) {
  if (a.shape().dims != b.shape().dims)
    throw ShapeMismatch(std::string("Element: shape mismatch in ") + op);
}

// The ambient flag of a binary result: infinite wins, since either operand
// already lives in the larger algebra.
AlgebraShape joined(const Element& a, const Element& b) {
  AlgebraShape s = a.shape();
  if (b.shape().ambient == Ambient::infinite_socle) s.ambient = Ambient::infinite_socle;
  return s;
}

using EMatrixCM = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;

}  // namespace

AlgebraShape::AlgebraShape(std::vector<std::size_t> d, Ambient amb) : dims(std::move(d)), ambient(amb) {
  if (dims.empty()) throw DomainError("AlgebraShape: at least one block required");
  for (std::size_t n : dims)
    if (n == 0) throw DomainError("AlgebraShape: block dimensions must be positive");
}

std::size_t AlgebraShape::total_dim() const {
  std::size_t s = 0;
  for (std::size_t n : dims) s += n;
  return s;
}

Element::Element(AlgebraShape shape, std::vector<CMatrix> blocks)
    : shape_(std::move(shape)), blocks_(std::move(blocks)) {
  if (blocks_.size() != shape_.dims.size()) throw ShapeMismatch("Element: block count does not match shape");
  for (std::size_t j = 0; j < blocks_.size(); ++j)
    if (blocks_[j].dim() != shape_.dims[j]) throw ShapeMismatch("Element: block dimension does not match shape");
}

Element Element::zero(const AlgebraShape& shape) { return scalar(shape, 0.0); }
Element Element::identity(const AlgebraShape& shape) { return scalar(shape, 1.0); }

Element Element::scalar(const AlgebraShape& shape, cplx s) {
  std::vector<CMatrix> blocks;
  blocks.reserve(shape.dims.size());
  for (std::size_t n : shape.dims) blocks.push_back(s * CMatrix::identity(n));
  return Element(shape, std::move(blocks));
}

Element Element::with_ambient(Ambient amb) const {
  AlgebraShape s = shape_;
  s.ambient = amb;
  return Element(std::move(s), blocks_);
}

Element operator+(const Element& a, const Element& b) {
  require_same_shape(a, b, "+");
  std::vector<CMatrix> out;
  for (std::size_t j = 0; j < a.num_blocks(); ++j) out.push_back(a.block(j) + b.block(j));
  return Element(joined(a, b), std::move(out));
}

Element operator-(const Element& a, const Element& b) {
  require_same_shape(a, b, "-");
  std::vector<CMatrix> out;
  for (std::size_t j = 0; j < a.num_blocks(); ++j) out.push_back(a.block(j) - b.block(j));
  return Element(joined(a, b), std::move(out));
}

Element operator-(const Element& a) { return cplx{-1.0} * a; }

Element operator*(const Element& a, const Element& b) {
  require_same_shape(a, b, "*");
  std::vector<CMatrix> out;
  for (std::size_t j = 0; j < a.num_blocks(); ++j) out.push_back(a.block(j) * b.block(j));
  return Element(joined(a, b), std::move(out));
}

Element operator*(cplx s, const Element& a) {
  std::vector<CMatrix> out;
  for (const CMatrix& m : a.blocks()) out.push_back(s * m);
  return Element(a.shape(), std::move(out));
}

Element inverse(const Element& a, const Tolerances& tol) {
  if (a.shape().ambient == Ambient::infinite_socle)
    throw NotInvertible("inverse: no element is invertible in an infinite-socle ambient");
  std::vector<CMatrix> out;
  for (const CMatrix& m : a.blocks()) out.push_back(mat_inverse(m, tol.rank_rel));
  return Element(a.shape(), std::move(out));
}

double norm(const Element& a) {
  double r = 0.0;
  for (const CMatrix& m : a.blocks()) r = std::max(r, m.frobenius_norm());
  return r;
}

EigenList block_eigenvalues(const Element& a) {
  EigenList all;
  for (const CMatrix& m : a.blocks()) {
    const EigenList e = eig(m);
    all.insert(all.end(), e.begin(), e.end());
  }
  std::sort(all.begin(), all.end(), [](cplx x, cplx y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return all;
}

ClusteredSpectrum spectrum(const Element& a, const Tolerances& tol) {
  const EigenList e = block_eigenvalues(a);
  ClusteredSpectrum s = cluster(e, tol.cluster_tol(spectral_radius(e)));
  if (a.shape().ambient == Ambient::infinite_socle) {
    const int i = s.find(0.0);
    if (i >= 0) {
      s.points[static_cast<std::size_t>(i)].ambient_forced = true;
    } else {
      s.points.push_back({0.0, 0, true});
      std::sort(s.points.begin(), s.points.end(), [](const SpectralPoint& x, const SpectralPoint& y) {
        return x.value.real() != y.value.real() ? x.value.real() < y.value.real()
                                                : x.value.imag() < y.value.imag();
      });
    }
  }
  return s;
}

ClusteredSpectrum nonzero_spectrum(const Element& a, const Tolerances& tol) {
  return spectrum(a, tol).nonzero();
}

bool is_singular(const Element& a, const Tolerances& tol) {
  if (a.shape().ambient == Ambient::infinite_socle) return true;
  for (const CMatrix& m : a.blocks())
    if (mat_rank(m, tol.rank_rel) < static_cast<int>(m.dim())) return true;
  return false;
}

double hausdorff(const ClusteredSpectrum& x, const ClusteredSpectrum& y) {
  if (x.empty() && y.empty()) return 0.0;
  if (x.empty() || y.empty()) return std::numeric_limits<double>::infinity();
  auto directed = [](const ClusteredSpectrum& from, const ClusteredSpectrum& to) {
    double worst = 0.0;
    for (const auto& p : from.points) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : to.points) best = std::min(best, std::abs(p.value - q.value));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(x, y), directed(y, x));
}

ProjectionElement ProjectionElement::make(Element p, const Tolerances& tol) {
  for (const CMatrix& m : p.blocks()) {
    const double defect = (m * m - m).frobenius_norm();
    if (defect > tol.idempotency * (1.0 + m.frobenius_norm()))
      throw DomainError("ProjectionElement: element is not idempotent (||p^2-p|| = " +
                        std::to_string(defect) + ")");
  }
  return ProjectionElement(std::move(p));
}

CompressedView CompressedView::make(const ProjectionElement& p, const Tolerances& tol) {
  const Element& e = p.underlying();
  std::vector<std::size_t> view_dims, map, ranks;
  std::vector<std::vector<cplx>> bases;
  for (std::size_t j = 0; j < e.num_blocks(); ++j) {
    const CMatrix& pj = e.block(j);
    const int r = mat_rank(pj, tol.rank_rel);
    if (r == 0) continue;
    const auto n = static_cast<Eigen::Index>(pj.dim());
    EMatrixCM pm(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index k = 0; k < n; ++k) pm(i, k) = pj(static_cast<std::size_t>(i), static_cast<std::size_t>(k));
    Eigen::ColPivHouseholderQR<EMatrixCM> qr(pm);
    qr.setThreshold(tol.rank_rel);
    if (qr.rank() < r) throw DomainError("CompressedView: basis of range(p) is rank deficient");
    const EMatrixCM q = qr.householderQ() * EMatrixCM::Identity(n, r);
    bases.emplace_back(q.data(), q.data() + q.size());
    view_dims.push_back(static_cast<std::size_t>(r));
    map.push_back(j);
    ranks.push_back(static_cast<std::size_t>(r));
  }
  if (view_dims.empty()) throw DomainError("CompressedView: projection is zero");
  AlgebraShape view(view_dims, Ambient::finite);
  return CompressedView(e.shape(), std::move(view), p, std::move(map), std::move(bases), std::move(ranks));
}

Element CompressedView::compress(const Element& a) const {
  if (a.shape().dims != ambient_.dims) throw ShapeMismatch("compress: element shape differs from ambient");
  const Element& p = p_.underlying();
  std::vector<CMatrix> out;
  for (std::size_t v = 0; v < block_map_.size(); ++v) {
    const std::size_t j = block_map_[v];
    const std::size_t n = ambient_.dims[j], r = ranks_[v];
    const CMatrix pap = p.block(j) * a.block(j) * p.block(j);
    const std::vector<cplx>& q = bases_[v];  // column-major n x r
    CMatrix m(r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < r; ++k) {
        cplx s = 0.0;
        for (std::size_t s1 = 0; s1 < n; ++s1) {
          cplx inner = 0.0;
          for (std::size_t s2 = 0; s2 < n; ++s2) inner += pap(s1, s2) * q[k * n + s2];
          s += std::conj(q[i * n + s1]) * inner;
        }
        m(i, k) = s;
      }
    out.push_back(std::move(m));
  }
  return Element(view_, std::move(out));
}

Element CompressedView::expand(const Element& v) const {
  if (v.shape().dims != view_.dims) throw ShapeMismatch("expand: element shape differs from view");
  std::vector<CMatrix> out;
  for (std::size_t n : ambient_.dims) out.emplace_back(n);
  for (std::size_t b = 0; b < block_map_.size(); ++b) {
    const std::size_t j = block_map_[b];
    const std::size_t n = ambient_.dims[j], r = ranks_[b];
    const std::vector<cplx>& q = bases_[b];
    CMatrix& dst = out[j];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        cplx s = 0.0;
        for (std::size_t s1 = 0; s1 < r; ++s1)
          for (std::size_t s2 = 0; s2 < r; ++s2)
            s += q[s1 * n + i] * v.block(b)(s1, s2) * std::conj(q[s2 * n + k]);
        dst(i, k) = s;
      }
  }
  return Element(ambient_, std::move(out));
}

Element CompressedView::identity() const { return compress(p_.underlying()); }

CMatrix ginibre(std::size_t n, Stream& rng) {
  std::vector<cplx> v(n * n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (cplx& z : v) z = scale * rng.complex_normal();
  return CMatrix(n, std::move(v));
}

Element random_element(const AlgebraShape& shape, Stream& rng) {
  std::vector<CMatrix> blocks;
  for (std::size_t n : shape.dims) blocks.push_back(ginibre(n, rng));
  return Element(shape, std::move(blocks));
}

Element random_socle_element(const AlgebraShape& shape, const std::vector<std::size_t>& target_ranks,
                             Stream& rng) {
  if (target_ranks.size() != shape.dims.size()) throw ShapeMismatch("random_socle_element: ranks per block");
  std::vector<CMatrix> blocks;
  for (std::size_t j = 0; j < shape.dims.size(); ++j) {
    const std::size_t n = shape.dims[j], r = target_ranks[j];
    if (r > n) throw DomainError("random_socle_element: target rank exceeds block dimension");
    CMatrix m(n);
    if (r > 0) {
      const double scale = 1.0 / std::sqrt(static_cast<double>(n));
      std::vector<cplx> g(n * r), h(r * n);
      for (cplx& z : g) z = scale * rng.complex_normal();
      for (cplx& z : h) z = scale * rng.complex_normal();
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
          cplx s = 0.0;
          for (std::size_t t = 0; t < r; ++t) s += g[i * r + t] * h[t * n + k];
          m(i, k) = s;
        }
    }
    blocks.push_back(std::move(m));
  }
  return Element(shape, std::move(blocks));
}

}  // namespace socle
