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

#ifndef SOCLE_ALGEBRA_HPP
#define SOCLE_ALGEBRA_HPP

#include <cstddef>
#include <vector>

#include "socle/numkernel.hpp"
#include "socle/rng.hpp"
#include "socle/tolerances.hpp"

namespace socle {

/// How the finite block model sits in its ambient algebra.
///
/// `infinite_socle` stands for a finite-rank corner of an algebra whose socle
/// is infinite-dimensional: no element is invertible and 0 belongs to every
/// spectrum.
enum class Ambient { finite, infinite_socle };

/// A = M_{n_1}(C) (+) ... (+) M_{n_k}(C).
struct AlgebraShape {
  std::vector<std::size_t> dims;
  Ambient ambient = Ambient::finite;

  AlgebraShape() = default;
  explicit AlgebraShape(std::vector<std::size_t> d, Ambient amb = Ambient::finite);

  std::size_t num_blocks() const { return dims.size(); }
  std::size_t total_dim() const;
  bool operator==(const AlgebraShape&) const = default;
};

/// An element (a_1, ..., a_k) of an AlgebraShape. Immutable value.
class Element {
 public:
  Element(AlgebraShape shape, std::vector<CMatrix> blocks);

  static Element zero(const AlgebraShape& shape);
  static Element identity(const AlgebraShape& shape);
  static Element scalar(const AlgebraShape& shape, cplx s);

  const AlgebraShape& shape() const { return shape_; }
  std::size_t num_blocks() const { return blocks_.size(); }
  const CMatrix& block(std::size_t j) const { return blocks_[j]; }
  const std::vector<CMatrix>& blocks() const { return blocks_; }

  /// Same blocks, different ambient flag.
  Element with_ambient(Ambient amb) const;

 private:
  AlgebraShape shape_;
  std::vector<CMatrix> blocks_;
};

Element operator+(const Element& a, const Element& b);
Element operator-(const Element& a, const Element& b);
Element operator-(const Element& a);
Element operator*(const Element& a, const Element& b);
Element operator*(cplx s, const Element& a);

/// Throws NotInvertible for a singular block or an infinite_socle ambient.
Element inverse(const Element& a, const Tolerances& tol = default_tolerances());

/// Max over blocks of the Frobenius norm.
double norm(const Element& a);

/// Raw block eigenvalues, concatenated and sorted.
EigenList block_eigenvalues(const Element& a);

/// sigma_A(a): union of block spectra clustered at the default distinctness
/// tolerance. Under infinite_socle, 0 is marked (or adjoined with count 0) as
/// ambient-forced.
ClusteredSpectrum spectrum(const Element& a, const Tolerances& tol = default_tolerances());

/// sigma'_A(a) = sigma_A(a) \ {0}.
ClusteredSpectrum nonzero_spectrum(const Element& a, const Tolerances& tol = default_tolerances());

/// True when some block is singular, or always under infinite_socle.
bool is_singular(const Element& a, const Tolerances& tol = default_tolerances());

/// Hausdorff distance between two finite point sets; 0 when both empty and
/// +inf when exactly one is.
double hausdorff(const ClusteredSpectrum& x, const ClusteredSpectrum& y);

/// An idempotent element, ||p^2 - p|| <= idempotency * (1 + ||p||).
class ProjectionElement {
 public:
  static ProjectionElement make(Element p, const Tolerances& tol = default_tolerances());
  const Element& underlying() const { return p_; }

 private:
  explicit ProjectionElement(Element p) : p_(std::move(p)) {}
  Element p_;
};

/// The corner algebra pAp, realized block by block on an orthonormal basis
/// Q_j of range(p_j). Blocks with p_j = 0 are dropped from the view shape, so
/// the view is M_{r_1} (+) ... over the nonzero ranks r_j = mat_rank(p_j).
class CompressedView {
 public:
  static CompressedView make(const ProjectionElement& p, const Tolerances& tol = default_tolerances());

  const AlgebraShape& ambient_shape() const { return ambient_; }
  const AlgebraShape& view_shape() const { return view_; }
  const ProjectionElement& projection() const { return p_; }
  /// Ambient block index of each view block.
  const std::vector<std::size_t>& block_map() const { return block_map_; }

  /// Q^* (p a p) Q per block.
  Element compress(const Element& a) const;
  /// Q m Q^* per block; inverse of compress on elements with a = p a p.
  Element expand(const Element& v) const;
  /// compress(p), which equals the identity of the view.
  Element identity() const;

 private:
  CompressedView(AlgebraShape ambient, AlgebraShape view, ProjectionElement p,
                 std::vector<std::size_t> map, std::vector<std::vector<cplx>> bases,
                 std::vector<std::size_t> ranks)
      : ambient_(std::move(ambient)),
        view_(std::move(view)),
        p_(std::move(p)),
        block_map_(std::move(map)),
        bases_(std::move(bases)),
        ranks_(std::move(ranks)) {}

  AlgebraShape ambient_;
  AlgebraShape view_;
  ProjectionElement p_;
  std::vector<std::size_t> block_map_;
  // Column-major n_j x r_j basis for each view block.
  std::vector<std::vector<cplx>> bases_;
  std::vector<std::size_t> ranks_;
};

/// Ginibre matrix: i.i.d. standard complex Gaussian entries scaled by 1/sqrt(n).
CMatrix ginibre(std::size_t n, Stream& rng);

/// Ginibre in every block.
Element random_element(const AlgebraShape& shape, Stream& rng);

/// Block j is G_j H_j with G_j of size n_j x r_j and H_j of size r_j x n_j,
/// both Ginibre-scaled; r_j = target_ranks[j].
Element random_socle_element(const AlgebraShape& shape, const std::vector<std::size_t>& target_ranks,
                             Stream& rng);

}  // namespace socle

#endif  // SOCLE_ALGEBRA_HPP
