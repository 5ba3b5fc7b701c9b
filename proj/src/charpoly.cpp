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

#include "socle/charpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "socle/errors.hpp"

namespace socle {
namespace {

constexpr int kApproxRedrawCap = 20;

Element power(const Element& base, int m) {
  Element out = base;
  for (int k = 1; k < m; ++k) out = out * base;
  return out;
}

}  // namespace

int CharPoly::degree() const {
  int d = 0;
  for (const auto& f : factors) d += f.mult;
  return d;
}

bool CharPoly::has_root(cplx z, double tol) const {
  return std::any_of(factors.begin(), factors.end(), [&](const CharFactor& f) { return std::abs(f.root - z) <= tol; });
}

Coefficients CharPoly::coefficients() const {
  std::vector<cplx> roots;
  std::vector<int> mults;
  for (const auto& f : factors) {
    roots.push_back(f.root);
    mults.push_back(f.mult);
  }
  return expand_factored(roots, mults);
}

CharPoly char_poly(const SpectralData& data, const std::vector<MultiplicityRecord>& mults) {
  CharPoly p;
  p.source_rank = data.cert.rank;
  for (const auto& rec : mults) {
    if (rec.m_counting <= 0)
      throw UnstableMultiplicity("char_poly: spectral value with zero counting multiplicity", rec.votes);
    // The zero cluster is a mean of rounding-level values; pin it so p(0) = 0 exactly.
    const cplx root = std::abs(rec.lambda) <= data.spectrum.tol ? cplx{0.0} : rec.lambda;
    p.factors.push_back({root, rec.m_counting});
  }
  return p;
}

CharPoly char_poly(const Element& a, Stream& rng, const Tolerances& tol) {
  const SpectralData data = analyze(a, rng, tol);
  return char_poly(data, multiplicities(a, data, rng, tol));
}

cplx eval_scalar(const CharPoly& p, cplx z) {
  cplx v = 1.0;
  for (const auto& f : p.factors)
    for (int k = 0; k < f.mult; ++k) v *= (f.root - z);
  return v;
}

Element eval_element(const CharPoly& p, const Element& x, const Element& e) {
  if (x.shape().dims != e.shape().dims) throw ShapeMismatch("eval_element: x and identity differ in shape");
  std::vector<std::size_t> order(p.factors.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return std::abs(p.factors[i].root) > std::abs(p.factors[j].root);
  });
  Element acc = e;
  for (std::size_t i : order) {
    const auto& f = p.factors[i];
    acc = acc * power(f.root * e - x, f.mult);
  }
  return acc;
}

Element eval_element(const CharPoly& p, const Element& x) { return eval_element(p, x, Element::identity(x.shape())); }

double residual_scale(const CharPoly& p, const Element& a) {
  const double na = norm(a);
  double s = 1.0;
  for (const auto& f : p.factors) s *= std::pow(std::abs(f.root) + na, f.mult);
  return std::max(s, 1.0);
}

double cayley_hamilton_residual(const CharPoly& p, const Element& a, const Element& e) {
  return norm(eval_element(p, a, e)) / residual_scale(p, a);
}

double cayley_hamilton_residual(const Element& a, Stream& rng, const Tolerances& tol) {
  const CharPoly p = char_poly(a, rng, tol);
  return cayley_hamilton_residual(p, a, Element::identity(a.shape()));
}

CompressedResidual cayley_hamilton_compressed(const Element& a, Stream& rng, const Tolerances& tol) {
  const std::vector<SpectralTerm> terms = diagonalize_maximal(a, rng, tol);
  Element e = Element::zero(a.shape());
  for (const auto& t : terms) e = e + t.projection.underlying();
  const CompressedView view = CompressedView::make(ProjectionElement::make(e, tol), tol);
  const CharPoly p = char_poly(a, rng, tol);
  if (!p.has_root(0.0, 0.0)) throw DomainError("cayley_hamilton_compressed: element must be singular");
  const Element b = view.compress(a);
  CompressedResidual out;
  out.view_residual = cayley_hamilton_residual(p, b, view.identity());
  out.ambient_residual = cayley_hamilton_residual(p, a, Element::identity(a.shape()));
  out.view_dim = view.view_shape().total_dim();
  return out;
}

cplx trace(const CharPoly& p) {
  cplx s = 0.0;
  for (const auto& f : p.factors) s += f.root * static_cast<double>(f.mult);
  return s;
}

cplx trace(const Element& a, Stream& rng, const Tolerances& tol) { return trace(char_poly(a, rng, tol)); }

cplx det_plus_one(const CharPoly& p, double tol) {
  if (p.has_root(-1.0, tol)) return 0.0;
  cplx v = 1.0;
  for (const auto& f : p.factors)
    for (int k = 0; k < f.mult; ++k) v *= (f.root + 1.0);
  return v;
}

cplx det_plus_one(const Element& a, Stream& rng, const Tolerances& tol) {
  const SpectralData data = analyze(a, rng, tol);
  return det_plus_one(char_poly(data, multiplicities(a, data, rng, tol)), data.spectrum.tol);
}

std::vector<SpectralTerm> diagonalize_maximal(const Element& a, Stream& rng, const Tolerances& tol) {
  const SpectralData data = analyze(a, rng, tol);
  if (data.cert.rank == 0) throw DiagonalizationError("diagonalize_maximal: element is zero");
  if (!is_maximal(a, data.cert, tol)) throw DiagonalizationError("diagonalize_maximal: element is not maximal");

  const double radius = data.gap / 2.0;
  std::vector<SpectralTerm> terms;
  for (const auto& pt : data.spectrum.nonzero().points) {
    std::vector<CMatrix> blocks;
    try {
      for (const CMatrix& m : a.blocks()) blocks.push_back(riesz_projection(m, pt.value, radius, tol.contour_nodes, tol));
      terms.push_back({pt.value, ProjectionElement::make(Element(a.shape(), std::move(blocks)), tol)});
    } catch (const Error& err) {
      throw DiagonalizationError(std::string("diagonalize_maximal: projection failed: ") + err.what());
    }
  }

  Element recon = Element::zero(a.shape());
  for (const auto& t : terms) recon = recon + t.lambda * t.projection.underlying();
  const double defect = norm(a - recon);
  if (defect > 1e-8 * (1.0 + norm(a)))
    throw DiagonalizationError("diagonalize_maximal: reconstruction defect " + std::to_string(defect));
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const Element& pi = terms[i].projection.underlying();
    if (rank_oracle(pi, tol) != 1) throw DiagonalizationError("diagonalize_maximal: projection is not rank one");
    for (std::size_t j = 0; j < terms.size(); ++j) {
      const Element& pj = terms[j].projection.underlying();
      const Element expected = i == j ? pi : Element::zero(a.shape());
      const double err = norm(pi * pj - expected);
      if (err > 1e-8 * (1.0 + norm(pi) * norm(pj)))
        throw DiagonalizationError("diagonalize_maximal: projections are not orthogonal");
    }
  }
  return terms;
}

ApproximationRecord approximation_sequence(const Element& a, int steps, cplx lambda0, Stream& rng,
                                           const Tolerances& tol) {
  if (steps < 3) throw DomainError("approximation_sequence: at least 3 steps required");
  const SpectralData data = analyze(a, rng, tol);
  const CharPoly pa = char_poly(data, multiplicities(a, data, rng, tol));
  ApproximationRecord rec{lambda0, eval_scalar(pa, lambda0), {}, false, {}};
  const Element one = Element::identity(a.shape());
  const int target_rank = data.cert.rank;

  Element direction = random_element(a.shape(), rng);
  for (int m = 1; m <= steps; ++m) {
    const double h = std::ldexp(1.0, -m);
    ApproximationStep step;
    step.m = m;
    step.perturbation = h;
    bool accepted = false;
    for (int attempt = 0; attempt <= kApproxRedrawCap; ++attempt) {
      ++step.attempts;
      const Element x = one + cplx{h} * direction;
      if (assumes_rank_at(a, x, data.cert, tol) && rank_oracle(x * a, tol) == target_rank) {
        accepted = true;
        const Element b = x * a;
        const SpectralData bd = analyze(b, rng, tol);
        const CharPoly pb = char_poly(bd, multiplicities(b, bd, rng, tol));
        step.maximal = is_maximal(b, bd.cert, tol);
        step.poly_deviation = std::abs(eval_scalar(pb, lambda0) - rec.target_value);
        step.ch_residual = cayley_hamilton_residual(pb, b, one);
        break;
      }
      direction = random_element(a.shape(), rng);
    }
    if (!accepted) {
      rec.aborted = true;
      rec.abort_reason = "could not draw x_m in E(a) at step " + std::to_string(m);
      return rec;
    }
    rec.steps.push_back(step);
  }
  return rec;
}

NaiveDetReport naive_det_demo(Stream& rng, const Tolerances& tol) {
  const AlgebraShape c3({1, 1, 1});
  const Element a(c3, {CMatrix::identity(1), CMatrix::identity(1), CMatrix(1)});
  const CharPoly pa = char_poly(a, rng, tol);
  const CharPoly p_half = char_poly(cplx{0.5} * a, rng, tol);
  const CharPoly p_zero = char_poly(Element::zero(c3), rng, tol);
  const CharPoly p_two = char_poly(Element::scalar(c3, 2.0), rng, tol);

  NaiveDetReport r;
  r.a_factors = pa.factors;
  r.det_a_minus_2 = eval_scalar(pa, 2.0);
  r.det_half_a_minus_1 = eval_scalar(p_half, 1.0);
  r.det_two_reading_zero = eval_scalar(p_zero, -2.0);
  r.det_two_reading_scalar = eval_scalar(p_two, 0.0);
  r.m_zero_at_zero = p_zero.factors.at(0).mult;
  r.m_two_at_two = p_two.factors.at(0).mult;
  auto differs = [](cplx x, cplx y) { return std::abs(x - y) > 1e-12 * (1.0 + std::abs(x) + std::abs(y)); };
  r.differs_reading_zero = differs(r.det_a_minus_2, r.det_half_a_minus_1 * r.det_two_reading_zero);
  r.differs_reading_scalar = differs(r.det_a_minus_2, r.det_half_a_minus_1 * r.det_two_reading_scalar);
  return r;
}

}  // namespace socle
