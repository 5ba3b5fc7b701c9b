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

#include "socle/propsuite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "socle/charpoly.hpp"
#include "socle/errors.hpp"
#include "socle/multiplicity.hpp"
#include "socle/rank.hpp"
#include "socle/serialize.hpp"

namespace socle {
namespace {

using nlohmann::json;

constexpr int kFilterAttempts = 24;
constexpr double kEigSeparation = 0.05;

struct NamedProperty {
  PropertyName id;
  std::string_view name;
  int trials;
};

constexpr std::array<NamedProperty, 13> kTable = {{
    {PropertyName::jacobson, "jacobson", 500},
    {PropertyName::lemma_f0, "lemma_f0", 200},
    {PropertyName::lemma_f1, "lemma_f1", 200},
    {PropertyName::lemma_f2, "lemma_f2", 200},
    {PropertyName::lemma_f3, "lemma_f3", 200},
    {PropertyName::lemma_f4, "lemma_f4", 100},
    {PropertyName::cayley_hamilton, "cayley_hamilton", 1000},
    {PropertyName::det_multiplicative, "det_multiplicative", 300},
    {PropertyName::sylvester, "sylvester", 300},
    {PropertyName::charpoly_continuity, "charpoly_continuity", 50},
    {PropertyName::multiplicity_consistency, "multiplicity_consistency", 500},
    {PropertyName::diagonalization, "diagonalization", 200},
    {PropertyName::naive_det_demo, "naive_det_demo", 1},
}};

std::size_t index_of(PropertyName p) {
  for (std::size_t i = 0; i < kTable.size(); ++i)
    if (kTable[i].id == p) return i;
  return 0;
}

// ---------------------------------------------------------------------------
// Input generators

std::vector<std::size_t> random_ranks(const AlgebraShape& shape, Stream& rng) {
  std::vector<std::size_t> r;
  for (std::size_t n : shape.dims) r.push_back(static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(n))));
  return r;
}

Element random_socle(const AlgebraShape& shape, Stream& rng) {
  return random_socle_element(shape, random_ranks(shape, rng), rng);
}

std::vector<cplx> distinct_eigs(std::size_t count, Stream& rng) {
  std::vector<cplx> out;
  while (out.size() < count) {
    const cplx z = std::polar(rng.uniform(0.3, 2.0), rng.uniform(0.0, 2.0 * 3.141592653589793));
    bool ok = std::abs(z + 1.0) >= kEigSeparation;
    for (const cplx& w : out) ok = ok && std::abs(z - w) >= kEigSeparation;
    if (ok) out.push_back(z);
  }
  return out;
}

// Maximal by construction: c_j eigenvalues in block j (c_j = n_j for full rank).
Element constructed_maximal(const AlgebraShape& shape, Stream& rng, bool full_rank, bool nonzero) {
  std::vector<std::size_t> assignment;
  for (;;) {
    assignment.clear();
    for (std::size_t j = 0; j < shape.num_blocks(); ++j) {
      const int n = static_cast<int>(shape.dims[j]);
      const int c = full_rank ? n : rng.uniform_int(0, n);
      for (int i = 0; i < c; ++i) assignment.push_back(j);
    }
    if (!nonzero || !assignment.empty()) break;
  }
  const std::vector<cplx> eigs = distinct_eigs(assignment.size(), rng);
  return make_maximal(shape, eigs, assignment, rng);
}

struct Generated {
  Element a;
  std::string path;
};

// Alternates construction and rejection filtering of random elements by trial parity.
Generated maximal_input(const AlgebraShape& shape, Stream& rng, int trial, bool invertible, const Tolerances& tol) {
  if (trial % 2 == 0) return {constructed_maximal(shape, rng, invertible, true), "construct"};
  for (int attempt = 0; attempt < kFilterAttempts; ++attempt) {
    Element a = invertible ? random_element(shape, rng) : random_socle(shape, rng);
    if (rank_oracle(a, tol) == 0) continue;
    if (invertible && is_singular(a, tol)) continue;
    if (is_maximal(a, rng, tol)) return {std::move(a), "filter"};
  }
  throw GeneratorExhausted("no maximal element passed the random filter");
}

// A block equal to diag(values) with a single nilpotent Jordan chain in its top-left 2x2 corner.
CMatrix jordan_corner(std::size_t n, const std::vector<cplx>& tail) {
  CMatrix m(n);
  m(0, 1) = 1.0;
  for (std::size_t i = 0; i < tail.size() && i + 2 < n; ++i) m(i + 2, i + 2) = tail[i];
  return m;
}

// Non-maximal on purpose: a repeated nonzero eigenvalue, or a nilpotent 2x2
// Jordan chain (rank contributed, no nonzero spectral value).
Generated non_maximal_input(const AlgebraShape& shape, Stream& rng, const Tolerances& tol) {
  std::vector<std::size_t> big;
  for (std::size_t j = 0; j < shape.num_blocks(); ++j)
    if (shape.dims[j] >= 2) big.push_back(j);
  const bool can_jordan = !big.empty();
  const bool use_jordan = can_jordan && rng.uniform() < 0.5;

  if (use_jordan) {
    const std::size_t jb = big[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(big.size()) - 1))];
    // Remaining eigenvalues: distinct values, some zeros, spread over all blocks.
    std::vector<int> tail_slots(shape.num_blocks(), 0);
    for (std::size_t j = 0; j < shape.num_blocks(); ++j) {
      const int cap = static_cast<int>(shape.dims[j]) - (j == jb ? 2 : 0);
      tail_slots[j] = rng.uniform_int(0, cap);
    }
    std::size_t total = 0;
    for (int c : tail_slots) total += static_cast<std::size_t>(c);
    const std::vector<cplx> eigs = distinct_eigs(total, rng);
    std::vector<CMatrix> blocks;
    std::size_t next = 0;
    for (std::size_t j = 0; j < shape.num_blocks(); ++j) {
      std::vector<cplx> mine(eigs.begin() + static_cast<std::ptrdiff_t>(next),
                             eigs.begin() + static_cast<std::ptrdiff_t>(next + static_cast<std::size_t>(tail_slots[j])));
      next += static_cast<std::size_t>(tail_slots[j]);
      if (j == jb) {
        blocks.push_back(jordan_corner(shape.dims[j], mine));
      } else {
        std::vector<std::size_t> assign(mine.size(), 0);
        blocks.push_back(make_maximal(AlgebraShape({shape.dims[j]}), mine, assign, rng, tol).block(0));
      }
    }
    return {Element(shape, std::move(blocks)), "jordan"};
  }

  // Repeated eigenvalue mu placed twice: in two blocks, or twice within one block.
  std::vector<std::size_t> slots;
  for (std::size_t j = 0; j < shape.num_blocks(); ++j)
    for (std::size_t i = 0; i < shape.dims[j]; ++i) slots.push_back(j);
  for (std::size_t i = slots.size(); i > 1; --i)
    std::swap(slots[i - 1], slots[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(i) - 1))]);
  const int used = rng.uniform_int(2, static_cast<int>(slots.size()));
  std::vector<cplx> eigs = distinct_eigs(static_cast<std::size_t>(used - 1), rng);
  eigs.push_back(eigs.front());
  std::vector<std::vector<cplx>> per_block(shape.num_blocks());
  for (int i = 0; i < used; ++i) per_block[slots[static_cast<std::size_t>(i)]].push_back(eigs[static_cast<std::size_t>(i)]);
  std::vector<CMatrix> blocks;
  for (std::size_t j = 0; j < shape.num_blocks(); ++j) {
    const std::size_t n = shape.dims[j];
    std::vector<cplx> d(n, 0.0);
    std::copy(per_block[j].begin(), per_block[j].end(), d.begin());
    if (per_block[j].empty()) {
      blocks.emplace_back(n);
      continue;
    }
    const CMatrix s = CMatrix::identity(n) + ginibre(n, rng);
    blocks.push_back(s * CMatrix::diagonal(d) * mat_inverse(s, tol.rank_rel));
  }
  return {Element(shape, std::move(blocks)), "repeated"};
}

AlgebraShape shape_with_room(const ShapePolicy& policy, Stream& rng, std::size_t min_total) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    AlgebraShape s = policy.draw(rng);
    if (s.total_dim() >= min_total) return s;
  }
  throw GeneratorExhausted("shape policy produced no shape of total dimension >= " + std::to_string(min_total));
}

// ---------------------------------------------------------------------------
// Checkers

TrialOutcome pass_or_fail(bool ok, double measured, json input, std::string detail = {}) {
  return {ok ? TrialStatus::pass : TrialStatus::fail, measured, std::move(input), std::move(detail)};
}

TrialOutcome check_jacobson(const PropertySpec& spec, Stream& rng) {
  const AlgebraShape shape = spec.shapes.draw(rng);
  const Element a = random_socle(shape, rng);
  const Element x = random_element(shape, rng);
  const ClusteredSpectrum s1 = nonzero_spectrum(x * a, spec.tol);
  const ClusteredSpectrum s2 = nonzero_spectrum(a * x, spec.tol);
  const double d = hausdorff(s1, s2);
  const double tau = std::max(s1.tol, s2.tol);
  const bool ok = s1.size() == s2.size() && d <= 10.0 * tau;
  return pass_or_fail(ok, d, {{"a", io::to_json(a)}, {"x", io::to_json(x)}},
                      "|s'(xa)|=" + std::to_string(s1.size()) + " |s'(ax)|=" + std::to_string(s2.size()));
}

struct CompressionInput {
  Element b;
  Element p;
  Element x;
  std::vector<int> chosen;
};

CompressionInput compression_input(const PropertySpec& spec, Stream& rng) {
  const AlgebraShape shape = spec.shapes.draw(rng);
  const Element b = constructed_maximal(shape, rng, false, true);
  const auto terms = diagonalize_maximal(b, rng, spec.tol);
  std::vector<int> chosen;
  Element p = Element::zero(shape);
  while (chosen.empty()) {
    for (std::size_t i = 0; i < terms.size(); ++i)
      if (rng.uniform() < 0.6) chosen.push_back(static_cast<int>(i));
  }
  for (int i : chosen) p = p + terms[static_cast<std::size_t>(i)].projection.underlying();
  return {b, p, random_element(shape, rng), chosen};
}

json compression_json(const CompressionInput& in) {
  return {{"b", io::to_json(in.b)}, {"p", io::to_json(in.p)}, {"x", io::to_json(in.x)}, {"chosen", in.chosen}};
}

TrialOutcome check_lemma_f0(const PropertySpec& spec, Stream& rng) {
  const CompressionInput in = compression_input(spec, rng);
  const CompressedView view = CompressedView::make(ProjectionElement::make(in.p, spec.tol), spec.tol);
  const Element pxp = in.p * in.x * in.p;
  const ClusteredSpectrum amb = nonzero_spectrum(pxp, spec.tol);
  const ClusteredSpectrum sub = nonzero_spectrum(view.compress(in.x), spec.tol);
  const double d = hausdorff(amb, sub);
  const bool ok = amb.size() == sub.size() && d <= 10.0 * std::max(amb.tol, sub.tol);
  return pass_or_fail(ok, d, compression_json(in),
                      "|ambient|=" + std::to_string(amb.size()) + " |view|=" + std::to_string(sub.size()));
}

TrialOutcome check_lemma_f1(const PropertySpec& spec, Stream& rng) {
  const CompressionInput in = compression_input(spec, rng);
  const CompressedView view = CompressedView::make(ProjectionElement::make(in.p, spec.tol), spec.tol);
  const Element pxp = in.p * in.x * in.p;
  const RankCertificate amb = spectral_rank(pxp, rng, 8, 32, spec.tol);
  const RankCertificate sub = spectral_rank(view.compress(in.x), rng, 8, 32, spec.tol);
  const bool ok = amb.certified() && sub.certified() && amb.rank == sub.rank;
  return pass_or_fail(ok, std::abs(amb.rank - sub.rank), compression_json(in),
                      "rank_A=" + std::to_string(amb.rank) + "/" + std::to_string(amb.oracle_rank) +
                          " rank_pAp=" + std::to_string(sub.rank) + "/" + std::to_string(sub.oracle_rank));
}

TrialOutcome check_lemma_f2(const PropertySpec& spec, Stream& rng, int trial) {
  const AlgebraShape shape = spec.shapes.draw(rng);
  const Generated g = maximal_input(shape, rng, trial, false, spec.tol);
  const double tau = spectrum(g.a, spec.tol).tol;
  std::vector<ClusteredSpectrum> per_block;
  for (const CMatrix& m : g.a.blocks()) per_block.push_back(cluster(eig(m), tau).nonzero());
  double min_sep = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < per_block.size(); ++i)
    for (std::size_t j = i + 1; j < per_block.size(); ++j)
      for (const auto& p : per_block[i].points)
        for (const auto& q : per_block[j].points) min_sep = std::min(min_sep, std::abs(p.value - q.value));
  // measured = tau / separation; disjointness at tolerance tau means measured < 1.
  const double measured = std::isfinite(min_sep) ? tau / min_sep : 0.0;
  return pass_or_fail(min_sep > tau, measured, {{"a", io::to_json(g.a)}, {"path", g.path}},
                      "min block separation " + std::to_string(min_sep));
}

TrialOutcome check_lemma_f3(const PropertySpec& spec, Stream& rng, int trial) {
  const AlgebraShape shape = spec.shapes.draw(rng);
  const Generated g = maximal_input(shape, rng, trial, false, spec.tol);
  int mismatch = 0;
  std::string detail;
  for (std::size_t j = 0; j < g.a.num_blocks(); ++j) {
    const Element aj(AlgebraShape({shape.dims[j]}), {g.a.block(j)});
    const RankCertificate c = spectral_rank(aj, rng, 8, 32, spec.tol);
    const int distinct = count_nonzero_distinct(aj, spec.tol);
    if (!c.certified() || distinct != c.rank) {
      mismatch += std::abs(distinct - c.rank) + (c.certified() ? 0 : 1);
      detail += "block " + std::to_string(j) + ": #s'=" + std::to_string(distinct) + " rank=" +
                std::to_string(c.rank) + "/" + std::to_string(c.oracle_rank) + "; ";
    }
  }
  return pass_or_fail(mismatch == 0, mismatch, {{"a", io::to_json(g.a)}, {"path", g.path}}, detail);
}

Coefficients poly_mul(const Coefficients& x, const Coefficients& y) {
  Coefficients out(x.size() + y.size() - 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
  return out;
}

TrialOutcome check_lemma_f4(const PropertySpec& spec, Stream& rng, int trial) {
  const AlgebraShape shape = spec.shapes.draw(rng, Ambient::finite);
  const Generated g = maximal_input(shape, rng, trial, true, spec.tol);
  const Coefficients gen = char_poly(g.a, rng, spec.tol).coefficients();
  Coefficients classical{1.0};
  for (const CMatrix& m : g.a.blocks()) classical = poly_mul(classical, classical_charpoly(m));
  json in = {{"a", io::to_json(g.a)}, {"path", g.path}};
  if (gen.size() != classical.size())
    return pass_or_fail(false, std::numeric_limits<double>::infinity(), in,
                        "degree " + std::to_string(gen.size() - 1) + " vs " + std::to_string(classical.size() - 1));
  double scale = 1.0, diff = 0.0;
  for (std::size_t k = 0; k < gen.size(); ++k) {
    scale = std::max(scale, std::abs(classical[k]));
    diff = std::max(diff, std::abs(gen[k] - classical[k]));
  }
  const double rel = diff / scale;
  return pass_or_fail(rel <= 1e-8, rel, in);
}

TrialOutcome check_cayley_hamilton(const PropertySpec& spec, Stream& rng, int trial) {
  // Every fourth trial takes the non-maximal branch on purpose.
  const bool non_maximal = trial % 4 == 3;
  const AlgebraShape shape = non_maximal ? shape_with_room(spec.shapes, rng, 2) : spec.shapes.draw(rng);
  const Generated g = non_maximal ? non_maximal_input(shape, rng, spec.tol) : Generated{random_socle(shape, rng), "socle"};
  const SpectralData data = analyze(g.a, rng, spec.tol);
  const CharPoly p = char_poly(data, multiplicities(g.a, data, rng, spec.tol));
  double worst = cayley_hamilton_residual(p, g.a, Element::identity(shape));
  std::string detail = "ambient residual " + std::to_string(worst);
  if (data.cert.rank > 0 && is_singular(g.a, spec.tol) && is_maximal(g.a, data.cert, spec.tol)) {
    const CompressedResidual c = cayley_hamilton_compressed(g.a, rng, spec.tol);
    worst = std::max({worst, c.view_residual, c.ambient_residual});
    detail += "; view residual " + std::to_string(c.view_residual);
  }
  return pass_or_fail(worst <= spec.tol.residual, worst,
                      {{"a", io::to_json(g.a)}, {"path", g.path}, {"p_a", io::to_json(p)}}, detail);
}

double relative_gap(cplx x, cplx y) {
  const double scale = std::max(std::abs(x), std::abs(y));
  return scale == 0.0 ? 0.0 : std::abs(x - y) / scale;
}

TrialOutcome check_det_multiplicative(const PropertySpec& spec, Stream& rng) {
  const AlgebraShape shape = spec.shapes.draw(rng);
  const Element a = random_socle(shape, rng);
  const Element b = random_socle(shape, rng);
  // (a + 1)(b + 1) = (a + b + ab) + 1
  const cplx lhs = det_plus_one(a + b + a * b, rng, spec.tol);
  const cplx rhs = det_plus_one(a, rng, spec.tol) * det_plus_one(b, rng, spec.tol);
  const double rel = relative_gap(lhs, rhs);
  return pass_or_fail(rel <= 1e-8, rel, {{"a", io::to_json(a)}, {"b", io::to_json(b)}});
}

TrialOutcome check_sylvester(const PropertySpec& spec, Stream& rng) {
  const AlgebraShape shape = spec.shapes.draw(rng);
  const Element a = random_socle(shape, rng);
  const Element b = random_socle(shape, rng);
  const double rel = relative_gap(det_plus_one(a * b, rng, spec.tol), det_plus_one(b * a, rng, spec.tol));
  return pass_or_fail(rel <= 1e-8, rel, {{"a", io::to_json(a)}, {"b", io::to_json(b)}});
}

TrialOutcome check_continuity(const PropertySpec& spec, Stream& rng) {
  const AlgebraShape shape = shape_with_room(spec.shapes, rng, 2);
  const Generated g = non_maximal_input(shape, rng, spec.tol);
  const ApproximationRecord rec = approximation_sequence(g.a, 6, 3.0, rng, spec.tol);
  json in = {{"a", io::to_json(g.a)}, {"path", g.path}, {"record", io::to_json(rec)}};
  if (rec.aborted) return pass_or_fail(false, std::numeric_limits<double>::infinity(), in, rec.abort_reason);
  const double d2 = rec.steps[1].poly_deviation, d6 = rec.steps[5].poly_deviation;
  const double ratio = d2 > 0 ? d6 / d2 : (d6 > 0 ? std::numeric_limits<double>::infinity() : 0.0);
  double worst_ch = 0.0;
  bool all_maximal = true;
  for (const auto& s : rec.steps) {
    worst_ch = std::max(worst_ch, s.ch_residual);
    all_maximal = all_maximal && s.maximal;
  }
  const bool ok = ratio <= 0.5 && worst_ch <= spec.tol.residual && all_maximal;
  return pass_or_fail(ok, ratio, in,
                      "d6/d2=" + std::to_string(ratio) + " worst CH=" + std::to_string(worst_ch) +
                          (all_maximal ? "" : " (non-maximal x_m a)"));
}

TrialOutcome check_multiplicity(const PropertySpec& spec, Stream& rng, int trial) {
  Generated g{Element::zero(AlgebraShape({1})), ""};
  switch (trial % 3) {
    case 0: {
      const AlgebraShape s = spec.shapes.draw(rng);
      g = {random_socle(s, rng), "socle"};
      break;
    }
    case 1:
      g = non_maximal_input(shape_with_room(spec.shapes, rng, 2), rng, spec.tol);
      break;
    default: {
      const AlgebraShape s = spec.shapes.draw(rng);
      g = {constructed_maximal(s, rng, false, false), "construct"};
    }
  }
  const SpectralData data = analyze(g.a, rng, spec.tol);
  const auto recs = multiplicities(g.a, data, rng, spec.tol);
  const bool maximal = is_maximal(g.a, data.cert, spec.tol);
  int mismatches = 0, total = 0;
  std::string detail;
  json rec_json = json::array();
  for (const auto& r : recs) {
    rec_json.push_back(io::to_json(r));
    total += r.m_counting;
    const int oracle = multiplicity_oracle(g.a, r.lambda, spec.tol);
    bool ok = r.m_counting == oracle;
    if (r.m_riesz) ok = ok && *r.m_riesz == r.m_counting;
    if (maximal) ok = ok && r.m_counting == 1;
    if (!ok) {
      ++mismatches;
      detail += "lambda=(" + std::to_string(r.lambda.real()) + "," + std::to_string(r.lambda.imag()) +
                ") counting=" + std::to_string(r.m_counting) + " oracle=" + std::to_string(oracle) +
                (r.m_riesz ? " riesz=" + std::to_string(*r.m_riesz) : "") + "; ";
    }
  }
  if (total > data.cert.rank + 1) {
    ++mismatches;
    detail += "sum m = " + std::to_string(total) + " > rank + 1; ";
  }
  return pass_or_fail(mismatches == 0, mismatches,
                      {{"a", io::to_json(g.a)}, {"path", g.path}, {"records", rec_json}}, detail);
}

TrialOutcome check_diagonalization(const PropertySpec& spec, Stream& rng) {
  const AlgebraShape shape = spec.shapes.draw(rng);
  const Element a = constructed_maximal(shape, rng, false, true);
  json in = {{"a", io::to_json(a)}};
  try {
    const auto terms = diagonalize_maximal(a, rng, spec.tol);
    Element recon = Element::zero(shape);
    for (const auto& t : terms) recon = recon + t.lambda * t.projection.underlying();
    const double rel = norm(a - recon) / (1.0 + norm(a));
    const bool ok = static_cast<int>(terms.size()) == rank_oracle(a, spec.tol);
    return pass_or_fail(ok, rel, in, std::to_string(terms.size()) + " terms");
  } catch (const DiagonalizationError& e) {
    return pass_or_fail(false, std::numeric_limits<double>::infinity(), in, e.what());
  }
}

TrialOutcome check_naive_det(const PropertySpec& spec, Stream& rng) {
  const NaiveDetReport r = naive_det_demo(rng, spec.tol);
  // Descriptive: the only assertion is that the displayed quantity is computed consistently.
  const double d = std::abs(r.det_a_minus_2 - cplx{-2.0});
  return pass_or_fail(d <= 1e-12, d, io::to_json(r));
}

TrialOutcome dispatch(const PropertySpec& spec, Stream& rng, int trial) {
  switch (spec.name) {
    case PropertyName::jacobson: return check_jacobson(spec, rng);
    case PropertyName::lemma_f0: return check_lemma_f0(spec, rng);
    case PropertyName::lemma_f1: return check_lemma_f1(spec, rng);
    case PropertyName::lemma_f2: return check_lemma_f2(spec, rng, trial);
    case PropertyName::lemma_f3: return check_lemma_f3(spec, rng, trial);
    case PropertyName::lemma_f4: return check_lemma_f4(spec, rng, trial);
    case PropertyName::cayley_hamilton: return check_cayley_hamilton(spec, rng, trial);
    case PropertyName::det_multiplicative: return check_det_multiplicative(spec, rng);
    case PropertyName::sylvester: return check_sylvester(spec, rng);
    case PropertyName::charpoly_continuity: return check_continuity(spec, rng);
    case PropertyName::multiplicity_consistency: return check_multiplicity(spec, rng, trial);
    case PropertyName::diagonalization: return check_diagonalization(spec, rng);
    case PropertyName::naive_det_demo: return check_naive_det(spec, rng);
  }
  throw DomainError("unknown property");
}

double get_positive(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw DomainError(std::string("tolerance '") + key + "' must be a number");
  const double v = j[key].get<double>();
  if (!(v > 0)) throw DomainError(std::string("tolerance '") + key + "' must be > 0");
  return v;
}

}  // namespace

std::string_view property_name(PropertyName p) { return kTable[index_of(p)].name; }

std::optional<PropertyName> property_from_name(std::string_view s) {
  for (const auto& e : kTable)
    if (e.name == s) return e.id;
  return std::nullopt;
}

int default_trials(PropertyName p) { return kTable[index_of(p)].trials; }

AlgebraShape ShapePolicy::draw(Stream& rng) const {
  Ambient amb = Ambient::finite;
  if (ambient == AmbientPolicy::infinite) amb = Ambient::infinite_socle;
  if (ambient == AmbientPolicy::both) amb = rng.uniform() < 0.5 ? Ambient::finite : Ambient::infinite_socle;
  return draw(rng, amb);
}

AlgebraShape ShapePolicy::draw(Stream& rng, Ambient forced) const {
  if (!shapes.empty()) {
    const auto& d = shapes[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(shapes.size()) - 1))];
    return AlgebraShape(d, forced);
  }
  const int k = rng.uniform_int(1, static_cast<int>(max_blocks));
  std::vector<std::size_t> dims;
  for (int i = 0; i < k; ++i) dims.push_back(static_cast<std::size_t>(rng.uniform_int(1, static_cast<int>(max_dim))));
  return AlgebraShape(dims, forced);
}

void PropertyReport::record(int trial, const TrialOutcome& o) {
  ++trials;
  if (histogram.empty()) histogram.assign(kHistBins, 0);
  switch (o.status) {
    case TrialStatus::pass: ++pass_count; break;
    case TrialStatus::fail: ++fail_count; break;
    case TrialStatus::skipped: ++skipped_count; return;
  }
  if (std::isnan(o.measured) || o.measured > worst_residual) worst_residual = o.measured;
  int bin = 0;
  if (o.measured > 0 && std::isfinite(o.measured))
    bin = std::clamp(static_cast<int>(std::floor(std::log10(o.measured))) - kHistLo, 0, kHistBins - 1);
  else if (!std::isfinite(o.measured))
    bin = kHistBins - 1;
  ++histogram[static_cast<std::size_t>(bin)];
  if (o.status == TrialStatus::fail) failures.push_back({trial, o.measured, o.detail, o.input});
}

void PropertyReport::merge(const PropertyReport& other) {
  trials += other.trials;
  pass_count += other.pass_count;
  fail_count += other.fail_count;
  skipped_count += other.skipped_count;
  worst_residual = std::max(worst_residual, other.worst_residual);
  if (histogram.empty()) histogram.assign(kHistBins, 0);
  for (std::size_t i = 0; i < other.histogram.size(); ++i) histogram[i] += other.histogram[i];
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  std::sort(failures.begin(), failures.end(), [](const FailureRecord& x, const FailureRecord& y) { return x.trial < y.trial; });
  if (notes.is_null()) notes = other.notes;
}

json PropertyReport::to_json() const {
  json f = json::array();
  for (const auto& r : failures)
    f.push_back({{"trial", r.trial}, {"measured", r.measured}, {"detail", r.detail}, {"input", r.input}});
  json j = {{"name", name},
            {"seed", seed},
            {"trials", trials},
            {"pass_count", pass_count},
            {"fail_count", fail_count},
            {"skipped_count", skipped_count},
            {"worst_residual", worst_residual},
            {"histogram", histogram.empty() ? std::vector<int>(kHistBins, 0) : histogram},
            {"histogram_log10_lo", kHistLo},
            {"failures", f}};
  if (!notes.is_null()) j["notes"] = notes;
  return j;
}

TrialOutcome run_trial(const PropertySpec& spec, std::uint64_t seed, int trial) {
  Stream rng = Stream(seed).split(static_cast<std::uint64_t>(trial));
  try {
    return dispatch(spec, rng, trial);
  } catch (const GeneratorExhausted& e) {
    return {TrialStatus::skipped, 0.0, json::object(), e.what()};
  } catch (const Error& e) {
    return {TrialStatus::fail, std::numeric_limits<double>::infinity(), json::object(), e.what()};
  }
}

PropertyReport run_property_range(const PropertySpec& spec, std::uint64_t seed, int first, int last) {
  PropertyReport r;
  r.name = std::string(property_name(spec.name));
  r.seed = seed;
  r.histogram.assign(PropertyReport::kHistBins, 0);
  for (int t = first; t < last; ++t) {
    const TrialOutcome o = run_trial(spec, seed, t);
    r.record(t, o);
    if (spec.name == PropertyName::naive_det_demo && r.notes.is_null()) r.notes = o.input;
  }
  return r;
}

PropertyReport run_property(const PropertySpec& spec, std::uint64_t seed) {
  if (spec.trials < 0) throw DomainError("run_property: trials must be >= 0");
  return run_property_range(spec, seed, 0, spec.trials);
}

TrialOutcome replay(const PropertySpec& spec, std::uint64_t seed, const FailureRecord& f) {
  return run_trial(spec, seed, f.trial);
}

int CampaignReport::total_failures() const {
  int n = 0;
  for (const auto& p : properties) n += p.fail_count;
  return n;
}

json CampaignReport::to_json() const {
  json props = json::array();
  int pass = 0, fail = 0, skipped = 0;
  for (const auto& p : properties) {
    props.push_back(p.to_json());
    pass += p.pass_count;
    fail += p.fail_count;
    skipped += p.skipped_count;
  }
  return {{"seed", seed}, {"summary", {{"pass", pass}, {"fail", fail}, {"skipped", skipped}}}, {"properties", props}};
}

std::string CampaignReport::to_csv() const {
  std::ostringstream out;
  out << "property,log10_lo,log10_hi,count\n";
  for (const auto& p : properties)
    for (int i = 0; i < PropertyReport::kHistBins; ++i) {
      const int c = p.histogram.empty() ? 0 : p.histogram[static_cast<std::size_t>(i)];
      out << p.name << ',' << PropertyReport::kHistLo + i << ',' << PropertyReport::kHistLo + i + 1 << ',' << c << '\n';
    }
  return out.str();
}

std::uint64_t property_seed(std::uint64_t seed, PropertyName p) {
  return Stream(seed).split(0x70726f70ULL + index_of(p)).key();
}

CampaignReport run_campaign(const CampaignConfig& config) {
  if (!config.tol.valid()) throw DomainError("run_campaign: all tolerances must be > 0");
  CampaignReport report;
  report.seed = config.seed;
  std::vector<PropertyName> props = config.properties;
  std::sort(props.begin(), props.end(), [](PropertyName x, PropertyName y) { return index_of(x) < index_of(y); });
  props.erase(std::unique(props.begin(), props.end()), props.end());
  for (PropertyName p : props) {
    PropertySpec spec{p, default_trials(p), config.shapes, config.tol};
    for (const auto& [name, n] : config.trials_per_property)
      if (name == p) spec.trials = n;
    if (config.trials) spec.trials = std::min(*config.trials, p == PropertyName::naive_det_demo ? 1 : *config.trials);
    report.properties.push_back(run_property(spec, property_seed(config.seed, p)));
  }
  return report;
}

CampaignConfig campaign_config_from_json(const json& j) {
  if (!j.is_object()) throw DomainError("config must be a JSON object");
  CampaignConfig c;
  try {
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("shapes")) {
      c.shapes.shapes = j["shapes"].get<std::vector<std::vector<std::size_t>>>();
      for (const auto& s : c.shapes.shapes) AlgebraShape check(s);
    }
    if (j.contains("max_blocks")) c.shapes.max_blocks = j["max_blocks"].get<std::size_t>();
    if (j.contains("max_dim")) c.shapes.max_dim = j["max_dim"].get<std::size_t>();
    if (c.shapes.max_blocks == 0 || c.shapes.max_dim == 0) throw DomainError("max_blocks and max_dim must be >= 1");
    if (j.contains("ambient")) {
      const std::string a = j["ambient"].get<std::string>();
      if (a == "finite") c.shapes.ambient = AmbientPolicy::finite;
      else if (a == "infinite") c.shapes.ambient = AmbientPolicy::infinite;
      else if (a == "both") c.shapes.ambient = AmbientPolicy::both;
      else throw DomainError("ambient must be finite, infinite or both");
    }
    if (j.contains("properties")) {
      c.properties.clear();
      for (const auto& n : j["properties"]) {
        const auto p = property_from_name(n.get<std::string>());
        if (!p) throw DomainError("unknown property '" + n.get<std::string>() + "'");
        c.properties.push_back(*p);
      }
    }
    if (j.contains("trials")) {
      const json& t = j["trials"];
      if (t.is_number_integer()) {
        if (t.get<int>() < 0) throw DomainError("trials must be >= 0");
        c.trials = t.get<int>();
      } else if (t.is_object()) {
        for (const auto& [k, v] : t.items()) {
          const auto p = property_from_name(k);
          if (!p) throw DomainError("unknown property '" + k + "' in trials");
          if (v.get<int>() < 0) throw DomainError("trials must be >= 0");
          c.trials_per_property.emplace_back(*p, v.get<int>());
        }
      } else {
        throw DomainError("trials must be an integer or an object");
      }
    }
    if (j.contains("tolerances")) {
      const json& t = j["tolerances"];
      c.tol.cluster_rel = get_positive(t, "cluster", c.tol.cluster_rel);
      c.tol.cluster_rel = get_positive(t, "cluster_rel", c.tol.cluster_rel);
      c.tol.cluster_floor = get_positive(t, "cluster_floor", c.tol.cluster_floor);
      c.tol.rank_rel = get_positive(t, "rank_rel", c.tol.rank_rel);
      c.tol.residual = get_positive(t, "residual", c.tol.residual);
      c.tol.idempotency = get_positive(t, "idempotency", c.tol.idempotency);
      c.tol.trace_integrality = get_positive(t, "trace_integrality", c.tol.trace_integrality);
      c.tol.contour_nodes = static_cast<int>(get_positive(t, "contour_nodes", c.tol.contour_nodes));
    }
  } catch (const json::exception& e) {
    throw DomainError(std::string("config: ") + e.what());
  }
  if (!c.tol.valid()) throw DomainError("config: invalid tolerances");
  return c;
}

}  // namespace socle
