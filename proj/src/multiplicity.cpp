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

#include "socle/multiplicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "socle/errors.hpp"

namespace socle {
namespace {

constexpr int kFirstBatch = 5;
constexpr int kSecondBatch = 10;
constexpr int kRejectCap = 200;

bool is_zero_point(cplx z, double tol) { return std::abs(z) <= tol; }

struct Tally {
  std::map<int, int> first, second;
  int settled = -1;
};

bool unanimous(const std::map<int, int>& votes, int expected) {
  return votes.size() == 1 && votes.begin()->second == expected;
}

}  // namespace

double spectral_gap(const ClusteredSpectrum& s) {
  std::vector<cplx> values;
  bool has_zero = false;
  for (const auto& p : s.points) {
    values.push_back(p.value);
    if (is_zero_point(p.value, s.tol)) has_zero = true;
  }
  if (!has_zero) values.push_back(0.0);
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j) gap = std::min(gap, std::abs(values[i] - values[j]));
  return gap;
}

double spectral_gap(const Element& a, const Tolerances& tol) { return spectral_gap(spectrum(a, tol)); }

SpectralData analyze(const Element& a, Stream& rng, const Tolerances& tol) {
  ClusteredSpectrum s = spectrum(a, tol);
  RankCertificate cert = spectral_rank(a, rng, 8, 32, tol);
  if (!cert.certified())
    throw UncertifiedRank("analyze: sampled rank " + std::to_string(cert.rank) + " below oracle " +
                          std::to_string(cert.oracle_rank));
  const double gap = spectral_gap(s);
  return {std::move(s), std::move(cert), gap};
}

std::vector<MultiplicityRecord> multiplicities(const Element& a, const SpectralData& data, Stream& rng,
                                               const Tolerances& tol) {
  const auto& points = data.spectrum.points;
  const double gap = data.gap;
  const double radius = std::isfinite(gap) ? gap / 3.0 : std::numeric_limits<double>::infinity();
  double eps = std::isfinite(gap) ? std::min(gap / (8.0 * (norm(a) + 1.0)), 0.05) : 0.05;
  const Element one = Element::identity(a.shape());

  std::vector<Tally> tallies(points.size());
  int rejected = 0;

  auto draw_counts = [&]() {
    for (;;) {
      const Element x = one + cplx{eps} * random_element(a.shape(), rng);
      const Element xa = x * a;
      if (!assumes_rank_at(a, x, data.cert, tol)) {
        if (++rejected > kRejectCap)
          throw GeneratorExhausted("multiplicity: could not sample x in E(a) near the identity");
        continue;
      }
      const ClusteredSpectrum sx = spectrum(xa, tol);
      std::vector<int> counts(points.size(), 0);
      bool contained = true;
      for (const auto& q : sx.points) {
        bool inside = false;
        for (std::size_t i = 0; i < points.size(); ++i)
          if (std::abs(q.value - points[i].value) < radius) {
            ++counts[i];
            inside = true;
          }
        contained = contained && inside;
      }
      // A defective eigenvalue moves like eps^(1/k); shrink until sigma(xa) stays in the disks.
      if (!contained) {
        eps *= 0.5;
        if (++rejected > kRejectCap)
          throw GeneratorExhausted("multiplicity: perturbed spectrum keeps leaving the counting disks");
        continue;
      }
      return counts;
    }
  };

  for (int s = 0; s < kFirstBatch; ++s) {
    const auto counts = draw_counts();
    for (std::size_t i = 0; i < points.size(); ++i) ++tallies[i].first[counts[i]];
  }
  bool need_second = false;
  for (auto& t : tallies) {
    if (unanimous(t.first, kFirstBatch))
      t.settled = t.first.begin()->first;
    else
      need_second = true;
  }
  if (need_second) {
    for (int s = 0; s < kSecondBatch; ++s) {
      const auto counts = draw_counts();
      for (std::size_t i = 0; i < points.size(); ++i)
        if (tallies[i].settled < 0) ++tallies[i].second[counts[i]];
    }
  }

  std::vector<MultiplicityRecord> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    Tally& t = tallies[i];
    MultiplicityRecord rec;
    rec.lambda = points[i].value;
    rec.disk_radius = radius;
    rec.votes = t.first;
    rec.samples = kFirstBatch;
    if (t.settled < 0) {
      for (const auto& [k, v] : t.second) rec.votes[k] += v;
      rec.samples += kSecondBatch;
      if (!unanimous(t.second, kSecondBatch))
        throw UnstableMultiplicity("multiplicity: counting votes did not settle", rec.votes);
      t.settled = t.second.begin()->first;
    }
    rec.m_counting = t.settled;
    if (!is_zero_point(rec.lambda, data.spectrum.tol))
      rec.m_riesz = multiplicity_riesz(a, data.spectrum, rec.lambda, tol);
    out.push_back(std::move(rec));
  }
  return out;
}

MultiplicityRecord multiplicity(const Element& a, cplx lambda, Stream& rng, const Tolerances& tol) {
  SpectralData data = analyze(a, rng, tol);
  const int idx = data.spectrum.find(lambda);
  if (idx < 0) throw DomainError("multiplicity: lambda is not a spectral value");
  const auto recs = multiplicities(a, data, rng, tol);
  return recs[static_cast<std::size_t>(idx)];
}

int multiplicity_riesz(const Element& a, const ClusteredSpectrum& s, cplx lambda, const Tolerances& tol) {
  if (is_zero_point(lambda, s.tol)) throw DomainError("multiplicity_riesz: lambda must be nonzero");
  if (s.find(lambda) < 0) throw DomainError("multiplicity_riesz: lambda is not a spectral value");
  const double radius = spectral_gap(s) / 2.0;
  double total = 0.0;
  for (const CMatrix& m : a.blocks())
    total += riesz_projection(m, lambda, radius, tol.contour_nodes, tol).trace().real();
  return static_cast<int>(std::lround(total));
}

int multiplicity_riesz(const Element& a, cplx lambda, const Tolerances& tol) {
  return multiplicity_riesz(a, spectrum(a, tol), lambda, tol);
}

int multiplicity_oracle(const Element& a, cplx lambda, const Tolerances& tol) {
  const ClusteredSpectrum s = spectrum(a, tol);
  const int idx = s.find(lambda);
  if (idx < 0) throw DomainError("multiplicity_oracle: lambda is not a spectral value");
  const auto& pt = s.points[static_cast<std::size_t>(idx)];
  if (!is_zero_point(pt.value, s.tol)) return pt.count;
  int nonzero_alg = 0;
  for (const auto& p : s.points)
    if (!is_zero_point(p.value, s.tol)) nonzero_alg += p.count;
  return rank_oracle(a, tol) - nonzero_alg + (is_singular(a, tol) ? 1 : 0);
}

}  // namespace socle
