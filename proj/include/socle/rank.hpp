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

#ifndef SOCLE_RANK_HPP
#define SOCLE_RANK_HPP

#include <span>
#include <vector>

#include "socle/algebra.hpp"

namespace socle {

/// Spectral rank found by sampling, with the witness that attained it.
///
/// `rank <= oracle_rank` always holds; equality is the certified state.
/// `fragile` is set when the witness spectrum had a nonzero point within
/// 10 * tol of zero, i.e. the count depended on where the zero threshold sits.
struct RankCertificate {
  int rank = 0;
  Element witness;
  int samples_used = 0;
  int oracle_rank = 0;
  bool fragile = false;

  bool certified() const { return rank == oracle_rank; }
};

/// #sigma'(a).
int count_nonzero_distinct(const Element& a, const Tolerances& tol = default_tolerances());

/// sum_j mat_rank(a_j): the classical rank, used as the independent oracle.
int rank_oracle(const Element& a, const Tolerances& tol = default_tolerances());

/// max #sigma'(x a) over Ginibre samples x. Draws `samples` first and, if the
/// maximum is still below the oracle, keeps drawing up to `escalated` total.
RankCertificate spectral_rank(const Element& a, Stream& rng, int samples = 8, int escalated = 32,
                              const Tolerances& tol = default_tolerances());

/// #sigma'(x a) == rank(a). Throws UncertifiedRank if `cert` is not certified.
bool assumes_rank_at(const Element& a, const Element& x, const RankCertificate& cert,
                     const Tolerances& tol = default_tolerances());

/// a assumes its rank at the identity.
bool is_maximal(const Element& a, const RankCertificate& cert, const Tolerances& tol = default_tolerances());
bool is_maximal(const Element& a, Stream& rng, const Tolerances& tol = default_tolerances());

/// Builds a maximal finite-rank element: block j is S_j diag(eigs assigned to j, 0, ..., 0) S_j^{-1}
/// with random S_j of condition number at most 1e6. `assignment[i]` is the block of eigs[i].
Element make_maximal(const AlgebraShape& shape, std::span<const cplx> nonzero_eigs,
                     std::span<const std::size_t> assignment, Stream& rng,
                     const Tolerances& tol = default_tolerances());

}  // namespace socle

#endif  // SOCLE_RANK_HPP
