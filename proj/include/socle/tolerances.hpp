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

#ifndef SOCLE_TOLERANCES_HPP
#define SOCLE_TOLERANCES_HPP

#include <algorithm>

namespace socle {

/// Every numeric threshold used by the library lives here.
///
/// The distinctness tolerance for a spectrum of radius rho is
/// `max(cluster_floor, cluster_rel * rho)`; the same value decides whether a
/// spectral point counts as zero.
struct Tolerances {
  double cluster_rel = 1e-8;
  double cluster_floor = 1e-9;
  // Singular values at or below rank_rel * max(sigma_max, 1) are treated as zero.
  double rank_rel = 1e-9;
  // Normalized Cayley-Hamilton residual accepted as zero.
  double residual = 1e-6;
  double idempotency = 1e-8;
  double trace_integrality = 1e-6;
  int contour_nodes = 64;

  double cluster_tol(double spectral_radius) const {
    return std::max(cluster_floor, cluster_rel * spectral_radius);
  }

  bool valid() const {
    return cluster_rel > 0 && cluster_floor > 0 && rank_rel > 0 && residual > 0 &&
           idempotency > 0 && trace_integrality > 0 && contour_nodes >= 16;
  }
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

}  // namespace socle

#endif  // SOCLE_TOLERANCES_HPP
