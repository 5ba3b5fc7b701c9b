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

#ifndef SOCLE_CLI_HPP
#define SOCLE_CLI_HPP

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "socle/algebra.hpp"
#include "socle/tolerances.hpp"

namespace socle::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPropertyFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// Full single-element analysis: spectrum, rank certificate, multiplicities,
/// generalized and classical characteristic polynomials, Cayley-Hamilton
/// residual, trace and det(a + 1).
nlohmann::json element_report(const Element& a, Stream& rng, const Tolerances& tol = default_tolerances());

/// One of m3_example, zero_example, c3_naive_det, ch_walkthrough.
/// Throws DomainError for an unknown name.
nlohmann::json demo_report(const std::string& name, Stream& rng, const Tolerances& tol = default_tolerances());

/// Entry point of the `socle` executable.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace socle::cli

#endif  // SOCLE_CLI_HPP
