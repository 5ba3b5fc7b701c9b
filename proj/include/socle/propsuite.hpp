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

#ifndef SOCLE_PROPSUITE_HPP
#define SOCLE_PROPSUITE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "socle/algebra.hpp"
#include "socle/tolerances.hpp"

namespace socle {

enum class PropertyName {
  jacobson,
  lemma_f0,
  lemma_f1,
  lemma_f2,
  lemma_f3,
  lemma_f4,
  cayley_hamilton,
  det_multiplicative,
  sylvester,
  charpoly_continuity,
  multiplicity_consistency,
  diagonalization,
  naive_det_demo,
};

inline constexpr std::array<PropertyName, 13> kAllProperties = {
    PropertyName::jacobson,           PropertyName::lemma_f0,
    PropertyName::lemma_f1,           PropertyName::lemma_f2,
    PropertyName::lemma_f3,           PropertyName::lemma_f4,
    PropertyName::cayley_hamilton,    PropertyName::det_multiplicative,
    PropertyName::sylvester,          PropertyName::charpoly_continuity,
    PropertyName::multiplicity_consistency, PropertyName::diagonalization,
    PropertyName::naive_det_demo,
};

std::string_view property_name(PropertyName p);
std::optional<PropertyName> property_from_name(std::string_view s);
/// Trial count used when a config does not set one.
int default_trials(PropertyName p);

enum class AmbientPolicy { finite, infinite, both };

/// Where trial shapes come from: a fixed list when `shapes` is nonempty,
/// otherwise k in [1, max_blocks] blocks of size in [1, max_dim].
struct ShapePolicy {
  std::vector<std::vector<std::size_t>> shapes;
  std::size_t max_blocks = 4;
  std::size_t max_dim = 6;
  AmbientPolicy ambient = AmbientPolicy::both;

  AlgebraShape draw(Stream& rng) const;
  AlgebraShape draw(Stream& rng, Ambient forced) const;
};

struct PropertySpec {
  PropertyName name;
  int trials = 1;
  ShapePolicy shapes;
  Tolerances tol;
};

enum class TrialStatus { pass, fail, skipped };

struct TrialOutcome {
  TrialStatus status = TrialStatus::pass;
  double measured = 0.0;  // the figure compared against the property's threshold
  nlohmann::json input;   // everything needed to see what was tested
  std::string detail;
};

struct FailureRecord {
  int trial = 0;
  double measured = 0.0;
  std::string detail;
  nlohmann::json input;
};

/// Per-property result. Invariant: pass + fail + skipped = trials.
struct PropertyReport {
  std::string name;
  std::uint64_t seed = 0;
  int trials = 0;
  int pass_count = 0;
  int fail_count = 0;
  int skipped_count = 0;
  double worst_residual = 0.0;
  std::vector<FailureRecord> failures;  // sorted by trial index
  // log10(measured) histogram, bin i covers [kHistLo + i, kHistLo + i + 1); ends are open.
  std::vector<int> histogram;
  nlohmann::json notes;  // descriptive output (naive_det_demo)

  static constexpr int kHistLo = -18;
  static constexpr int kHistBins = 22;

  void record(int trial, const TrialOutcome& o);
  /// Combines reports of disjoint trial ranges of the same property and seed.
  void merge(const PropertyReport& other);
  nlohmann::json to_json() const;
};

/// Runs one trial: the checker for `spec.name` on inputs drawn from
/// `rng.split(trial)`. Pure given (spec, seed, trial).
TrialOutcome run_trial(const PropertySpec& spec, std::uint64_t seed, int trial);

/// Trials [first, last) of a property.
PropertyReport run_property_range(const PropertySpec& spec, std::uint64_t seed, int first, int last);
PropertyReport run_property(const PropertySpec& spec, std::uint64_t seed);

/// Re-runs the trial a failure came from.
TrialOutcome replay(const PropertySpec& spec, std::uint64_t seed, const FailureRecord& f);

struct CampaignConfig {
  std::uint64_t seed = 20260101;
  ShapePolicy shapes;
  std::vector<PropertyName> properties{kAllProperties.begin(), kAllProperties.end()};
  std::optional<int> trials;              // overrides every property
  std::vector<std::pair<PropertyName, int>> trials_per_property;
  Tolerances tol;
};

struct CampaignReport {
  std::uint64_t seed = 0;
  std::vector<PropertyReport> properties;

  int total_failures() const;
  nlohmann::json to_json() const;
  std::string to_csv() const;
};

/// Seed of property p inside a campaign with master seed `seed`.
std::uint64_t property_seed(std::uint64_t seed, PropertyName p);

CampaignReport run_campaign(const CampaignConfig& config);

/// Parses the JSON config schema; throws DomainError on bad fields or tolerances <= 0.
CampaignConfig campaign_config_from_json(const nlohmann::json& j);

}  // namespace socle

#endif  // SOCLE_PROPSUITE_HPP
