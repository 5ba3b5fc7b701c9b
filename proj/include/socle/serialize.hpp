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

#ifndef SOCLE_SERIALIZE_HPP
#define SOCLE_SERIALIZE_HPP

#include <json.hpp>
#include <string>

#include "socle/algebra.hpp"
#include "socle/charpoly.hpp"
#include "socle/multiplicity.hpp"
#include "socle/rank.hpp"

// JSON forms. Complex scalars are [re, im] pairs; matrices are arrays of rows.
// Element files: {"dims":[...], "ambient":"finite"|"infinite", "blocks":[...]}.
namespace socle::io {

using nlohmann::json;

json to_json(cplx z);
cplx complex_from_json(const json& j);

json to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

json to_json(const AlgebraShape& s);
json to_json(const Element& a);
/// Throws DomainError on malformed input (wrong nesting, mismatched dims, unknown ambient).
Element element_from_json(const json& j);

Element read_element(const std::string& path);
void write_element(const Element& a, const std::string& path);

json to_json(const ClusteredSpectrum& s);
json to_json(const RankCertificate& c);
json to_json(const MultiplicityRecord& r);
json to_json(const CharPoly& p);
CharPoly charpoly_from_json(const json& j);
json to_json(const ApproximationRecord& r);
json to_json(const NaiveDetReport& r);

std::string ambient_name(Ambient a);
Ambient ambient_from_name(const std::string& s);

}  // namespace socle::io

#endif  // SOCLE_SERIALIZE_HPP
