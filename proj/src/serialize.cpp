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

#include "socle/serialize.hpp"

#include <fstream>

#include "socle/errors.hpp"

namespace socle::io {

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw DomainError("expected a complex scalar as [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const CMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.dim(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw DomainError("matrix must be a nonempty array of rows");
  const std::size_t n = j.size();
  std::vector<cplx> v;
  v.reserve(n * n);
  for (const json& row : j) {
    if (!row.is_array() || row.size() != n) throw DomainError("matrix must be square");
    for (const json& z : row) v.push_back(complex_from_json(z));
  }
  return CMatrix(n, std::move(v));
}

std::string ambient_name(Ambient a) { return a == Ambient::finite ? "finite" : "infinite"; }

Ambient ambient_from_name(const std::string& s) {
  if (s == "finite") return Ambient::finite;
  if (s == "infinite") return Ambient::infinite_socle;
  throw DomainError("unknown ambient '" + s + "' (expected finite or infinite)");
}

json to_json(const AlgebraShape& s) { return {{"dims", s.dims}, {"ambient", ambient_name(s.ambient)}}; }

json to_json(const Element& a) {
  json blocks = json::array();
  for (const CMatrix& m : a.blocks()) blocks.push_back(to_json(m));
  return {{"dims", a.shape().dims}, {"ambient", ambient_name(a.shape().ambient)}, {"blocks", blocks}};
}

Element element_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("blocks"))
    throw DomainError("element JSON needs \"dims\" and \"blocks\"");
  std::vector<std::size_t> dims;
  try {
    dims = j.at("dims").get<std::vector<std::size_t>>();
  } catch (const json::exception&) {
    throw DomainError("\"dims\" must be an array of positive integers");
  }
  const Ambient amb = ambient_from_name(j.value("ambient", std::string("finite")));
  const json& jb = j.at("blocks");
  if (!jb.is_array() || jb.size() != dims.size()) throw DomainError("\"blocks\" must have one entry per dim");
  std::vector<CMatrix> blocks;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    blocks.push_back(matrix_from_json(jb[k]));
    if (blocks.back().dim() != dims[k]) throw DomainError("block dimension does not match \"dims\"");
  }
  return Element(AlgebraShape(dims, amb), std::move(blocks));
}

Element read_element(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open element file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("element file is not valid JSON: ") + e.what());
  }
  return element_from_json(j);
}

void write_element(const Element& a, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path);
  out << to_json(a).dump() << '\n';
}

json to_json(const ClusteredSpectrum& s) {
  json pts = json::array();
  for (const auto& p : s.points)
    pts.push_back({{"value", to_json(p.value)}, {"count", p.count}, {"ambient_forced", p.ambient_forced}});
  return {{"points", pts}, {"tol", s.tol}};
}

json to_json(const RankCertificate& c) {
  return {{"rank", c.rank},
          {"oracle_rank", c.oracle_rank},
          {"certified", c.certified()},
          {"fragile", c.fragile},
          {"samples_used", c.samples_used},
          {"witness", to_json(c.witness)}};
}

json to_json(const MultiplicityRecord& r) {
  json votes = json::object();
  for (const auto& [k, v] : r.votes) votes[std::to_string(k)] = v;
  json j = {{"lambda", to_json(r.lambda)},
            {"m_counting", r.m_counting},
            {"disk_radius", r.disk_radius},
            {"samples", r.samples},
            {"votes", votes}};
  j["m_riesz"] = r.m_riesz ? json(*r.m_riesz) : json(nullptr);
  return j;
}

json to_json(const CharPoly& p) {
  json f = json::array();
  for (const auto& x : p.factors) f.push_back({{"root", to_json(x.root)}, {"mult", x.mult}});
  return {{"factors", f}};
}

CharPoly charpoly_from_json(const json& j) {
  CharPoly p;
  for (const json& f : j.at("factors")) p.factors.push_back({complex_from_json(f.at("root")), f.at("mult").get<int>()});
  return p;
}

json to_json(const ApproximationRecord& r) {
  json steps = json::array();
  for (const auto& s : r.steps)
    steps.push_back({{"m", s.m},
                     {"perturbation", s.perturbation},
                     {"poly_deviation", s.poly_deviation},
                     {"ch_residual", s.ch_residual},
                     {"attempts", s.attempts},
                     {"maximal", s.maximal}});
  return {{"lambda0", to_json(r.lambda0)},
          {"target_value", to_json(r.target_value)},
          {"steps", steps},
          {"aborted", r.aborted},
          {"abort_reason", r.abort_reason}};
}

json to_json(const NaiveDetReport& r) {
  CharPoly pa;
  pa.factors = r.a_factors;
  return {{"element", "a = (1, 1, 0) in C^3"},
          {"p_a", to_json(pa)},
          {"det(a-2*1)", to_json(r.det_a_minus_2)},
          {"det(a/2-1)", to_json(r.det_half_a_minus_1)},
          {"reading_zero",
           {{"det(2*1)", to_json(r.det_two_reading_zero)},
            {"m(0,0)", r.m_zero_at_zero},
            {"product", to_json(r.det_half_a_minus_1 * r.det_two_reading_zero)},
            {"differs", r.differs_reading_zero}}},
          {"reading_scalar",
           {{"det(2*1)", to_json(r.det_two_reading_scalar)},
            {"m(2,2*1)", r.m_two_at_two},
            {"product", to_json(r.det_half_a_minus_1 * r.det_two_reading_scalar)},
            {"differs", r.differs_reading_scalar}}}};
}

}  // namespace socle::io
