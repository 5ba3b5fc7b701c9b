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

#include "socle/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>

#include "socle/charpoly.hpp"
#include "socle/errors.hpp"
#include "socle/kernels.hpp"
#include "socle/propsuite.hpp"
#include "socle/serialize.hpp"

namespace socle::cli {
namespace {

using nlohmann::json;

json coefficients_json(const Coefficients& c) {
  json out = json::array();
  for (const cplx& z : c) out.push_back(io::to_json(z));
  return out;
}

Coefficients blockwise_classical(const Element& a) {
  Coefficients acc{1.0};
  for (const CMatrix& m : a.blocks()) {
    const Coefficients c = classical_charpoly(m);
    Coefficients next(acc.size() + c.size() - 1, 0.0);
    for (std::size_t i = 0; i < acc.size(); ++i)
      for (std::size_t j = 0; j < c.size(); ++j) next[i + j] += acc[i] * c[j];
    acc = std::move(next);
  }
  return acc;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw DomainError("cannot write " + path);
  f << text;
}

void apply_tolerance_flags(Tolerances& tol, const std::optional<double>& cluster, const std::optional<double>& residual) {
  if (cluster) {
    if (!(*cluster > 0)) throw DomainError("--tol-cluster must be > 0");
    tol.cluster_rel = *cluster;
  }
  if (residual) {
    if (!(*residual > 0)) throw DomainError("--tol-residual must be > 0");
    tol.residual = *residual;
  }
}

std::string flatten_csv(const json& j, const std::string& prefix = {}) {
  std::string out;
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) out += flatten_csv(v, prefix.empty() ? k : prefix + "." + k);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) out += flatten_csv(j[i], prefix + "." + std::to_string(i));
  } else {
    out += prefix + "," + j.dump() + "\n";
  }
  return out;
}

Element element_from_diag(std::vector<std::vector<cplx>> diags, Ambient amb = Ambient::finite) {
  std::vector<std::size_t> dims;
  std::vector<CMatrix> blocks;
  for (const auto& d : diags) {
    dims.push_back(d.size());
    blocks.push_back(CMatrix::diagonal(d));
  }
  return Element(AlgebraShape(dims, amb), std::move(blocks));
}

}  // namespace

json element_report(const Element& a, Stream& rng, const Tolerances& tol) {
  const SpectralData data = analyze(a, rng, tol);
  const auto mults = multiplicities(a, data, rng, tol);
  const CharPoly p = char_poly(data, mults);
  const Coefficients classical = blockwise_classical(a);

  json mj = json::array();
  for (const auto& r : mults) {
    json rec = io::to_json(r);
    rec["m_oracle"] = multiplicity_oracle(a, r.lambda, tol);
    mj.push_back(std::move(rec));
  }
  json pj = io::to_json(p);
  pj["degree"] = p.degree();
  pj["coefficients"] = coefficients_json(p.coefficients());
  pj["constant_term_zero"] = eval_scalar(p, 0.0) == cplx{0.0};

  const Coefficients gen = p.coefficients();
  bool same = gen.size() == classical.size();
  for (std::size_t k = 0; same && k < gen.size(); ++k)
    same = std::abs(gen[k] - classical[k]) <= 1e-9 * (1.0 + std::abs(classical[k]));

  json j;
  j["element"] = io::to_json(a);
  j["spectrum"] = io::to_json(data.spectrum);
  j["nonzero_spectrum"] = io::to_json(data.spectrum.nonzero());
  j["rank"] = io::to_json(data.cert);
  j["rank"].erase("witness");
  j["maximal"] = is_maximal(a, data.cert, tol);
  j["spectral_gap"] = std::isfinite(data.gap) ? json(data.gap) : json(nullptr);
  j["multiplicities"] = mj;
  j["charpoly"] = pj;
  j["classical_charpoly"] = {{"degree", static_cast<int>(classical.size()) - 1},
                             {"coefficients", coefficients_json(classical)},
                             {"equals_generalized", same}};
  const Element pa = eval_element(p, a);
  j["cayley_hamilton"] = {{"residual", norm(pa) / residual_scale(p, a)},
                          {"raw_norm", norm(pa)},
                          {"scale", residual_scale(p, a)}};
  j["trace"] = io::to_json(trace(p));
  j["det_plus_one"] = io::to_json(det_plus_one(p, data.spectrum.tol));
  return j;
}

json demo_report(const std::string& name, Stream& rng, const Tolerances& tol) {
  if (name == "m3_example") {
    const Element a = element_from_diag({{1.0, 0.0, 0.0}});
    json r = element_report(a, rng, tol);
    return {{"demo", name},
            {"element", "diag(1, 0, 0) in M_3(C)"},
            {"generalized", r["charpoly"]},
            {"classical", r["classical_charpoly"]},
            {"multiplicities", r["multiplicities"]},
            {"rank", r["rank"]["rank"]},
            {"degree_generalized", r["charpoly"]["degree"]},
            {"degree_classical", r["classical_charpoly"]["degree"]},
            {"differ", !r["classical_charpoly"]["equals_generalized"].get<bool>()},
            {"cayley_hamilton_residual", r["cayley_hamilton"]["residual"]}};
  }
  if (name == "zero_example") {
    const Element a = Element::zero(AlgebraShape({3}));
    const CharPoly p = char_poly(a, rng, tol);
    const Element pa = eval_element(p, a);
    bool exact_zero = true;
    for (const CMatrix& m : pa.blocks())
      for (const cplx& z : m.data()) exact_zero = exact_zero && z == cplx{0.0};
    json pj = io::to_json(p);
    pj["coefficients"] = coefficients_json(p.coefficients());
    pj["degree"] = p.degree();
    return {{"demo", name},
            {"element", "0 in M_3(C)"},
            {"generalized", pj},
            {"classical_degree", 3},
            {"p_a(a)_norm", norm(pa)},
            {"p_a(a)_exactly_zero", exact_zero}};
  }
  if (name == "c3_naive_det") {
    json j = io::to_json(naive_det_demo(rng, tol));
    j["demo"] = name;
    return j;
  }
  if (name == "ch_walkthrough") {
    CMatrix nil(2);
    nil(0, 1) = 1.0;
    const Element a(AlgebraShape({2, 1}), {nil, CMatrix::diagonal(std::vector<cplx>{2.0})});
    json r = element_report(a, rng, tol);
    return {{"demo", name},
            {"element", "[[0,1],[0,0]] (+) [2] in M_2(C) (+) C"},
            {"maximal", r["maximal"]},
            {"rank", r["rank"]["rank"]},
            {"generalized", r["charpoly"]},
            {"cayley_hamilton", r["cayley_hamilton"]},
            {"approximation", io::to_json(approximation_sequence(a, 6, 3.0, rng, tol))}};
  }
  throw DomainError("unknown demo '" + name + "' (m3_example, zero_example, c3_naive_det, ch_walkthrough)");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral rank, multiplicity and generalized characteristic polynomials in finite block algebras"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "socle 0.1.0");

  // gen
  auto* gen = app.add_subcommand("gen", "Write a random element file");
  std::vector<std::size_t> gen_dims;
  std::vector<std::size_t> gen_ranks;
  std::vector<double> gen_eigs, gen_eigs_imag;
  std::vector<std::size_t> gen_assign;
  bool gen_zero = false;
  std::string gen_ambient = "finite", gen_out;
  std::uint64_t gen_seed = 1;
  gen->add_option("--dims", gen_dims, "Block dimensions, e.g. 3,2")->required()->delimiter(',');
  gen->add_option("--ranks", gen_ranks, "Per-block rank of a random socle element")->delimiter(',');
  gen->add_option("--eigs", gen_eigs, "Real parts of distinct nonzero eigenvalues of a maximal element")->delimiter(',');
  gen->add_option("--eigs-imag", gen_eigs_imag, "Imaginary parts matching --eigs")->delimiter(',');
  gen->add_option("--assign", gen_assign, "Block index of each eigenvalue (default: fill blocks in order)")->delimiter(',');
  gen->add_flag("--zero", gen_zero, "Write the zero element");
  gen->add_option("--ambient", gen_ambient, "finite or infinite")->check(CLI::IsMember({"finite", "infinite"}));
  gen->add_option("--seed", gen_seed, "Random seed");
  gen->add_option("--out", gen_out, "Output path (default stdout)");

  // check
  auto* check = app.add_subcommand("check", "Analyze one element file");
  std::string check_file, check_out, check_format = "json";
  std::uint64_t check_seed = 1;
  std::optional<double> check_tol_cluster, check_tol_residual;
  check->add_option("file", check_file, "Element JSON file")->required();
  check->add_option("--seed", check_seed, "Random seed");
  check->add_option("--out", check_out, "Output path (default stdout)");
  check->add_option("--format", check_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  check->add_option("--tol-cluster", check_tol_cluster, "Relative clustering tolerance");
  check->add_option("--tol-residual", check_tol_residual, "Cayley-Hamilton residual threshold");

  // campaign
  auto* campaign = app.add_subcommand("campaign", "Run the property campaign");
  std::string camp_config, camp_out, camp_format;
  std::optional<std::uint64_t> camp_seed;
  std::optional<int> camp_trials;
  std::optional<double> camp_tol_cluster, camp_tol_residual;
  campaign->add_option("--config", camp_config, "JSON config file");
  campaign->add_option("--seed", camp_seed, "Master seed");
  campaign->add_option("--trials", camp_trials, "Trials for every property");
  campaign->add_option("--out", camp_out, "Report path (default stdout)");
  campaign->add_option("--format", camp_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  campaign->add_option("--tol-cluster", camp_tol_cluster, "Relative clustering tolerance");
  campaign->add_option("--tol-residual", camp_tol_residual, "Cayley-Hamilton residual threshold");

  // demo
  auto* demo = app.add_subcommand("demo", "Print a worked example");
  std::string demo_name, demo_out;
  std::uint64_t demo_seed = 1;
  demo->add_option("name", demo_name, "m3_example | zero_example | c3_naive_det | ch_walkthrough")
      ->required()
      ->check(CLI::IsMember({"m3_example", "zero_example", "c3_naive_det", "ch_walkthrough"}));
  demo->add_option("--seed", demo_seed, "Random seed");
  demo->add_option("--out", demo_out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) {
      AlgebraShape shape(gen_dims, io::ambient_from_name(gen_ambient));
      Stream rng(gen_seed);
      std::optional<Element> a;
      if (gen_zero) {
        a = Element::zero(shape);
      } else if (!gen_eigs.empty()) {
        if (!gen_eigs_imag.empty() && gen_eigs_imag.size() != gen_eigs.size())
          throw DomainError("--eigs-imag must match --eigs in length");
        std::vector<cplx> eigs;
        for (std::size_t i = 0; i < gen_eigs.size(); ++i)
          eigs.emplace_back(gen_eigs[i], gen_eigs_imag.empty() ? 0.0 : gen_eigs_imag[i]);
        std::vector<std::size_t> assign = gen_assign;
        if (assign.empty()) {
          std::size_t block = 0, used = 0;
          for (std::size_t i = 0; i < eigs.size(); ++i) {
            while (block < shape.num_blocks() && used == shape.dims[block]) {
              ++block;
              used = 0;
            }
            if (block == shape.num_blocks()) throw DomainError("more eigenvalues than total dimension");
            assign.push_back(block);
            ++used;
          }
        }
        a = make_maximal(shape, eigs, assign, rng);
      } else {
        std::vector<std::size_t> ranks = gen_ranks;
        if (ranks.empty()) ranks = shape.dims;
        a = random_socle_element(shape, ranks, rng);
      }
      emit(io::to_json(*a).dump() + "\n", gen_out, out);
      return kExitOk;
    }

    if (*check) {
      Tolerances tol;
      apply_tolerance_flags(tol, check_tol_cluster, check_tol_residual);
      const Element a = io::read_element(check_file);
      Stream rng(check_seed);
      const json report = element_report(a, rng, tol);
      emit(check_format == "csv" ? flatten_csv(report) : report.dump(2) + "\n", check_out, out);
      return kExitOk;
    }

    if (*campaign) {
      json file = json::object();
      if (!camp_config.empty()) {
        std::ifstream in(camp_config);
        if (!in) throw DomainError("cannot open config " + camp_config);
        try {
          in >> file;
        } catch (const json::parse_error& e) {
          throw DomainError(std::string("config is not valid JSON: ") + e.what());
        }
      }
      CampaignConfig cfg = campaign_config_from_json(file);
      std::string out_path = file.value("out", std::string());
      std::string format = file.value("format", std::string("json"));
      if (camp_seed) cfg.seed = *camp_seed;
      if (camp_trials) {
        if (*camp_trials < 0) throw DomainError("--trials must be >= 0");
        cfg.trials = *camp_trials;
      }
      apply_tolerance_flags(cfg.tol, camp_tol_cluster, camp_tol_residual);
      if (!camp_out.empty()) out_path = camp_out;
      if (!camp_format.empty()) format = camp_format;
      if (format != "json" && format != "csv") throw DomainError("format must be json or csv");

      const CampaignReport report = run_campaign(cfg);
      emit(format == "csv" ? report.to_csv() : report.to_json().dump(2) + "\n", out_path, out);
      for (const auto& p : report.properties)
        err << p.name << ": " << p.pass_count << " pass, " << p.fail_count << " fail, " << p.skipped_count
            << " skipped\n";
      return report.total_failures() == 0 ? kExitOk : kExitPropertyFailure;
    }

    if (*demo) {
      Stream rng(demo_seed);
      emit(demo_report(demo_name, rng).dump(2) + "\n", demo_out, out);
      return kExitOk;
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ShapeMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}

}  // namespace socle::cli
