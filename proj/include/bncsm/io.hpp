#pragma once

#include "bncsm/fock.hpp"
#include "bncsm/params.hpp"
#include "bncsm/partition.hpp"
#include "bncsm/spectrum.hpp"
#include "bncsm/sympoly.hpp"

#include <nlohmann/json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace bncsm {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline json partition_to_json(const Partition& mu) { return json(mu.parts()); }

inline Partition partition_from_json(const json& j) {
  return Partition(j.get<std::vector<int>>());
}

/// {"n_vars": N, "tag": "Y"|"X", "terms": [{"partition": [...], "coeff": "p/q"}, ...]}
inline json to_json(const SymPoly& p) {
  json terms = json::array();
  for (const auto& [mu, c] : p.terms()) {
    terms.push_back({{"partition", partition_to_json(mu)}, {"coeff", to_string(c)}});
  }
  return {{"n_vars", p.n_vars()}, {"tag", to_string(p.tag())}, {"terms", std::move(terms)}};
}

inline SymPoly sympoly_from_json(const json& j) {
  const std::string tag = j.at("tag").get<std::string>();
  if (tag != "Y" && tag != "X") throw std::invalid_argument("SymPoly tag must be Y or X");
  SymPoly p(j.at("n_vars").get<std::size_t>(), tag == "Y" ? VarTag::Y : VarTag::X);
  for (const auto& term : j.at("terms")) {
    p.add_term(partition_from_json(term.at("partition")),
               parse_rational(term.at("coeff").get<std::string>()));
  }
  return p;
}

inline json to_json(const ModelParams& params) {
  return {{"n_particles", params.n_particles},
          {"lambda", to_string(params.lambda)},
          {"lambda1", to_string(params.lambda1)},
          {"alpha", to_string(params.alpha)},
          {"ground_energy", to_string(params.ground_energy())}};
}

/// {"params": {...}, "level": n, "label": [...], "energy": "p/q", "poly": <SymPoly>}
inline json to_json(const Eigenfunction& ef) {
  return {{"params", to_json(ef.params)},
          {"level", ef.level},
          {"label", partition_to_json(ef.label)},
          {"energy", to_string(ef.energy)},
          {"poly", to_json(ef.poly)}};
}

inline json to_json(const FockReport& report) {
  return {{"check", report.name},
          {"checks", report.checks},
          {"passed", report.passed()},
          {"violations", report.violations}};
}

struct SpectrumRow {
  int level;
  Rational energy;
  std::size_t degeneracy;
};

inline std::vector<SpectrumRow> spectrum_table(const ModelParams& params, int n_max) {
  std::vector<SpectrumRow> rows;
  for (int n = 0; n <= n_max; ++n) {
    rows.push_back({n, 2 * n + params.ground_energy(), degeneracy(params, n)});
  }
  return rows;
}

/// Columns n, energy (exact string), degeneracy.
inline void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumRow>& rows) {
  out << "n,energy,degeneracy\n";
  for (const auto& row : rows) {
    out << row.level << "," << to_string(row.energy) << "," << row.degeneracy << "\n";
  }
}

}  // namespace bncsm
