#pragma once

// Chooses the sign of the ρ-twist representing td(G/B) and the labelling of
// pushed-forward Bott-Samelson classes by running exact oracles on small
// root data, and persists the choice.

#include <fstream>
#include <string>
#include <vector>

#include "stablerank/bott_samelson.hpp"
#include "stablerank/conventions.hpp"
#include "stablerank/verdict.hpp"

namespace stablerank {

/// Weyl dimension formula Π_{α>0} <χ+ρ, α^v> / <ρ, α^v>.
inline Rational weyl_dimension(const RootDatum& d, const Weight& chi) {
  Rational out = 1;
  const Weight shifted = chi + d.rho();
  for (const auto& a : d.positive_roots()) out *= Rational(d.pairing(shifted, a), d.pairing(d.rho(), a));
  out.canonicalize();
  return out;
}

inline std::vector<Convention> candidate_conventions() {
  return {{1, SchubertIndexing::Dimension},
          {1, SchubertIndexing::Codimension},
          {-1, SchubertIndexing::Dimension},
          {-1, SchubertIndexing::Codimension}};
}

inline std::string to_string(const Convention& c) {
  return std::string("rho-twist ") + (c.rho_twist_sign > 0 ? "+1" : "-1") + ", indexing " + to_string(c.indexing);
}

struct OracleOutcome {
  Convention convention;
  std::string check;
  Rational expected;
  Rational actual;
  bool pass = false;
};

struct CalibrationReport {
  std::string datum;
  std::vector<OracleOutcome> outcomes;
  std::vector<Convention> accepted;

  bool success() const { return accepted.size() == 1; }
  const Convention& chosen() const {
    if (!success()) throw Error("calibration did not single out a convention");
    return accepted.front();
  }
};

/// Largest coordinate of the dominant weights tested in the Weyl-dimension oracle.
inline constexpr long kCalibrationWeightBound = 3;

inline std::vector<Weight> dominant_box(std::size_t rank, long bound) {
  std::vector<Weight> out;
  std::vector<long> c(rank, 0);
  while (true) {
    out.emplace_back(c);
    std::size_t i = 0;
    while (i < rank && c[i] == bound) c[i++] = 0;
    if (i == rank) break;
    ++c[i];
  }
  return out;
}

/// Runs every oracle under every candidate convention. The datum must have rank <= 2.
inline CalibrationReport calibrate(const Bgg& bgg, long bound = kCalibrationWeightBound) {
  const RootDatum& d = bgg.datum();
  if (d.rank() > 2) throw ValidationError("calibration runs on root data of rank at most 2");
  const WeylGroup& g = bgg.group();
  CalibrationReport report;
  report.datum = d.type().to_string();
  const auto elements = g.enumerate();
  const WeylElement e = g.identity();
  const WeylElement w0 = g.longest();
  const auto chis = dominant_box(d.rank(), bound);

  for (const auto& conv : candidate_conventions()) {
    bool all = true;
    auto record = [&](std::string check, const Rational& expected, const Rational& actual) {
      const bool ok = expected == actual;
      all = all && ok;
      report.outcomes.push_back({conv, std::move(check), expected, actual, ok});
    };
    // (a) χ(O_{X_w}) = 1: the point-class coefficient of ch(O_{X_w}) td(G/B)
    for (const auto& w : elements)
      record("chi(O_X) for w = " + w.to_string(), 1, ch_schubert(g, w, conv.indexing).coefficient(e));
    // (b) Euler characteristic of L(χ) through ∫ e^χ td(G/B) and through the
    // Schubert expansion of ch(O_{G/B}) td(G/B)
    const BorelClass twist = bgg.exp_weight(static_cast<long>(conv.rho_twist_sign) * d.rho());
    const SchubertVector top = ch_schubert(g, w0, conv.indexing);
    for (const auto& chi : chis) {
      const Rational expected = weyl_dimension(d, chi);
      const BorelClass ech = bgg.exp_weight(chi);
      record("integral of e^chi td for chi = " + chi.to_string(), expected, bgg.integrate(ech * twist));
      Rational via_cells = 0;
      for (const auto& [w, c] : top.terms()) via_cells += c * bgg.D(w, ech);
      record("Schubert expansion of e^chi for chi = " + chi.to_string(), expected, via_cells);
    }
    if (all) report.accepted.push_back(conv);
  }
  return report;
}

inline std::string format_calibration(const CalibrationReport& r, bool verbose = false) {
  std::string s = "calibration on " + r.datum + "\n";
  for (const auto& conv : candidate_conventions()) {
    std::size_t total = 0, passed = 0;
    for (const auto& o : r.outcomes) {
      if (!(o.convention == conv)) continue;
      ++total;
      if (o.pass) ++passed;
      if (verbose && !o.pass)
        s += "    " + o.check + ": expected " + o.expected.get_str() + ", got " + o.actual.get_str() + "\n";
    }
    s += "  " + to_string(conv) + ": " + std::to_string(passed) + "/" + std::to_string(total) + " oracles\n";
  }
  if (r.success()) {
    s += "chosen: " + to_string(r.chosen()) + "\n";
  } else {
    s += "no unique convention passes (" + std::to_string(r.accepted.size()) + " candidates accepted)\n";
  }
  return s;
}

inline Json to_json(const Convention& c) {
  Json j;
  j["rho_twist_sign"] = c.rho_twist_sign;
  j["indexing"] = to_string(c.indexing);
  return j;
}

inline Convention convention_from_json(const Json& j) {
  Convention c;
  c.rho_twist_sign = j.at("rho_twist_sign").get<int>();
  if (c.rho_twist_sign != 1 && c.rho_twist_sign != -1) throw ParseError("rho_twist_sign must be 1 or -1");
  const auto ix = j.at("indexing").get<std::string>();
  if (ix == "dimension") {
    c.indexing = SchubertIndexing::Dimension;
  } else if (ix == "codimension") {
    c.indexing = SchubertIndexing::Codimension;
  } else {
    throw ParseError("unknown indexing '" + ix + "'");
  }
  return c;
}

/// Every root datum shares one convention class: the conventions concern the
/// identification of weights with line bundles, not the type.
inline constexpr const char* kFlagConventionClass = "flag-manifold";

struct CalibrationConfig {
  std::optional<Convention> convention;
  std::vector<std::string> calibrated_on;
};

inline CalibrationConfig load_calibration(const std::string& path) {
  CalibrationConfig cfg;
  std::ifstream in(path);
  if (!in) return cfg;
  try {
    Json j = Json::parse(in);
    if (j.contains(kFlagConventionClass)) {
      const auto& rec = j.at(kFlagConventionClass);
      cfg.convention = convention_from_json(rec);
      cfg.calibrated_on = rec.at("calibrated_on").get<std::vector<std::string>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("malformed calibration file '" + path + "': " + e.what());
  }
  return cfg;
}

/// Merges a successful report into the config file.
inline void save_calibration(const std::string& path, const CalibrationReport& r) {
  CalibrationConfig cfg = load_calibration(path);
  const Convention c = r.chosen();
  if (cfg.convention && !(*cfg.convention == c))
    throw Error("calibration on " + r.datum + " disagrees with the stored convention (" + to_string(*cfg.convention) +
                ")");
  if (std::find(cfg.calibrated_on.begin(), cfg.calibrated_on.end(), r.datum) == cfg.calibrated_on.end())
    cfg.calibrated_on.push_back(r.datum);
  std::sort(cfg.calibrated_on.begin(), cfg.calibrated_on.end());
  Json rec = to_json(c);
  rec["calibrated_on"] = cfg.calibrated_on;
  Json j;
  j[kFlagConventionClass] = rec;
  std::ofstream out(path);
  if (!out) throw Error("cannot write calibration file '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace stablerank
