// stablerank: command-line front end to the admissibility checkers and the
// Schubert-calculus internals.
//
// Exit status: 0 success or passing verdict, 1 failing verdict, 2 usage or
// validation error.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stablerank/stablerank.hpp"

namespace sr = stablerank;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

struct Globals {
  bool json = false;
  std::string config = "calibration.json";
};

void print_json(const sr::Json& j) { std::cout << j.dump(2) << "\n"; }

int emit(const sr::Verdict& v, const Globals& g) {
  if (g.json) {
    print_json(sr::to_json(v));
  } else {
    std::cout << sr::format_verdict(v);
  }
  return v.pass() ? kExitPass : kExitFail;
}

std::string coords_string(const std::vector<long>& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + ")";
}

int cmd_roots(const std::string& type, const Globals& g) {
  const sr::RootDatum d = sr::build_root_datum(type);
  if (g.json) {
    sr::Json j;
    j["type"] = d.type().to_string();
    j["rank"] = d.rank();
    j["positive_roots"] = d.num_positive_roots();
    j["cartan"] = d.cartan();
    sr::Json roots = sr::Json::array();
    for (const auto& r : d.positive_roots())
      roots.push_back({{"simple", r.simple}, {"weight", r.weight.coords}, {"coroot", r.coroot}, {"height", r.height}});
    j["roots"] = roots;
    print_json(j);
    return kExitPass;
  }
  std::cout << "type " << d.type().to_string() << ", rank " << d.rank() << ", " << d.num_positive_roots()
            << " positive roots\n";
  std::cout << "cartan matrix (a_ij = <alpha_i^v, alpha_j>):\n";
  for (const auto& row : d.cartan()) {
    std::cout << " ";
    for (int a : row) std::cout << " " << (a >= 0 ? " " : "") << a;
    std::cout << "\n";
  }
  std::cout << "height  simple-coords  weight-coords  coroot\n";
  for (const auto& r : d.positive_roots())
    std::cout << "  " << r.height << "  " << coords_string(r.simple) << "  " << r.weight.to_string() << "  "
              << coords_string(r.coroot) << "\n";
  return kExitPass;
}

int cmd_weyl(const std::string& type, bool bruhat, std::uint64_t limit, const Globals& g) {
  const sr::WeylGroup w(sr::parse_cartan_type(type));
  const auto elements = w.enumerate(limit);
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  if (bruhat) {
    for (std::size_t i = 0; i < elements.size(); ++i)
      for (std::size_t j = 0; j < elements.size(); ++j)
        if (elements[j].length() == elements[i].length() + 1 && w.bruhat_leq(elements[i], elements[j]))
          covers.emplace_back(i, j);
  }
  if (g.json) {
    sr::Json j;
    j["type"] = w.datum().type().to_string();
    j["order"] = elements.size();
    j["longest"] = w.longest().to_string();
    sr::Json els = sr::Json::array();
    for (const auto& e : elements) els.push_back({{"word", e.to_string()}, {"length", e.length()}, {"rho_image", e.key.coords}});
    j["elements"] = els;
    if (bruhat) {
      sr::Json cs = sr::Json::array();
      for (const auto& [a, b] : covers) cs.push_back({elements[a].to_string(), elements[b].to_string()});
      j["bruhat_covers"] = cs;
    }
    print_json(j);
    return kExitPass;
  }
  std::cout << "W(" << w.datum().type().to_string() << "): " << elements.size() << " elements, w0 = "
            << w.longest().to_string() << "\n";
  for (const auto& e : elements) std::cout << "  " << e.length() << "  " << e.to_string() << "\n";
  if (bruhat) {
    std::cout << "Bruhat covers:\n";
    for (const auto& [a, b] : covers) std::cout << "  " << elements[a].to_string() << " < " << elements[b].to_string() << "\n";
  }
  return kExitPass;
}

sr::Convention stored_or_default(const Globals& g, std::vector<std::string>& notes) {
  const auto cfg = sr::load_calibration(g.config);
  if (cfg.convention) return *cfg.convention;
  notes.push_back("no calibration record in '" + g.config + "'; using rho-twist +1, dimension indexing");
  return sr::Convention{};
}

std::string matrix_text(const sr::QMatrix& q, const std::vector<std::vector<sr::Rational>>& m) {
  std::vector<std::string> labels;
  std::size_t lw = 1;
  for (const auto& e : q.elements) {
    labels.push_back(e.to_string());
    lw = std::max(lw, labels.back().size());
  }
  std::size_t cw = 1;
  for (const auto& row : m)
    for (const auto& c : row) cw = std::max(cw, c.get_str().size());
  std::ostringstream os;
  for (std::size_t i = 0; i < m.size(); ++i) {
    os << "  " << labels[i] << std::string(lw - labels[i].size(), ' ') << " |";
    for (const auto& c : m[i]) {
      const std::string s = c.get_str();
      os << " " << std::string(cw - s.size(), ' ') << s;
    }
    os << "\n";
  }
  return os.str();
}

sr::Json matrix_json(const std::vector<std::vector<sr::Rational>>& m) {
  sr::Json rows = sr::Json::array();
  for (const auto& row : m) {
    sr::Json r = sr::Json::array();
    for (const auto& c : row) r.push_back(c.get_str());
    rows.push_back(r);
  }
  return rows;
}

int cmd_qmatrix(const std::string& type, const std::string& word, const Globals& g) {
  sr::Bgg bgg(sr::parse_cartan_type(type));
  std::vector<std::string> notes;
  const sr::Convention conv = stored_or_default(g, notes);
  const sr::QMatrix q = word.empty() ? sr::q_matrix(bgg, conv)
                                     : sr::q_matrix_on_word(bgg, sr::parse_word(word, bgg.datum().rank()), conv);
  if (g.json) {
    sr::Json j;
    j["type"] = bgg.datum().type().to_string();
    j["convention"] = sr::to_json(conv);
    sr::Json els = sr::Json::array();
    for (const auto& e : q.elements) els.push_back(e.to_string());
    j["elements"] = els;
    j["q"] = matrix_json(q.q);
    j["twisted"] = matrix_json(q.twisted);
    j["integral"] = q.all_integral();
    j["notes"] = notes;
    print_json(j);
    return kExitPass;
  }
  std::cout << "ch(O_X(w)) = sum_w' q[w][w'] [X_w']  (" << bgg.datum().type().to_string() << ", "
            << sr::to_string(conv) << ")\n";
  std::cout << matrix_text(q, q.q);
  std::cout << "ch(O_X(w)) td(G/B) = sum_w' p[w][w'] [X_w']\n";
  std::cout << matrix_text(q, q.twisted);
  for (const auto& n : notes) std::cout << "note: " << n << "\n";
  return kExitPass;
}

sr::TupleText read_tuple(const std::string& path) {
  if (path.empty()) throw sr::ParseError("missing --tuple file");
  return sr::load_tuple_text(path);
}

int cmd_check_pn(int n, const std::string& tuple_path, const Globals& g) {
  if (n < 1) throw sr::ValidationError("projective space needs n >= 1");
  std::vector<sr::Rational> coeffs;
  if (n >= 3) {
    auto model = sr::projective_space(n);
    coeffs = sr::projective_coefficients(sr::model_tuple(read_tuple(tuple_path), *model));
  }
  sr::Verdict v = sr::check_projective(n, coeffs);
  if (n < 3) v.notes.push_back("tuple file not read: there are no conditions to evaluate");
  return emit(v, g);
}

int cmd_check_flag(const std::string& type, const std::string& parabolic, const std::string& tuple_path,
                   const std::string& route, const Globals& g) {
  const sr::CartanType ct = sr::parse_cartan_type(type);
  const auto cfg = sr::load_calibration(g.config);
  if (!cfg.convention)
    throw sr::ValidationError("no calibration record in '" + g.config + "'; run 'stablerank calibrate A2' first");
  sr::ParabolicSubset I;
  if (!parabolic.empty()) {
    for (int i : sr::parse_word(parabolic, static_cast<std::size_t>(ct.rank()))) I.push_back(i);
  }
  sr::FlagModel f(ct, I);
  const auto t = sr::flag_tuple(read_tuple(tuple_path), f.bgg(), f.dim());
  sr::Verdict v = route == "weights" ? sr::check_flag_weights(f, t, *cfg.convention)
                                     : sr::check_flag(f, t, *cfg.convention);
  return emit(v, g);
}

int cmd_check_model(const std::string& model_path, const std::string& tuple_path, bool dim4, bool dim5,
                    bool torsion_free, const Globals& g) {
  auto m = sr::load_ring_model(model_path);
  if (dim4 && m->dim() != 4) throw sr::ValidationError("--dim4 needs a 4-dimensional model");
  if (dim5 && m->dim() != 5) throw sr::ValidationError("--dim5 needs a 5-dimensional model");
  const int n = m->dim();
  if (n < 3) {
    sr::Verdict v{m->name(), "model", {}, {"dimension below 3: every tuple is realised"}};
    return emit(v, g);
  }
  const auto t = sr::model_tuple(read_tuple(tuple_path), *m);
  if (torsion_free) return emit(sr::check_torsion_free(*m, t), g);
  if (n == 3) return emit(sr::check_wu(*m, t), g);
  if (n == 4) return emit(sr::check_dim4(*m, t), g);
  if (n == 5) return emit(sr::check_dim5(*m, t), g);
  return emit(sr::check_torsion_free(*m, t), g);
}

int cmd_calibrate(const std::string& type, bool verbose, const Globals& g) {
  sr::Bgg bgg(sr::parse_cartan_type(type));
  const sr::CalibrationReport r = sr::calibrate(bgg);
  if (g.json) {
    sr::Json j;
    j["datum"] = r.datum;
    sr::Json cands = sr::Json::array();
    for (const auto& c : sr::candidate_conventions()) {
      std::size_t total = 0, passed = 0;
      for (const auto& o : r.outcomes)
        if (o.convention == c) {
          ++total;
          passed += o.pass ? 1 : 0;
        }
      sr::Json e = sr::to_json(c);
      e["oracles"] = total;
      e["passed"] = passed;
      cands.push_back(e);
    }
    j["candidates"] = cands;
    j["chosen"] = r.success() ? sr::to_json(r.chosen()) : sr::Json(nullptr);
    print_json(j);
  } else {
    std::cout << sr::format_calibration(r, verbose);
  }
  if (!r.success()) {
    std::cerr << "error: no unique convention passes every oracle; this indicates an implementation bug\n";
    return kExitError;
  }
  sr::save_calibration(g.config, r);
  if (!g.json) std::cout << "saved to " << g.config << "\n";
  return kExitPass;
}

int cmd_buhstaber(unsigned long q, const Globals& g) {
  const sr::Integer m = sr::buhstaber_bound(q);
  if (g.json) {
    print_json({{"q", q}, {"bound", m.get_str()}});
  } else {
    std::cout << m.get_str() << "\n";
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chern-class admissibility checks for stable-rank vector bundles"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Structured output");
  app.add_option("--config", g.config, "Calibration record file")->capture_default_str();

  std::string type, word, tuple, parabolic, route = "cells", model;
  bool bruhat = false, dim4 = false, dim5 = false, torsion_free = false, verbose = false;
  std::uint64_t limit = sr::kDefaultWeylLimit;
  int n = 0;
  unsigned long q = 0;

  auto* roots = app.add_subcommand("roots", "Positive roots of a Cartan type");
  roots->add_option("type", type, "Cartan type, e.g. A2, B3, A1xG2")->required();

  auto* weyl = app.add_subcommand("weyl", "Elements of the Weyl group");
  weyl->add_option("type", type)->required();
  weyl->add_flag("--bruhat", bruhat, "List Bruhat covering relations");
  weyl->add_option("--limit", limit, "Largest group order to enumerate")->capture_default_str();

  auto* qm = app.add_subcommand("qmatrix", "Chern characters of Schubert structure sheaves");
  qm->add_option("type", type)->required();
  qm->add_option("--word", word, "Reduced word of w0 for the resolution, e.g. 121");

  auto* check = app.add_subcommand("check", "Admissibility of a Chern tuple");
  check->require_subcommand(1);
  check->fallthrough();
  auto* pn = check->add_subcommand("pn", "Projective space");
  pn->add_option("n", n)->required();
  pn->add_option("--tuple", tuple, "Tuple file")->required();
  auto* flag = check->add_subcommand("flag", "Flag manifold G/P");
  flag->add_option("type", type)->required();
  flag->add_option("--parabolic", parabolic, "Simple roots in the Levi, e.g. 1,3");
  flag->add_option("--tuple", tuple, "Tuple file")->required();
  flag->add_option("--route", route, "cells or weights")->check(CLI::IsMember({"cells", "weights"}))->capture_default_str();
  auto* mod = check->add_subcommand("model", "Manifold given by a model file");
  mod->add_option("model", model)->required();
  mod->add_option("--tuple", tuple, "Tuple file")->required();
  auto* d4 = mod->add_flag("--dim4", dim4, "Require the 4-fold conditions");
  auto* d5 = mod->add_flag("--dim5", dim5, "Require the 5-fold conditions")->excludes(d4);
  mod->add_flag("--torsion-free", torsion_free, "Twisted integrality over H^2 (H^2 must generate)")->excludes(d4)->excludes(d5);

  auto* cal = app.add_subcommand("calibrate", "Select and store the flag-manifold conventions");
  cal->add_option("type", type)->required();
  cal->add_flag("--verbose", verbose, "Show failing oracles");

  auto* bu = app.add_subcommand("buhstaber", "Buhstaber's bound m(q)");
  bu->add_option("q", q)->required()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitError;
  }

  try {
    if (*roots) return cmd_roots(type, g);
    if (*weyl) return cmd_weyl(type, bruhat, limit, g);
    if (*qm) return cmd_qmatrix(type, word, g);
    if (*pn) return cmd_check_pn(n, tuple, g);
    if (*flag) return cmd_check_flag(type, parabolic, tuple, route, g);
    if (*mod) return cmd_check_model(model, tuple, dim4, dim5, torsion_free, g);
    if (*cal) return cmd_calibrate(type, verbose, g);
    if (*bu) return cmd_buhstaber(q, g);
  } catch (const sr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
