#pragma once

// Chern tuple files:
//
//   # rank line is optional; classes above the rank must be zero
//   rank 3
//   c1 = 2h
//   c2 = h^2
//
// Unlisted classes are zero. Identifiers are resolved by the caller: model
// basis names, or x1..xr / w1..wr (fundamental weights) on flag manifolds.

#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "stablerank/bgg.hpp"
#include "stablerank/char_classes.hpp"
#include "stablerank/expression.hpp"
#include "stablerank/ring_model.hpp"

namespace stablerank {

struct TupleText {
  std::optional<std::size_t> rank;
  std::map<std::size_t, std::string> classes;  // k -> expression of c_k
};

inline TupleText parse_tuple_text(std::istream& in) {
  TupleText t;
  std::string raw;
  int lineno = 0;
  auto fail = [&](const std::string& msg) { throw ParseError("tuple line " + std::to_string(lineno) + ": " + msg); };
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = detail::trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.rfind("rank", 0) == 0 && line.find('=') == std::string::npos) {
      const std::string rest = detail::trim(line.substr(4));
      try {
        std::size_t used = 0;
        const long r = std::stol(rest, &used);
        if (used != rest.size() || r < 0) throw std::invalid_argument(rest);
        t.rank = static_cast<std::size_t>(r);
      } catch (const std::exception&) {
        fail("rank must be a non-negative integer");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected 'cK = <expression>'");
    const std::string lhs = detail::trim(line.substr(0, eq));
    const std::string rhs = detail::trim(line.substr(eq + 1));
    std::size_t k = 0;
    if (lhs.size() >= 2 && lhs[0] == 'c' &&
        std::all_of(lhs.begin() + 1, lhs.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      k = std::stoul(lhs.substr(1));
    if (k == 0) fail("left-hand side must be c1, c2, ...");
    if (rhs.empty()) fail("empty expression for " + lhs);
    if (!t.classes.emplace(k, rhs).second) fail("duplicate " + lhs);
  }
  if (t.rank)
    for (const auto& [k, e] : t.classes)
      if (k > *t.rank) throw ParseError("c" + std::to_string(k) + " given above the declared rank " + std::to_string(*t.rank));
  return t;
}

inline TupleText load_tuple_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open tuple file '" + path + "'");
  return parse_tuple_text(in);
}

/// Evaluates the classes into a rank-n tuple (n = manifold dimension).
template <class R>
ChernTuple<R> build_tuple(const TupleText& text, std::size_t n, const std::function<R(const std::string&)>& lookup,
                          const R& one) {
  std::vector<R> cs(n, one * Rational(0));
  for (const auto& [k, expr] : text.classes) {
    if (k > n) throw ValidationError("c" + std::to_string(k) + " exceeds the dimension " + std::to_string(n));
    cs[k - 1] = evaluate_expression<R>(expr, lookup, one);
  }
  return ChernTuple<R>{std::move(cs), one};
}

inline ChernTuple<ModelClass> model_tuple(const TupleText& text, const RingModel& m) {
  std::function<ModelClass(const std::string&)> lookup = [&](const std::string& name) {
    auto i = m.find(name);
    if (!i) throw ParseError("unknown class '" + name + "' on model '" + m.name() + "'");
    return m.element(*i);
  };
  auto t = build_tuple<ModelClass>(text, static_cast<std::size_t>(m.dim()), lookup, m.one());
  for (std::size_t k = 0; k < t.rank(); ++k)
    if (t.classes[k].degree_part(static_cast<int>(k + 1)) != t.classes[k])
      throw ValidationError("c" + std::to_string(k + 1) + " is not homogeneous of degree " + std::to_string(k + 1));
  return t;
}

/// Flag tuples use x1..xr or w1..wr for the fundamental weights.
inline ChernTuple<BorelClass> flag_tuple(const TupleText& text, const Bgg& bgg, std::size_t n) {
  const std::size_t r = bgg.datum().rank();
  std::function<BorelClass(const std::string&)> lookup = [&](const std::string& name) {
    if (name.size() >= 2 && (name[0] == 'x' || name[0] == 'w') &&
        std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      const std::size_t i = std::stoul(name.substr(1));
      if (i >= 1 && i <= r) return GradedPoly::variable(bgg.context(), i - 1);
    }
    throw ParseError("unknown class '" + name + "'; use x1..x" + std::to_string(r) + " or w1..w" + std::to_string(r));
  };
  return build_tuple<BorelClass>(text, n, lookup, bgg.one());
}

}  // namespace stablerank
