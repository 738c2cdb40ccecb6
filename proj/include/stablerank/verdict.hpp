#pragma once

// Outcome of a checker: a list of exact conditions and their conjunction.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "stablerank/rational.hpp"

namespace stablerank {

struct Condition {
  std::string condition;          // what was evaluated
  std::optional<Rational> value;  // empty when the condition could not be evaluated
  std::optional<Integer> modulus; // empty: value must be an integer; otherwise value ≡ 0 (mod m)
  bool pass = true;
  std::string source;             // which family of conditions produced it

  bool evaluated() const { return value.has_value(); }
  friend bool operator==(const Condition&, const Condition&) = default;
};

inline Condition integrality_condition(std::string what, const Rational& v, std::string source) {
  return Condition{std::move(what), v, std::nullopt, is_integer(v), std::move(source)};
}

inline Condition congruence_condition(std::string what, const Rational& v, const Integer& m, std::string source) {
  const bool ok = is_integer(v) && mpz_divisible_p(v.get_num_mpz_t(), m.get_mpz_t()) != 0;
  return Condition{std::move(what), v, m, ok, std::move(source)};
}

/// Record of a condition the engine knows about but cannot evaluate.
inline Condition unevaluated_condition(std::string what, std::string source) {
  return Condition{std::move(what), std::nullopt, std::nullopt, true, std::move(source)};
}

struct Verdict {
  std::string manifold;
  std::string checker;
  std::vector<Condition> conditions;
  std::vector<std::string> notes;
  bool complete = true;  // false when some condition was skipped or left unevaluated
  std::string criterion_family = "finite surrogate";

  bool pass() const {
    return std::all_of(conditions.begin(), conditions.end(), [](const Condition& c) { return c.pass; });
  }

  void add(Condition c) {
    if (!c.evaluated()) complete = false;
    conditions.push_back(std::move(c));
  }

  /// First failing condition, if any.
  const Condition* first_failure() const {
    for (const auto& c : conditions)
      if (!c.pass) return &c;
    return nullptr;
  }

  friend bool operator==(const Verdict& a, const Verdict& b) {
    return a.manifold == b.manifold && a.checker == b.checker && a.conditions == b.conditions &&
           a.notes == b.notes && a.complete == b.complete && a.criterion_family == b.criterion_family;
  }
};

using Json = nlohmann::ordered_json;

inline Json to_json(const Condition& c) {
  Json j;
  j["condition"] = c.condition;
  j["value"] = c.value ? Json(c.value->get_str()) : Json(nullptr);
  j["modulus"] = c.modulus ? c.modulus->get_str() : std::string("Z");
  j["pass"] = c.pass;
  j["source"] = c.source;
  return j;
}

inline Json to_json(const Verdict& v) {
  Json j;
  j["manifold"] = v.manifold;
  j["checker"] = v.checker;
  j["pass"] = v.pass();
  j["complete"] = v.complete;
  j["criterion_family"] = v.criterion_family;
  Json conds = Json::array();
  for (const auto& c : v.conditions) conds.push_back(to_json(c));
  j["conditions"] = conds;
  j["notes"] = v.notes;
  return j;
}

inline Condition condition_from_json(const Json& j) {
  Condition c;
  c.condition = j.at("condition").get<std::string>();
  if (!j.at("value").is_null()) c.value = parse_rational(j.at("value").get<std::string>());
  const auto m = j.at("modulus").get<std::string>();
  if (m != "Z") c.modulus = Integer(m);
  c.pass = j.at("pass").get<bool>();
  c.source = j.at("source").get<std::string>();
  return c;
}

inline Verdict verdict_from_json(const Json& j) {
  Verdict v;
  try {
    v.manifold = j.at("manifold").get<std::string>();
    v.checker = j.at("checker").get<std::string>();
    v.complete = j.at("complete").get<bool>();
    v.criterion_family = j.at("criterion_family").get<std::string>();
    for (const auto& c : j.at("conditions")) v.conditions.push_back(condition_from_json(c));
    v.notes = j.at("notes").get<std::vector<std::string>>();
    if (j.at("pass").get<bool>() != v.pass()) throw ParseError("verdict 'pass' disagrees with its conditions");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed verdict: ") + e.what());
  }
  return v;
}

inline std::string format_verdict(const Verdict& v) {
  std::ostringstream os;
  os << v.checker << " on " << v.manifold << ": " << (v.pass() ? "PASS" : "FAIL");
  if (!v.complete) os << " (partial)";
  os << "\n";
  for (const auto& c : v.conditions) {
    os << "  [" << (c.evaluated() ? (c.pass ? "ok" : "FAIL") : "--") << "] " << c.condition;
    if (c.value) {
      os << " = " << c.value->get_str();
      if (c.modulus) {
        os << " (mod " << c.modulus->get_str() << ")";
      } else if (!is_integer(*c.value)) {
        os << " (denominator " << c.value->get_den().get_str() << ")";
      }
    } else {
      os << ": unevaluated";
    }
    os << "  <" << c.source << ">\n";
  }
  for (const auto& n : v.notes) os << "  note: " << n << "\n";
  return os.str();
}

}  // namespace stablerank
