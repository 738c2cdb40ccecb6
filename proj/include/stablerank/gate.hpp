#pragma once

// Admissibility checkers: given a manifold and a tuple (c_1, ..., c_n), decide
// whether the tuple satisfies the finite list of congruence and integrality
// conditions characterising Chern classes of rank-n bundles.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stablerank/bott_samelson.hpp"
#include "stablerank/calibration.hpp"
#include "stablerank/char_classes.hpp"
#include "stablerank/flag_model.hpp"
#include "stablerank/ring_model.hpp"
#include "stablerank/verdict.hpp"

namespace stablerank {

namespace source {
inline constexpr const char* kWu = "wu-congruence";
inline constexpr const char* kDim4Parity = "h2-parity";
inline constexpr const char* kIndexMod6 = "index-mod-6";
inline constexpr const char* kRiemannRoch = "riemann-roch-twist";
inline constexpr const char* kSchubert = "schubert-structure-sheaf";
inline constexpr const char* kWeight = "weight-twist";
}  // namespace source

struct GateOptions {
  bool early_exit = false;                    // stop at the first failing condition
  std::optional<std::size_t> max_conditions;  // cap on enumerated twist conditions
};

/// Non-decreasing index sequences of length 0..max_size over `count` symbols,
/// shorter sequences first, lexicographic within a length.
inline void for_each_multiset(std::size_t count, long max_size,
                              const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  for (long k = 0; k <= max_size; ++k) {
    const std::size_t ks = static_cast<std::size_t>(k);
    if (ks > 0 && count == 0) return;
    std::vector<std::size_t> pick(ks, 0);
    while (true) {
      if (!visit(pick)) return;
      std::size_t pos = ks;
      while (pos > 0 && pick[pos - 1] + 1 == count) --pos;
      if (pos == 0) break;
      ++pick[pos - 1];
      for (std::size_t q = pos; q < ks; ++q) pick[q] = pick[pos - 1];
    }
  }
}

inline std::string multiset_label(const std::vector<std::size_t>& pick, const std::vector<std::string>& names) {
  if (pick.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < pick.size(); ++i) s += (i ? " + " : "") + names[pick[i]];
  return s;
}

/// Pads a tuple with zero classes up to rank n; rejects longer tuples.
template <class R>
ChernTuple<R> pad_tuple(ChernTuple<R> t, std::size_t n) {
  if (t.rank() > n) throw ValidationError("tuple has " + std::to_string(t.rank()) + " classes, expected at most " +
                                          std::to_string(n));
  while (t.rank() < n) t.classes.push_back(t.one * Rational(0));
  return t;
}

namespace detail {

inline void require_model_tuple(const RingModel& m, const ChernTuple<ModelClass>& t, std::size_t rank) {
  if (t.rank() != rank)
    throw ValidationError("expected a rank-" + std::to_string(rank) + " tuple, got rank " + std::to_string(t.rank()));
  for (std::size_t k = 0; k < t.rank(); ++k) {
    const ModelClass& c = t.classes[k];
    if (c.model().get() != &m) throw ContextMismatch("tuple classes belong to a different model");
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (c[i] == 0) continue;
      if (m.basis()[i].degree != static_cast<int>(k + 1))
        throw ValidationError("c" + std::to_string(k + 1) + " has a component on " + m.basis()[i].name +
                              " of the wrong degree");
      if (!is_integer(c[i])) throw ValidationError("c" + std::to_string(k + 1) + " is not an integral class");
    }
  }
}

inline std::vector<std::string> basis_names(const RingModel& m, const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (std::size_t i : idx) out.push_back(m.basis()[i].name);
  return out;
}

/// ∫ ch(t) e^ξ td(X) for each ξ = sum of a multiset of H^2 basis elements.
inline void twist_conditions(Verdict& v, const RingModel& m, const ChernTuple<ModelClass>& t, long max_size,
                             const GateOptions& opt) {
  const auto h2 = m.h2_basis();
  const auto names = basis_names(m, h2);
  const ModelClass chtd = chern_character(t, m.dim()) * m.todd();
  std::size_t seen = 0;
  for_each_multiset(h2.size(), max_size, [&](const std::vector<std::size_t>& pick) {
    if (opt.max_conditions && seen == *opt.max_conditions) {
      v.complete = false;
      v.notes.push_back("condition cap of " + std::to_string(*opt.max_conditions) + " reached");
      return false;
    }
    ++seen;
    ModelClass xi = m.zero();
    for (std::size_t p : pick) xi += m.element(h2[p]);
    const ModelClass e = evaluate_series(exp_series(static_cast<std::size_t>(m.dim())), xi, m.one());
    Condition c = integrality_condition("integral of ch(c) e^xi td(X), xi = " + multiset_label(pick, names),
                                        m.integrate(chtd * e), source::kRiemannRoch);
    const bool ok = c.pass;
    v.add(std::move(c));
    return ok || !opt.early_exit;
  });
}

}  // namespace detail

/// c_3 ≡ c_1 c_2 + Sq^2 c_2 in H^6(X, Z/2), one record per basis element of H^6.
/// On a 3-fold without a table, Sq^2 on H^4 is multiplication by c_1(X).
inline Verdict check_wu(const RingModel& m, const ChernTuple<ModelClass>& t) {
  Verdict v{m.name(), "wu", {}, {}};
  if (!m.has_sq2() && m.dim() != 3)
    throw ValidationError("Wu congruence needs a Sq2 table on model '" + m.name() + "'");
  const auto tt = pad_tuple(t, std::max<std::size_t>(3, t.rank()));
  const ModelClass c2 = tt.c(2).degree_part(2);
  const ModelClass sq = m.has_sq2() ? m.sq2(c2) : m.tangent_chern().c(1) * c2;
  const ModelClass lhs = tt.c(3);
  const ModelClass rhs = tt.c(1) * tt.c(2) + sq;
  const ModelClass diff = lhs - rhs;
  for (std::size_t i : m.indices_of_degree(3))
    v.add(congruence_condition("c3 - c1 c2 - Sq2 c2 on " + m.basis()[i].name, diff[i], 2, source::kWu));
  if (m.indices_of_degree(3).empty()) v.notes.push_back("H^6 vanishes: no Wu condition");
  return v;
}

/// Rank-4 bundles on a 4-fold: the parity condition over H^2 and the mod-6 congruence for c_4.
inline Verdict check_dim4(const RingModel& m, const ChernTuple<ModelClass>& t) {
  if (m.dim() != 4) throw ValidationError("check_dim4 needs a 4-dimensional model, got " + std::to_string(m.dim()));
  detail::require_model_tuple(m, t, 4);
  Verdict v{m.name(), "dim4", {}, {}};
  const auto tx = m.tangent_chern();
  const ModelClass &c1 = t.c(1), &c2 = t.c(2), &c3 = t.c(3), &c4 = t.c(4);
  const ModelClass &x1 = tx.c(1), &x2 = tx.c(2);

  std::vector<std::pair<std::string, ModelClass>> xis{{"0", m.zero()}};
  for (std::size_t i : m.h2_basis()) xis.emplace_back(m.basis()[i].name, m.element(i));
  bool parity_ok = true;
  for (const auto& [name, xi] : xis) {
    const Rational val = m.integrate(xi * (c1 * c2 + c3 - (x1 + xi) * c2));
    Condition c = congruence_condition("xi (c1 c2 + c3 - (c1(X) + xi) c2), xi = " + name, val, 2, source::kDim4Parity);
    parity_ok = parity_ok && c.pass;
    v.add(std::move(c));
  }

  const ModelClass half = c2 * (c2 - x2) + x1 * (c3 - (c1 + x1) * c2);
  const ModelClass rhs = (c1 + x1) * (c3 - c1 * c2) + half * Rational(1, 2);
  const Rational rhs_value = m.integrate(rhs);
  if (parity_ok && !is_integer(rhs_value))
    throw Error("internal consistency: the mod-6 right-hand side is not integral although the parity conditions hold");
  if (!is_integer(rhs_value)) v.notes.push_back("mod-6 right-hand side is not an integral class");
  v.add(congruence_condition("c4 - (c1 + c1(X))(c3 - c1 c2) - (c2(c2 - c2(X)) + c1(X)(c3 - (c1 + c1(X))c2))/2",
                             m.integrate(c4) - rhs_value, 6, source::kIndexMod6));
  return v;
}

/// Rank-5 bundles on a 5-fold: the Wu congruence (when Sq2 is known) and
/// integrality of ∫ ch(c) e^ξ td(X) for ξ = 0 and each H^2 generator.
inline Verdict check_dim5(const RingModel& m, const ChernTuple<ModelClass>& t) {
  if (m.dim() != 5) throw ValidationError("check_dim5 needs a 5-dimensional model, got " + std::to_string(m.dim()));
  detail::require_model_tuple(m, t, 5);
  Verdict v{m.name(), "dim5", {}, {}};
  if (m.has_sq2()) {
    for (auto& c : check_wu(m, t).conditions) v.add(std::move(c));
  } else {
    v.add(unevaluated_condition("c3 = c1 c2 + Sq2 c2 mod 2 (no Sq2 table)", source::kWu));
  }
  const auto h2 = m.h2_basis();
  const ModelClass chtd = chern_character(t, 5) * m.todd();
  std::vector<std::pair<std::string, ModelClass>> xis{{"0", m.zero()}};
  for (std::size_t i : h2) xis.emplace_back(m.basis()[i].name, m.element(i));
  for (const auto& [name, xi] : xis) {
    const ModelClass e = evaluate_series(exp_series(5), xi, m.one());
    v.add(integrality_condition("integral of ch(c) e^xi td(X), xi = " + name, m.integrate(chtd * e),
                                source::kRiemannRoch));
  }
  return v;
}

/// ∫ ch(c) e^ξ td(X) ∈ Z for ξ a sum of at most n-3 H^2 generators; needs
/// H^2 to generate H^even(X, Z).
inline Verdict check_torsion_free(const RingModel& m, const ChernTuple<ModelClass>& t, const GateOptions& opt = {}) {
  detail::require_model_tuple(m, t, static_cast<std::size_t>(m.dim()));
  if (auto d = m.h2_generation_failure())
    throw ValidationError("H^2 does not generate H^" + std::to_string(2 * *d) + " of '" + m.name() + "'");
  Verdict v{m.name(), "torsion-free", {}, {}};
  detail::twist_conditions(v, m, t, m.dim() - 3, opt);
  if (m.dim() < 3) v.notes.push_back("dimension below 3: no conditions");
  return v;
}

/// Integer coefficients a_k of c_k = a_k h^k on P^n.
inline std::vector<Rational> projective_coefficients(const ChernTuple<ModelClass>& t) {
  std::vector<Rational> a;
  for (std::size_t k = 1; k <= t.rank(); ++k) {
    const ModelClass& c = t.c(k);
    const RingModel& m = *c.model();
    const auto idx = m.indices_of_degree(static_cast<int>(k));
    if (idx.size() != 1) throw ValidationError("not a projective-space tuple");
    for (std::size_t i = 0; i < m.size(); ++i)
      if (i != idx[0] && c[i] != 0) throw ValidationError("c" + std::to_string(k) + " has the wrong degree");
    a.push_back(c[idx[0]]);
  }
  return a;
}

/// ∫_{P^n} ch(c) e^{kh} (h/(1-e^{-h}))^{n+1} ∈ Z for 0 <= k <= n-3, computed in
/// Q[h]/(h^{n+1}) from c_k = a_k h^k.
inline Verdict check_projective(int n, const std::vector<Rational>& a) {
  if (n < 1) throw ValidationError("projective space needs n >= 1");
  if (a.size() > static_cast<std::size_t>(n))
    throw ValidationError("tuple has more than " + std::to_string(n) + " classes");
  for (const auto& q : a)
    if (!is_integer(q)) throw ValidationError("Chern class coefficients must be integers");
  Verdict v{"P" + std::to_string(n), "projective", {}, {}};
  const auto ctx = make_context({"h"}, n);
  const GradedPoly h = GradedPoly::variable(ctx, 0);
  const GradedPoly one = GradedPoly::one(ctx);
  std::vector<GradedPoly> cs;
  for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k)
    cs.push_back(k < a.size() ? GradedPoly::variable(ctx, 0, static_cast<unsigned>(k + 1)) * a[k] : GradedPoly::zero(ctx));
  const GradedPoly ch = chern_character(ChernTuple<GradedPoly>{cs, one}, n);
  const GradedPoly td = evaluate_series(todd_series(static_cast<std::size_t>(n)), h, one).pow(static_cast<unsigned>(n + 1));
  for (int k = 0; k <= n - 3; ++k) {
    const GradedPoly e = trunc_exp(h * Rational(k));
    const GradedPoly integrand = ch * e * td;
    const Rational val = integrand.coefficient({static_cast<std::uint16_t>(n)});
    v.add(integrality_condition("integral of ch(c) e^{" + std::to_string(k) + "h} td(P" + std::to_string(n) + ")",
                                val, source::kRiemannRoch));
  }
  if (n < 3) v.notes.push_back("dimension below 3: every tuple is realised");
  return v;
}

inline Verdict check_projective(int n, const ChernTuple<ModelClass>& t) {
  return check_projective(n, projective_coefficients(t));
}

/// Buhstaber's bound m(q) = Π_{s prime} s^{floor((q-1)/(2s-1))}.
inline Integer buhstaber_bound(unsigned long q) {
  if (q < 1) throw ValidationError("buhstaber bound needs q >= 1");
  Integer m = 1;
  for (unsigned long s = 2; 2 * s - 1 <= q - 1; ++s) {
    bool prime = true;
    for (unsigned long d = 2; d * d <= s; ++d)
      if (s % d == 0) prime = false;
    if (!prime) continue;
    Integer f;
    mpz_ui_pow_ui(f.get_mpz_t(), s, (q - 1) / (2 * s - 1));
    m *= f;
  }
  return m;
}

// ---------------------------------------------------------------- flags

/// Σ_{w'} q_{w,w'} D_{w'}(ch(c) e^{sρ}) for P-saturated w with ℓ(w) >= dim(P/B) + 3.
inline Verdict check_flag(const FlagModel& f, const ChernTuple<BorelClass>& t, const Convention& conv,
                          const QMatrix* precomputed = nullptr, const GateOptions& opt = {}) {
  const Bgg& bgg = f.bgg();
  const ChernTuple<BorelClass> tt = pad_tuple(t, f.dim());
  f.require_invariant(tt);
  Verdict v{f.label(), "flag-cells", {}, {}};
  QMatrix local;
  const QMatrix* q = precomputed;
  if (q == nullptr || !(q->convention == conv) || !(q->type == bgg.datum().type())) {
    local = q_matrix(bgg, conv);
    q = &local;
  }
  const int cap = static_cast<int>(bgg.dimension());
  const BorelClass twisted = chern_character(tt, cap) * bgg.exp_weight(static_cast<long>(conv.rho_twist_sign) * bgg.datum().rho());
  std::vector<Rational> pairs(q->elements.size());
  for (std::size_t j = 0; j < q->elements.size(); ++j) pairs[j] = bgg.D(q->elements[j], twisted);
  std::size_t seen = 0;
  for (std::size_t i = 0; i < q->elements.size(); ++i) {
    const WeylElement& w = q->elements[i];
    if (!f.group().is_saturated(w, f.parabolic()) || w.length() < f.fiber_dim() + 3) continue;
    if (opt.max_conditions && seen == *opt.max_conditions) {
      v.complete = false;
      v.notes.push_back("condition cap of " + std::to_string(*opt.max_conditions) + " reached");
      break;
    }
    ++seen;
    Rational val = 0;
    for (std::size_t j = 0; j < q->elements.size(); ++j)
      if (q->q[i][j] != 0) val += q->q[i][j] * pairs[j];
    v.add(integrality_condition("integral of ch(c) ch(O_X(w)) td, w = " + w.to_string(), val, source::kSchubert));
    if (opt.early_exit && !v.conditions.back().pass) break;
  }
  v.notes.push_back("convention: " + to_string(conv));
  if (v.conditions.empty()) v.notes.push_back("no Schubert variety of dimension >= 3: every tuple is realised");
  return v;
}

enum class WeightRoute { Generated, TypeAC, Fallback };

/// D_{w0}(ch(c) e^{χ + sρ}) ∈ Z for χ a sum of fundamental weights. When H^2
/// generates H^even(G/P) the weights ω_α with w0 s_α P-saturated and at most
/// dim(G/P) - 3 summands suffice; for types A and C every ω with at most
/// dim(G/B) - 3 summands; otherwise the Schubert route is used instead.
inline Verdict check_flag_weights(const FlagModel& f, const ChernTuple<BorelClass>& t, const Convention& conv,
                                  const QMatrix* precomputed = nullptr, const GateOptions& opt = {}) {
  const Bgg& bgg = f.bgg();
  const RootDatum& d = bgg.datum();
  WeightRoute route = WeightRoute::Fallback;
  if (f.h2_generates()) {
    route = WeightRoute::Generated;
  } else if (is_type_a_or_c(d.type())) {
    route = WeightRoute::TypeAC;
  }
  if (route == WeightRoute::Fallback) {
    Verdict v = check_flag(f, t, conv, precomputed, opt);
    v.notes.insert(v.notes.begin(), "warning: H^2 does not generate H^even and the type is not A or C; "
                                    "weight route unavailable, Schubert route used");
    return v;
  }
  const ChernTuple<BorelClass> tt = pad_tuple(t, f.dim());
  f.require_invariant(tt);
  Verdict v{f.label(), "flag-weights", {}, {}};
  std::vector<int> roots;
  long bound = 0;
  if (route == WeightRoute::Generated) {
    roots = f.h2_roots();
    bound = static_cast<long>(f.dim()) - 3;
  } else {
    for (std::size_t i = 0; i < d.rank(); ++i) roots.push_back(static_cast<int>(i));
    bound = static_cast<long>(bgg.dimension()) - 3;
  }
  std::vector<std::string> names;
  for (int r : roots) names.push_back("w" + std::to_string(r + 1));
  const int cap = static_cast<int>(bgg.dimension());
  const BorelClass ch = chern_character(tt, cap);
  std::size_t seen = 0;
  for_each_multiset(roots.size(), bound, [&](const std::vector<std::size_t>& pick) {
    if (opt.max_conditions && seen == *opt.max_conditions) {
      v.complete = false;
      v.notes.push_back("condition cap of " + std::to_string(*opt.max_conditions) + " reached");
      return false;
    }
    ++seen;
    Weight chi = Weight::zero(d.rank());
    for (std::size_t p : pick) chi += Weight::fundamental(d.rank(), static_cast<std::size_t>(roots[p]));
    const Weight shift = chi + static_cast<long>(conv.rho_twist_sign) * d.rho();
    v.add(integrality_condition("integral of ch(c) e^chi td, chi = " + multiset_label(pick, names),
                                bgg.integrate(ch * bgg.exp_weight(shift)), source::kWeight));
    return v.conditions.back().pass || !opt.early_exit;
  });
  v.notes.push_back(route == WeightRoute::Generated ? "route: H^2 generates H^even"
                                                    : "route: type A/C, all fundamental weights");
  v.notes.push_back("convention: " + to_string(conv));
  return v;
}

}  // namespace stablerank
