#pragma once

// Shared helpers for the test binaries: seeded random classes and
// independent reference computations.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "stablerank/stablerank.hpp"

namespace testsupport {

using namespace stablerank;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20261015);
  return gen;
}

inline void reseed(std::uint64_t s) { rng().seed(s); }

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

/// Random polynomial with small integer coefficients, degrees up to max_degree.
inline GradedPoly random_poly(const ContextPtr& ctx, int max_degree, int terms = 6, long coeff = 5) {
  GradedPoly f = GradedPoly::zero(ctx);
  for (int t = 0; t < terms; ++t) {
    GradedPoly m = GradedPoly::constant(ctx, uniform(-coeff, coeff));
    const int d = static_cast<int>(uniform(0, max_degree));
    for (int k = 0; k < d; ++k) m *= GradedPoly::variable(ctx, static_cast<std::size_t>(uniform(0, static_cast<long>(ctx->size()) - 1)));
    f += m;
  }
  return f;
}

inline GradedPoly random_homogeneous(const ContextPtr& ctx, int degree, int terms = 4, long coeff = 5) {
  GradedPoly f = GradedPoly::zero(ctx);
  for (int t = 0; t < terms; ++t) {
    GradedPoly m = GradedPoly::constant(ctx, uniform(-coeff, coeff));
    for (int k = 0; k < degree; ++k) m *= GradedPoly::variable(ctx, static_cast<std::size_t>(uniform(0, static_cast<long>(ctx->size()) - 1)));
    f += m;
  }
  return f;
}

/// Σ_{w ∈ W} w·g, a W-invariant class.
inline GradedPoly symmetrize(const Bgg& bgg, const GradedPoly& g) {
  GradedPoly s = bgg.zero();
  for (const auto& w : bgg.group().enumerate()) s += bgg.weyl_act(w, g);
  return s;
}

/// Laurent polynomials in the weight lattice.
using Character = std::map<std::vector<long>, long>;

/// Demazure operator on characters: e^λ ↦ (e^λ - e^{s_i λ - α_i}) / (1 - e^{-α_i}).
inline Character demazure_operator(const RootDatum& d, std::size_t i, const Character& f) {
  Character out;
  const Weight alpha = d.simple_root(i).weight;
  for (const auto& [coords, mult] : f) {
    const Weight lambda(coords);
    const long n = lambda[i];
    if (n >= 0) {
      Weight mu = lambda;
      for (long k = 0; k <= n; ++k, mu -= alpha) out[mu.coords] += mult;
    } else if (n <= -2) {
      Weight mu = lambda + alpha;
      for (long k = 1; k <= -n - 1; ++k, mu += alpha) out[mu.coords] -= mult;
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

/// dim H^0(X_w, L_χ) from the Demazure character formula.
inline long demazure_dimension(const RootDatum& d, const WeylElement& w, const Weight& chi) {
  Character f{{chi.coords, 1}};
  for (std::size_t k = w.word.size(); k-- > 0;) f = demazure_operator(d, static_cast<std::size_t>(w.word[k]), f);
  long total = 0;
  for (const auto& [coords, mult] : f) total += mult;
  return total;
}

/// Chern tuple of a sum of line bundles O(k_1) + ... on P^n, as coefficients of h^k.
inline std::vector<Rational> projective_sum(const std::vector<long>& degrees, std::size_t n) {
  std::vector<Rational> c(n + 1, Rational(0));
  c[0] = 1;
  for (long k : degrees)
    for (std::size_t j = n; j >= 1; --j) c[j] += c[j - 1] * k;
  return std::vector<Rational>(c.begin() + 1, c.end());
}

inline ChernTuple<ModelClass> projective_tuple(const RingModel& m, const std::vector<Rational>& a) {
  std::vector<ModelClass> cs;
  for (std::size_t k = 1; k <= static_cast<std::size_t>(m.dim()); ++k) {
    ModelClass c = m.zero();
    if (k <= a.size()) c = m.element(k) * a[k - 1];
    cs.push_back(c);
  }
  return ChernTuple<ModelClass>{cs, m.one()};
}

/// Multisets of size `size` drawn from [lo, hi].
inline std::vector<std::vector<long>> multisets(long lo, long hi, std::size_t size) {
  std::vector<std::vector<long>> out;
  std::vector<long> cur;
  auto rec = [&](auto&& self, long start) -> void {
    if (cur.size() == size) {
      out.push_back(cur);
      return;
    }
    for (long v = start; v <= hi; ++v) {
      cur.push_back(v);
      self(self, v);
      cur.pop_back();
    }
  };
  rec(rec, lo);
  return out;
}

}  // namespace testsupport
