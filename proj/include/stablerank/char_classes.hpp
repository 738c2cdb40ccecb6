#pragma once

// Chern character and Todd class of a tuple (c_1, ..., c_r), through universal
// polynomials in weighted variables c_k (weight k) built from power sums of
// formal Chern roots. Works over any ring element type R with
//   R + R, R - R, R * R, R * Rational, and a unit supplied by the caller.

#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "stablerank/graded_poly.hpp"
#include "stablerank/series.hpp"

namespace stablerank {

template <class R>
struct ChernTuple {
  std::vector<R> classes;  // classes[k-1] = c_k
  R one;                   // unit of the ambient ring

  std::size_t rank() const { return classes.size(); }
  const R& c(std::size_t k) const { return classes.at(k - 1); }
};

template <class R>
ChernTuple<R> make_chern_tuple(std::vector<R> classes, const R& one) {
  return ChernTuple<R>{std::move(classes), one};
}

/// Context c1..cr with weight(c_k) = k.
inline ContextPtr chern_context(std::size_t rank, int cap) {
  std::vector<std::string> names;
  std::vector<int> weights;
  for (std::size_t k = 1; k <= rank; ++k) {
    names.push_back("c" + std::to_string(k));
    weights.push_back(static_cast<int>(k));
  }
  return make_context(std::move(names), cap, std::move(weights));
}

struct UniversalClasses {
  ContextPtr ctx;
  std::vector<GradedPoly> power_sums;  // p_0 = rank, p_1, ..., p_cap
  GradedPoly ch;                       // rank + Σ p_k / k!
  GradedPoly td;                       // exp(Σ a_k p_k)
};

namespace detail {

inline UniversalClasses build_universal(std::size_t rank, int cap) {
  UniversalClasses u;
  u.ctx = chern_context(rank, cap);
  auto c = [&](std::size_t k) {
    return k <= rank ? GradedPoly::variable(u.ctx, k - 1) : GradedPoly::zero(u.ctx);
  };
  // Newton: p_k = Σ_{i<k} (-1)^{i-1} c_i p_{k-i} + (-1)^{k-1} k c_k
  u.power_sums.push_back(GradedPoly::constant(u.ctx, Rational(static_cast<long>(rank))));
  for (int k = 1; k <= cap; ++k) {
    GradedPoly p = c(static_cast<std::size_t>(k)) * Rational((k % 2 == 1 ? 1 : -1) * k);
    for (int i = 1; i < k; ++i) {
      GradedPoly t = c(static_cast<std::size_t>(i)) * u.power_sums[static_cast<std::size_t>(k - i)];
      if (i % 2 == 1) {
        p += t;
      } else {
        p -= t;
      }
    }
    u.power_sums.push_back(std::move(p));
  }
  u.ch = u.power_sums[0];
  for (int k = 1; k <= cap; ++k) u.ch += u.power_sums[static_cast<std::size_t>(k)] * (1 / factorial(static_cast<unsigned>(k)));

  // log(t / (1 - e^{-t})) = Σ a_k t^k, and log td = Σ a_k p_k
  const Series a = series_log(todd_series(static_cast<std::size_t>(cap)), static_cast<std::size_t>(cap));
  GradedPoly logtd = GradedPoly::zero(u.ctx);
  for (int k = 1; k <= cap; ++k) logtd += u.power_sums[static_cast<std::size_t>(k)] * a[static_cast<std::size_t>(k)];
  u.td = trunc_exp(logtd);
  return u;
}

}  // namespace detail

/// Cached universal polynomials for a given (rank, cap).
inline const UniversalClasses& universal_classes(std::size_t rank, int cap) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, int>, UniversalClasses> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(rank, cap);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, detail::build_universal(rank, cap)).first;
  return it->second;
}

/// Evaluates a polynomial of the c-context at concrete values.
template <class R>
R evaluate_polynomial(const GradedPoly& f, const std::vector<R>& values, const R& one) {
  const std::size_t n = f.context()->size();
  if (values.size() != n) throw ContextMismatch("evaluation arity mismatch");
  std::vector<std::vector<R>> powers(n, std::vector<R>{one});
  R out = one * Rational(0);
  for (const auto& [m, c] : f.terms()) {
    R t = one * c;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t e = m.exps[i];
      if (e == 0) continue;
      auto& pw = powers[i];
      while (pw.size() <= e) pw.push_back(pw.back() * values[i]);
      t = t * pw[e];
    }
    out = out + t;
  }
  return out;
}

/// ch(c_1, ..., c_r) = r + Σ_{k ≤ cap} P_k(c_1..c_k).
template <class R>
R chern_character(const ChernTuple<R>& t, int cap) {
  return evaluate_polynomial(universal_classes(t.rank(), cap).ch, t.classes, t.one);
}

/// Π x_i / (1 - e^{-x_i}) over formal roots, truncated at cap.
template <class R>
R todd_class(const ChernTuple<R>& t, int cap) {
  return evaluate_polynomial(universal_classes(t.rank(), cap).td, t.classes, t.one);
}

/// Chern classes of L_1 ⊕ ... ⊕ L_r from the first Chern classes of the L_i.
template <class R>
ChernTuple<R> sum_of_line_bundles(const std::vector<R>& weights, const R& one) {
  const R zero = one * Rational(0);
  std::vector<R> e(weights.size() + 1, zero);
  e[0] = one;
  for (std::size_t j = 0; j < weights.size(); ++j)
    for (std::size_t k = j + 1; k >= 1; --k) e[k] = e[k] + e[k - 1] * weights[j];
  return ChernTuple<R>{std::vector<R>(e.begin() + 1, e.end()), one};
}

/// Whitney sum of two tuples: c(t ⊕ t') = c(t) c(t').
template <class R>
ChernTuple<R> whitney_sum(const ChernTuple<R>& a, const ChernTuple<R>& b) {
  const R zero = a.one * Rational(0);
  std::vector<R> out(a.rank() + b.rank(), zero);
  for (std::size_t i = 0; i <= a.rank(); ++i) {
    const R ci = i == 0 ? a.one : a.c(i);
    for (std::size_t j = 0; j <= b.rank(); ++j) {
      if (i + j == 0) continue;
      const R cj = j == 0 ? b.one : b.c(j);
      out[i + j - 1] = out[i + j - 1] + ci * cj;
    }
  }
  return ChernTuple<R>{std::move(out), a.one};
}

/// Inverse of chern_character on weighted polynomials: recovers (c_1..c_rank)
/// from ch via Newton's identities k c_k = Σ_{i=1}^{k} (-1)^{i-1} c_{k-i} p_i.
inline std::vector<GradedPoly> chern_classes_from_character(const GradedPoly& ch, std::size_t rank) {
  std::vector<GradedPoly> p{ch.homogeneous_part(0)};
  for (std::size_t k = 1; k <= rank; ++k)
    p.push_back(ch.homogeneous_part(static_cast<int>(k)) * factorial(static_cast<unsigned>(k)));
  std::vector<GradedPoly> c{ch.one_like()};
  for (std::size_t k = 1; k <= rank; ++k) {
    GradedPoly s = ch.zero_like();
    for (std::size_t i = 1; i <= k; ++i) {
      GradedPoly t = c[k - i] * p[i];
      if (i % 2 == 1) {
        s += t;
      } else {
        s -= t;
      }
    }
    c.push_back(s * Rational(1, static_cast<long>(k)));
  }
  return std::vector<GradedPoly>(c.begin() + 1, c.end());
}

}  // namespace stablerank
