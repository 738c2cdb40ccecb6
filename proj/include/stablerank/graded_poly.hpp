#pragma once

// Sparse multivariate polynomials with exact rational coefficients, truncated
// above a weighted degree cap. All classes in play are even-degree, so one unit
// of weight here is one unit of complex (half cohomological) degree.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "stablerank/rational.hpp"
#include "stablerank/series.hpp"

namespace stablerank {

struct PolyContext {
  std::vector<std::string> names;
  std::vector<int> weights;  // positive weight of each variable
  int degree_cap = 0;

  std::size_t size() const { return names.size(); }

  bool operator==(const PolyContext& o) const {
    return names == o.names && weights == o.weights && degree_cap == o.degree_cap;
  }
};

using ContextPtr = std::shared_ptr<const PolyContext>;

inline ContextPtr make_context(std::vector<std::string> names, int degree_cap,
                               std::vector<int> weights = {}) {
  if (degree_cap < 0) throw ValidationError("negative degree cap");
  if (weights.empty()) weights.assign(names.size(), 1);
  if (weights.size() != names.size()) throw ValidationError("weight list does not match variables");
  for (int w : weights)
    if (w <= 0) throw ValidationError("variable weights must be positive");
  return std::make_shared<const PolyContext>(PolyContext{std::move(names), std::move(weights), degree_cap});
}

/// Context x1..xr with unit weights.
inline ContextPtr make_indexed_context(const std::string& stem, std::size_t count, int degree_cap) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < count; ++i) names.push_back(stem + std::to_string(i + 1));
  return make_context(std::move(names), degree_cap);
}

/// Exponent vector plus cached weighted degree. Ordered graded-lexicographically:
/// lower degree first; inside a degree, larger exponent of earlier variables first.
struct Monomial {
  int degree = 0;
  std::vector<std::uint16_t> exps;

  bool operator<(const Monomial& o) const {
    if (degree != o.degree) return degree < o.degree;
    return o.exps < exps;
  }
  bool operator==(const Monomial& o) const { return degree == o.degree && exps == o.exps; }
};

class GradedPoly {
 public:
  using TermMap = std::map<Monomial, Rational>;

  GradedPoly() = default;
  explicit GradedPoly(ContextPtr ctx) : ctx_(std::move(ctx)) {}

  static GradedPoly zero(const ContextPtr& ctx) { return GradedPoly(ctx); }

  static GradedPoly constant(const ContextPtr& ctx, const Rational& c) {
    GradedPoly p(ctx);
    if (c != 0) p.terms_.emplace(Monomial{0, std::vector<std::uint16_t>(ctx->size(), 0)}, c);
    return p;
  }

  static GradedPoly one(const ContextPtr& ctx) { return constant(ctx, 1); }

  static GradedPoly variable(const ContextPtr& ctx, std::size_t i, unsigned power = 1) {
    if (i >= ctx->size()) throw ContextMismatch("variable index out of range");
    std::vector<std::uint16_t> e(ctx->size(), 0);
    e[i] = static_cast<std::uint16_t>(power);
    GradedPoly p(ctx);
    p.add_term(Monomial{static_cast<int>(power) * ctx->weights[i], std::move(e)}, 1);
    return p;
  }

  /// Σ coeffs[i]·x_i.
  template <class Coeffs>
  static GradedPoly linear(const ContextPtr& ctx, const Coeffs& coeffs) {
    GradedPoly p(ctx);
    std::size_t i = 0;
    for (const auto& c : coeffs) {
      if (i >= ctx->size()) throw ContextMismatch("too many linear coefficients");
      Rational q(c);
      if (q != 0) p += variable(ctx, i) * q;
      ++i;
    }
    return p;
  }

  const ContextPtr& context() const { return ctx_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// Highest weighted degree present, or -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree; }

  /// Lowest weighted degree present, or -1 for zero.
  int order() const { return terms_.empty() ? -1 : terms_.begin()->first.degree; }

  Rational constant_term() const {
    if (terms_.empty() || terms_.begin()->first.degree != 0) return 0;
    return terms_.begin()->second;
  }

  Rational coefficient(const std::vector<std::uint16_t>& exps) const {
    auto it = terms_.find(Monomial{weighted_degree(exps), exps});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  GradedPoly homogeneous_part(int d) const {
    GradedPoly out(ctx_);
    for (const auto& [m, c] : terms_)
      if (m.degree == d) out.terms_.emplace(m, c);
    return out;
  }

  /// The same polynomial viewed in a context with a different cap
  /// (same variables); terms above the new cap are dropped.
  GradedPoly with_cap(int cap) const {
    auto ctx = std::make_shared<const PolyContext>(PolyContext{ctx_->names, ctx_->weights, cap});
    GradedPoly out(ctx);
    for (const auto& [m, c] : terms_)
      if (m.degree <= cap) out.terms_.emplace(m, c);
    return out;
  }

  /// Re-homes the terms into an equal context object.
  GradedPoly rebased(const ContextPtr& ctx) const {
    if (!(*ctx == *ctx_)) throw ContextMismatch("cannot rebase into a different context");
    GradedPoly out(ctx);
    out.terms_ = terms_;
    return out;
  }

  GradedPoly zero_like() const { return GradedPoly(ctx_); }
  GradedPoly one_like() const { return one(ctx_); }
  int degree_bound() const { return ctx_->degree_cap; }

  GradedPoly& operator+=(const GradedPoly& o) {
    check_context(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }

  GradedPoly& operator-=(const GradedPoly& o) {
    check_context(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  GradedPoly& operator*=(const Rational& q) {
    if (q == 0) {
      terms_.clear();
    } else {
      for (auto& [m, c] : terms_) c *= q;
    }
    return *this;
  }

  friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
  friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
  friend GradedPoly operator-(GradedPoly a) { return a *= Rational(-1); }
  friend GradedPoly operator*(GradedPoly a, const Rational& q) { return a *= q; }
  friend GradedPoly operator*(const Rational& q, GradedPoly a) { return a *= q; }

  friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
    a.check_context(b);
    GradedPoly out(a.ctx_);
    const int cap = a.ctx_->degree_cap;
    const std::size_t n = a.ctx_->size();
    std::vector<std::uint16_t> e(n);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        // terms are degree-sorted, so the rest of b only gets worse
        if (ma.degree + mb.degree > cap) break;
        for (std::size_t i = 0; i < n; ++i) e[i] = static_cast<std::uint16_t>(ma.exps[i] + mb.exps[i]);
        out.add_term(Monomial{ma.degree + mb.degree, e}, ca * cb);
      }
    }
    return out;
  }

  GradedPoly& operator*=(const GradedPoly& o) { return *this = *this * o; }

  friend bool operator==(const GradedPoly& a, const GradedPoly& b) {
    return *a.ctx_ == *b.ctx_ && a.terms_ == b.terms_;
  }

  GradedPoly pow(unsigned k) const {
    GradedPoly result = one_like();
    GradedPoly base = *this;
    while (k > 0) {
      if (k & 1U) result *= base;
      k >>= 1U;
      if (k > 0) base *= base;
    }
    return result;
  }

  /// Substitutes x_i -> images[i] (each a polynomial in the same context).
  GradedPoly substitute(const std::vector<GradedPoly>& images) const {
    if (images.size() != ctx_->size()) throw ContextMismatch("substitution arity mismatch");
    std::vector<std::vector<GradedPoly>> powers(images.size());
    GradedPoly out(ctx_);
    for (const auto& [m, c] : terms_) {
      GradedPoly t = constant(ctx_, c);
      for (std::size_t i = 0; i < m.exps.size(); ++i) {
        if (m.exps[i] == 0) continue;
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(one_like());
        while (pw.size() <= m.exps[i]) pw.push_back(pw.back() * images[i]);
        t *= pw[m.exps[i]];
      }
      out += t;
    }
    return out;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      Rational a = abs(c);
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      bool unit_monomial = m.degree == 0;
      if (unit_monomial || a != 1) {
        os << a.get_str();
        if (!unit_monomial) os << "*";
      }
      bool first_var = true;
      for (std::size_t i = 0; i < m.exps.size(); ++i) {
        if (m.exps[i] == 0) continue;
        if (!first_var) os << "*";
        first_var = false;
        os << ctx_->names[i];
        if (m.exps[i] > 1) os << "^" << m.exps[i];
      }
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const GradedPoly& p) { return os << p.to_string(); }

  int weighted_degree(const std::vector<std::uint16_t>& exps) const {
    int d = 0;
    for (std::size_t i = 0; i < exps.size(); ++i) d += exps[i] * ctx_->weights[i];
    return d;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0 || m.degree > ctx_->degree_cap) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

 private:
  void check_context(const GradedPoly& o) const {
    if (ctx_ != o.ctx_ && !(ctx_ && o.ctx_ && *ctx_ == *o.ctx_))
      throw ContextMismatch("polynomials live in different variable contexts");
  }

  ContextPtr ctx_;
  TermMap terms_;
};

inline GradedPoly add(const GradedPoly& f, const GradedPoly& g) { return f + g; }
inline GradedPoly mul(const GradedPoly& f, const GradedPoly& g) { return f * g; }

/// Σ_{k ≤ cap} f^k / k!.
inline GradedPoly trunc_exp(const GradedPoly& f) {
  if (f.constant_term() != 0) throw DivisionError("trunc_exp needs a zero constant term");
  const int cap = f.context()->degree_cap;
  GradedPoly result = f.one_like();
  GradedPoly term = f.one_like();
  for (int k = 1; k <= cap; ++k) {
    term = term * f * Rational(1, k);
    if (term.is_zero()) break;
    result += term;
  }
  return result;
}

/// Exact quotient by a nonzero homogeneous linear form. Throws DivisionError
/// when the division leaves a remainder.
inline GradedPoly divide_exact(const GradedPoly& f, const GradedPoly& ell) {
  if (ell.is_zero()) throw DivisionError("division by the zero linear form");
  const auto& ctx = f.context();
  if (!(*ctx == *ell.context())) throw ContextMismatch("divisor lives in a different context");
  // pivot: the last variable with a nonzero coefficient in ell
  std::size_t pivot = ctx->size();
  Rational pivot_coeff;
  for (const auto& [m, c] : ell.terms()) {
    int nz = 0;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < m.exps.size(); ++i)
      if (m.exps[i] != 0) {
        nz += m.exps[i];
        idx = i;
      }
    if (nz != 1 || ctx->weights[idx] != m.degree)
      throw DivisionError("divisor is not a homogeneous linear form");
    if (pivot == ctx->size() || idx > pivot) {
      pivot = idx;
      pivot_coeff = c;
    }
  }
  // Long division in the pivot variable: peel off the highest pivot power.
  GradedPoly rem = f;
  GradedPoly quot(ctx);
  while (true) {
    const Monomial* lead = nullptr;
    for (const auto& [m, c] : rem.terms())
      if (m.exps[pivot] > 0 && (lead == nullptr || m.exps[pivot] > lead->exps[pivot])) lead = &m;
    if (lead == nullptr) break;
    const unsigned top = lead->exps[pivot];
    GradedPoly step(ctx);
    for (const auto& [m, c] : rem.terms()) {
      if (m.exps[pivot] != top) continue;
      Monomial q = m;
      q.exps[pivot] = static_cast<std::uint16_t>(top - 1);
      q.degree -= ctx->weights[pivot];
      step.add_term(q, c / pivot_coeff);
    }
    quot += step;
    rem -= step * ell;
  }
  if (!rem.is_zero()) throw DivisionError("polynomial is not divisible by " + ell.to_string());
  return quot;
}

/// Power-series quotient num/den. When den has zero constant term the context
/// must be univariate; the shared power of the variable is cancelled and the
/// result lives in a context whose cap is lowered by that order.
inline GradedPoly series_quotient(const GradedPoly& num, const GradedPoly& den) {
  const auto& ctx = num.context();
  if (!(*ctx == *den.context())) throw ContextMismatch("series quotient across contexts");
  if (den.is_zero()) throw DivisionError("series quotient by zero");
  const int cap = ctx->degree_cap;
  if (den.constant_term() != 0) {
    // 1/den = Σ (1 - den/c0)^k / c0
    Rational c0 = den.constant_term();
    GradedPoly u = num.one_like() - den * (1 / c0);
    GradedPoly inv = num.one_like();
    GradedPoly pw = num.one_like();
    for (int k = 1; k <= cap; ++k) {
      pw *= u;
      if (pw.is_zero()) break;
      inv += pw;
    }
    return num * inv * (1 / c0);
  }
  if (ctx->size() != 1 || ctx->weights[0] != 1)
    throw DivisionError("zero leading coefficient: order matching needs a univariate series");
  const int d = den.order();
  if (num.order() >= 0 && num.order() < d)
    throw DivisionError("zero leading coefficient after order matching");
  Series n(static_cast<std::size_t>(cap) + 1, Rational(0)), dn(static_cast<std::size_t>(cap) + 1, Rational(0));
  for (const auto& [m, c] : num.terms()) n[m.degree] = c;
  for (const auto& [m, c] : den.terms()) dn[m.degree] = c;
  const int out_cap = cap - d;
  Series q = series_quotient(n, dn, static_cast<std::size_t>(out_cap));
  auto out_ctx = make_context(ctx->names, out_cap, ctx->weights);
  GradedPoly out(out_ctx);
  for (int k = 0; k <= out_cap; ++k) out += GradedPoly::variable(out_ctx, 0, k) * q[k];
  return out;
}

}  // namespace stablerank
