#pragma once

// Univariate truncated power series with exact coefficients. Index k holds
// the coefficient of t^k. These feed the Todd and exponential factors that are
// later substituted into the various cohomology rings.

#include <cstddef>
#include <vector>

#include "stablerank/rational.hpp"

namespace stablerank {

using Series = std::vector<Rational>;

inline Series series_truncate(Series a, std::size_t cap) {
  a.resize(cap + 1, Rational(0));
  return a;
}

inline Series series_mul(const Series& a, const Series& b, std::size_t cap) {
  Series out(cap + 1, Rational(0));
  for (std::size_t i = 0; i < a.size() && i <= cap; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= cap; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

/// 1/a; requires a nonzero constant term.
inline Series series_inverse(const Series& a, std::size_t cap) {
  if (a.empty() || a[0] == 0) throw DivisionError("series inverse needs an invertible constant term");
  Series inv(cap + 1, Rational(0));
  inv[0] = 1 / a[0];
  for (std::size_t k = 1; k <= cap; ++k) {
    Rational s = 0;
    for (std::size_t j = 1; j <= k && j < a.size(); ++j) s += a[j] * inv[k - j];
    inv[k] = -s * inv[0];
  }
  return inv;
}

/// num/den after cancelling the common power of t. Inputs must be known through
/// degree cap + d, where d is the vanishing order of den.
inline Series series_quotient(const Series& num, const Series& den, std::size_t cap) {
  std::size_t d = 0;
  while (d < den.size() && den[d] == 0) ++d;
  if (d == den.size()) throw DivisionError("series quotient by zero");
  for (std::size_t k = 0; k < d && k < num.size(); ++k)
    if (num[k] != 0) throw DivisionError("numerator vanishes to lower order than denominator");
  Series n2, d2;
  for (std::size_t k = d; k < num.size(); ++k) n2.push_back(num[k]);
  for (std::size_t k = d; k < den.size(); ++k) d2.push_back(den[k]);
  if (n2.size() < cap + 1 || d2.size() < cap + 1)
    throw DivisionError("series quotient inputs are not known to the requested order");
  return series_mul(n2, series_inverse(d2, cap), cap);
}

inline Series exp_series(std::size_t cap, const Rational& scale = 1) {
  Series e(cap + 1);
  Rational term = 1;
  for (std::size_t k = 0; k <= cap; ++k) {
    e[k] = term;
    term = term * scale / Rational(static_cast<long>(k + 1));
  }
  return e;
}

/// log(a); requires a[0] == 1.
inline Series series_log(const Series& a, std::size_t cap) {
  if (a.empty() || a[0] != 1) throw DivisionError("series log needs constant term 1");
  // (log a)' = a'/a
  Series da(cap + 1, Rational(0));
  for (std::size_t k = 1; k < a.size() && k <= cap + 1; ++k)
    if (k - 1 <= cap) da[k - 1] = a[k] * Rational(static_cast<long>(k));
  Series q = series_mul(da, series_inverse(series_truncate(a, cap), cap), cap);
  Series out(cap + 1, Rational(0));
  for (std::size_t k = 1; k <= cap; ++k) out[k] = q[k - 1] / Rational(static_cast<long>(k));
  return out;
}

/// t/(1 - e^{-t}) through degree cap.
inline Series todd_series(std::size_t cap) {
  Series num(cap + 2, Rational(0));
  num[1] = 1;
  Series den = exp_series(cap + 1, -1);
  for (auto& c : den) c = -c;
  den[0] += 1;
  return series_quotient(num, den, cap);
}

/// Horner evaluation of a truncated series at a ring element x.
/// `one` is the unit of the ring x lives in.
template <class R>
R evaluate_series(const Series& coeffs, const R& x, const R& one) {
  R acc = one * Rational(0);
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + one * coeffs[k];
  return acc;
}

}  // namespace stablerank
