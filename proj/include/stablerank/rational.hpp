#pragma once

// Exact arithmetic primitives. Rational numbers are GMP rationals kept in
// canonical (reduced, positive denominator) form after every operation.

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace stablerank {

using Integer = mpz_class;
using Rational = mpq_class;

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ContextMismatch : public Error {
 public:
  using Error::Error;
};

class DivisionError : public Error {
 public:
  using Error::Error;
};

class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Parses `a`, `-a`, or `a/b` with decimal integers.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool slash = false;
  bool digit = false;
  for (std::size_t k = i; k < s.size(); ++k) {
    if (s[k] == '/') {
      if (slash || !digit) throw ParseError("malformed rational literal '" + s + "'");
      slash = true;
      digit = false;
    } else if (std::isdigit(static_cast<unsigned char>(s[k]))) {
      digit = true;
    } else {
      throw ParseError("malformed rational literal '" + s + "'");
    }
  }
  if (!digit) throw ParseError("malformed rational literal '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw ParseError("malformed rational literal '" + s + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

/// Least nonnegative residue of an integer-valued rational.
inline Integer residue(const Rational& q, const Integer& modulus) {
  if (!is_integer(q)) throw DivisionError("residue of non-integral value " + to_string(q));
  Integer r = q.get_num() % modulus;
  if (r < 0) r += modulus;
  return r;
}

inline Rational factorial(unsigned k) {
  Integer f = 1;
  for (unsigned i = 2; i <= k; ++i) f *= i;
  return Rational(f);
}

inline Rational binomial(long n, long k) {
  if (k < 0) return 0;
  // Generalized binomial: n(n-1)...(n-k+1)/k!, valid for negative n.
  Rational r = 1;
  for (long i = 0; i < k; ++i) {
    r *= Rational(n - i);
    r /= Rational(i + 1);
  }
  r.canonicalize();
  return r;
}

}  // namespace stablerank
