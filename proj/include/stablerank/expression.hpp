#pragma once

// Small arithmetic expression language shared by model and tuple files:
//   numbers (3, -2, 1/2), identifiers, +, -, *, ^ (non-negative integer
//   exponent), parentheses, and implicit multiplication ("3h", "2 a b").

#include <cctype>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "stablerank/rational.hpp"

namespace stablerank {

struct Expr {
  enum class Kind { Number, Name, Add, Sub, Neg, Mul, Pow };
  Kind kind = Kind::Number;
  Rational number;
  std::string name;
  unsigned exponent = 0;
  std::shared_ptr<const Expr> lhs, rhs;
};

using ExprPtr = std::shared_ptr<const Expr>;

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : s_(text) {}

  ExprPtr parse() {
    ExprPtr e = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at column " + std::to_string(pos_ + 1) + " in '" + std::string(s_) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static ExprPtr node(Expr::Kind k, ExprPtr a, ExprPtr b = nullptr) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
  }

  ExprPtr sum() {
    ExprPtr e = signed_term();
    while (true) {
      if (eat('+')) {
        e = node(Expr::Kind::Add, e, signed_term());
      } else if (eat('-')) {
        e = node(Expr::Kind::Sub, e, signed_term());
      } else {
        return e;
      }
    }
  }

  ExprPtr signed_term() {
    if (eat('-')) return node(Expr::Kind::Neg, signed_term());
    if (eat('+')) return signed_term();
    return product();
  }

  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return c == '(' || c == '_' || std::isalnum(static_cast<unsigned char>(c));
  }

  ExprPtr product() {
    ExprPtr e = power();
    while (true) {
      if (eat('*')) {
        e = node(Expr::Kind::Mul, e, power());
      } else if (starts_factor()) {
        e = node(Expr::Kind::Mul, e, power());
      } else {
        return e;
      }
    }
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (eat('^')) {
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent must be a non-negative integer");
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Pow;
      e->lhs = base;
      e->exponent = static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start))));
      return e;
    }
    return base;
  }

  ExprPtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = sum();
      if (!eat(')')) fail("missing ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string text(s_.substr(start, pos_ - start));
      // a/b only when b is a plain integer literal
      if (pos_ + 1 < s_.size() && s_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
        ++pos_;
        const std::size_t d = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        text += "/" + std::string(s_.substr(d, pos_ - d));
      }
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Number;
      e->number = parse_rational(text);
      return e;
    }
    if (c == '_' || std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (s_[pos_] == '_' || std::isalnum(static_cast<unsigned char>(s_[pos_])))) ++pos_;
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Name;
      e->name = std::string(s_.substr(start, pos_ - start));
      return e;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline ExprPtr parse_expression(std::string_view text) { return detail::ExprParser(text).parse(); }

/// Evaluates into a ring; `lookup` resolves identifiers (and throws on unknown ones).
template <class R>
R evaluate_expression(const Expr& e, const std::function<R(const std::string&)>& lookup, const R& one) {
  switch (e.kind) {
    case Expr::Kind::Number: return one * e.number;
    case Expr::Kind::Name: return lookup(e.name);
    case Expr::Kind::Add: return evaluate_expression(*e.lhs, lookup, one) + evaluate_expression(*e.rhs, lookup, one);
    case Expr::Kind::Sub: return evaluate_expression(*e.lhs, lookup, one) - evaluate_expression(*e.rhs, lookup, one);
    case Expr::Kind::Neg: return evaluate_expression(*e.lhs, lookup, one) * Rational(-1);
    case Expr::Kind::Mul: return evaluate_expression(*e.lhs, lookup, one) * evaluate_expression(*e.rhs, lookup, one);
    case Expr::Kind::Pow: {
      R base = evaluate_expression(*e.lhs, lookup, one);
      R out = one;
      for (unsigned k = 0; k < e.exponent; ++k) out = out * base;
      return out;
    }
  }
  throw ParseError("corrupt expression tree");
}

template <class R>
R evaluate_expression(std::string_view text, const std::function<R(const std::string&)>& lookup, const R& one) {
  return evaluate_expression(*parse_expression(text), lookup, one);
}

}  // namespace stablerank
