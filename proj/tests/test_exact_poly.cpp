#include <gtest/gtest.h>

#include "support.hpp"

using namespace stablerank;
using testsupport::random_poly;

TEST(Rational, ParsesLiterals) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("-2/4"), make_rational(-1, 2));
  EXPECT_EQ(parse_rational("+7/1"), Rational(7));
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("x"), ParseError);
  EXPECT_THROW(parse_rational("1.5"), ParseError);
}

TEST(Rational, ResidueAndCombinatorics) {
  EXPECT_EQ(residue(Rational(-7), 6), Integer(5));
  EXPECT_EQ(residue(Rational(12), 6), Integer(0));
  EXPECT_THROW(residue(make_rational(1, 2), 2), DivisionError);
  EXPECT_EQ(factorial(0), Rational(1));
  EXPECT_EQ(factorial(6), Rational(720));
  EXPECT_EQ(binomial(5, 2), Rational(10));
  EXPECT_EQ(binomial(-1, 2), Rational(1));
  EXPECT_EQ(binomial(-3, 3), Rational(-10));
  EXPECT_EQ(binomial(4, -1), Rational(0));
}

TEST(Series, ExpLogInverse) {
  const Series e = exp_series(6);
  const Series em = exp_series(6, -1);
  const Series prod = series_mul(e, em, 6);
  EXPECT_EQ(prod[0], Rational(1));
  for (std::size_t k = 1; k <= 6; ++k) EXPECT_EQ(prod[k], Rational(0));
  const Series lg = series_log(e, 6);
  EXPECT_EQ(lg[1], Rational(1));
  for (std::size_t k = 2; k <= 6; ++k) EXPECT_EQ(lg[k], Rational(0));
  EXPECT_THROW(series_inverse(Series{Rational(0), Rational(1)}, 3), DivisionError);
}

TEST(Series, ToddCoefficients) {
  const Series td = todd_series(6);
  EXPECT_EQ(td[0], Rational(1));
  EXPECT_EQ(td[1], make_rational(1, 2));
  EXPECT_EQ(td[2], make_rational(1, 12));
  EXPECT_EQ(td[3], Rational(0));
  EXPECT_EQ(td[4], make_rational(-1, 720));
  EXPECT_EQ(td[5], Rational(0));
  EXPECT_EQ(td[6], make_rational(1, 30240));
}

TEST(GradedPoly, RingAxiomsOnRandomInputs) {
  testsupport::reseed(1);
  auto ctx = make_indexed_context("x", 3, 6);
  for (int trial = 0; trial < 40; ++trial) {
    const GradedPoly a = random_poly(ctx, 3), b = random_poly(ctx, 3), c = random_poly(ctx, 3);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a - a, GradedPoly::zero(ctx));
    EXPECT_EQ(a * GradedPoly::one(ctx), a);
  }
}

TEST(GradedPoly, TruncatesAboveCap) {
  auto ctx = make_indexed_context("x", 2, 3);
  const GradedPoly x = GradedPoly::variable(ctx, 0), y = GradedPoly::variable(ctx, 1);
  EXPECT_TRUE((x * x * y * y).is_zero());
  EXPECT_EQ((x + y).pow(3).homogeneous_part(3), (x + y).pow(3));
  EXPECT_EQ(x.pow(2).to_string(), "x1^2");
  EXPECT_EQ((x * 2 - y * make_rational(1, 2)).degree(), 1);
}

TEST(GradedPoly, ContextMismatchIsRejected) {
  auto c1 = make_indexed_context("x", 2, 3);
  auto c2 = make_indexed_context("y", 2, 3);
  EXPECT_THROW(GradedPoly::variable(c1, 0) + GradedPoly::variable(c2, 0), ContextMismatch);
  EXPECT_THROW(GradedPoly::variable(c1, 0) * GradedPoly::variable(c2, 0), ContextMismatch);
}

TEST(GradedPoly, ExactDivision) {
  testsupport::reseed(2);
  auto ctx = make_indexed_context("x", 3, 8);
  for (int trial = 0; trial < 30; ++trial) {
    const GradedPoly ell = GradedPoly::linear(ctx, std::vector<long>{testsupport::uniform(1, 3), testsupport::uniform(-3, 3), testsupport::uniform(-3, 3)});
    const GradedPoly q = random_poly(ctx, 4);
    EXPECT_EQ(divide_exact(ell * q, ell), q);
  }
  const GradedPoly x = GradedPoly::variable(ctx, 0), y = GradedPoly::variable(ctx, 1);
  EXPECT_THROW(divide_exact(x * x + y, x), DivisionError);
  EXPECT_THROW(divide_exact(x, GradedPoly::zero(ctx)), DivisionError);
}

TEST(GradedPoly, TruncatedExponential) {
  auto ctx = make_indexed_context("x", 2, 5);
  const GradedPoly x = GradedPoly::variable(ctx, 0), y = GradedPoly::variable(ctx, 1);
  EXPECT_EQ(trunc_exp(x) * trunc_exp(y), trunc_exp(x + y));
  EXPECT_EQ(trunc_exp(x) * trunc_exp(-x), GradedPoly::one(ctx));
  EXPECT_THROW(trunc_exp(x + GradedPoly::one(ctx)), DivisionError);
}

TEST(GradedPoly, SeriesQuotient) {
  auto ctx = make_context({"h"}, 6);
  const GradedPoly h = GradedPoly::variable(ctx, 0);
  const GradedPoly one = GradedPoly::one(ctx);
  // h / (1 - e^{-h}) has constant term 1 after order matching
  const GradedPoly td = series_quotient(h, one - trunc_exp(-h));
  EXPECT_EQ(td.context()->degree_cap, 5);
  EXPECT_EQ(td.coefficient({1}), make_rational(1, 2));
  EXPECT_EQ(td.coefficient({2}), make_rational(1, 12));
  EXPECT_EQ(td.coefficient({4}), make_rational(-1, 720));
  EXPECT_EQ(series_quotient(one, one - h) * (one - h), one);
  EXPECT_THROW(series_quotient(one, h), DivisionError);
  EXPECT_THROW(series_quotient(h, GradedPoly::zero(ctx)), DivisionError);
  auto ctx2 = make_indexed_context("x", 2, 4);
  EXPECT_THROW(series_quotient(GradedPoly::variable(ctx2, 0), GradedPoly::variable(ctx2, 1)), DivisionError);
}

TEST(GradedPoly, Substitution) {
  auto ctx = make_indexed_context("x", 2, 4);
  const GradedPoly x = GradedPoly::variable(ctx, 0), y = GradedPoly::variable(ctx, 1);
  const GradedPoly f = x * x + x * y * 3;
  EXPECT_EQ(f.substitute({y, x}), y * y + x * y * 3);
  EXPECT_EQ(f.substitute({x + y, y}), (x + y) * (x + y) + (x + y) * y * 3);
}

TEST(Expression, ParsesAndEvaluates) {
  auto ctx = make_context({"a", "b"}, 4);
  const GradedPoly a = GradedPoly::variable(ctx, 0), b = GradedPoly::variable(ctx, 1);
  std::function<GradedPoly(const std::string&)> lookup = [&](const std::string& n) {
    if (n == "a") return a;
    if (n == "b") return b;
    throw ParseError("unknown " + n);
  };
  const GradedPoly one = GradedPoly::one(ctx);
  EXPECT_EQ(evaluate_expression<GradedPoly>("3a", lookup, one), a * 3);
  EXPECT_EQ(evaluate_expression<GradedPoly>("2 a b", lookup, one), a * b * 2);
  EXPECT_EQ(evaluate_expression<GradedPoly>("(a+b)^2", lookup, one), (a + b) * (a + b));
  EXPECT_EQ(evaluate_expression<GradedPoly>("1/2 a^2 - b", lookup, one), a * a * make_rational(1, 2) - b);
  EXPECT_EQ(evaluate_expression<GradedPoly>("-a + -b", lookup, one), -(a + b));
  EXPECT_EQ(evaluate_expression<GradedPoly>("0", lookup, one), GradedPoly::zero(ctx));
  EXPECT_THROW(parse_expression("a +"), ParseError);
  EXPECT_THROW(parse_expression("(a"), ParseError);
  EXPECT_THROW(parse_expression("a^-1"), ParseError);
  EXPECT_THROW(parse_expression(""), ParseError);
  EXPECT_THROW(evaluate_expression<GradedPoly>("c", lookup, one), ParseError);
}
