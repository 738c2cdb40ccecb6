#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "support.hpp"

using namespace stablerank;

namespace {

const std::string kData = STABLERANK_DATA_DIR;

std::string expect_validation_error(const std::string& text) {
  try {
    parse_ring_model_text(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  ADD_FAILURE() << "model was accepted:\n" << text;
  return {};
}

bool same_in_cohomology(const Bgg& bgg, const BorelClass& a, const BorelClass& b) {
  for (const auto& w : bgg.group().enumerate())
    if (bgg.D(w, a - b) != 0) return false;
  return true;
}

Rational hilbert(const RingModel& m, long k) {
  const ChernTuple<ModelClass> line{{m.element(1) * Rational(k)}, m.one()};
  return m.integrate(chern_character(line, m.dim()) * m.todd());
}

}  // namespace

TEST(RingModel, ProjectiveSpaceStructure) {
  for (int n = 1; n <= 6; ++n) {
    const auto m = projective_space(n);
    EXPECT_EQ(m->dim(), n);
    EXPECT_EQ(m->size(), static_cast<std::size_t>(n + 1));
    EXPECT_EQ(m->integrate(m->element(1).coords().empty() ? m->zero() : m->element(n)), Rational(1));
    const auto t = m->tangent_chern();
    for (int k = 1; k <= n; ++k) EXPECT_EQ(t.c(k), m->element(k) * binomial(n + 1, k));
    EXPECT_EQ(m->integrate(m->todd()), Rational(1));
    EXPECT_FALSE(m->h2_generation_failure().has_value());
  }
}

TEST(RingModel, HilbertPolynomialOfProjectiveSpace) {
  for (int n = 1; n <= 4; ++n) {
    const auto m = projective_space(n);
    for (long k = -3; k <= 5; ++k) EXPECT_EQ(hilbert(*m, k), binomial(n + k, n)) << "n=" << n << " k=" << k;
  }
  // vanishing range -n <= k <= -1
  const auto p4 = projective_space(4);
  for (long k = -4; k <= -1; ++k) EXPECT_EQ(hilbert(*p4, k), Rational(0));
}

TEST(RingModel, SampleFilesLoad) {
  const auto p2 = load_ring_model(kData + "/p2.model");
  EXPECT_TRUE(p2->same_structure(*projective_space(2)));
  const auto p3 = load_ring_model(kData + "/p3.model");
  EXPECT_TRUE(p3->same_structure(*projective_space(3)));
  const auto p4 = load_ring_model(kData + "/p4.model");
  EXPECT_TRUE(p4->same_structure(*projective_space(4)));
  const auto p1p3 = load_ring_model(kData + "/p1xp3.model");
  const auto k13 = kunneth(*projective_space(1), *projective_space(3));
  EXPECT_EQ(p1p3->size(), k13->size());
  EXPECT_EQ(p1p3->integrate(p1p3->tangent_chern().c(4)), k13->integrate(k13->tangent_chern().c(4)));
  EXPECT_EQ(p1p3->integrate(p1p3->todd()), Rational(1));
  const auto gr = load_ring_model(kData + "/gr24.model");
  EXPECT_EQ(gr->integrate(gr->tangent_chern().c(4)), Rational(6));
  EXPECT_EQ(gr->h2_generation_failure(), std::optional<int>(2));
}

TEST(RingModel, FormatRoundTrip) {
  std::vector<ModelPtr> models{projective_space(2), projective_space(5), load_ring_model(kData + "/gr24.model"),
                               kunneth(*projective_space(1), *projective_space(1)),
                               kunneth(*projective_space(2), *projective_space(2))};
  for (const auto& m : models) {
    const auto again = parse_ring_model_text(format_ring_model(*m));
    EXPECT_TRUE(again->same_structure(*m)) << m->name();
    EXPECT_EQ(format_ring_model(*again), format_ring_model(*m));
  }
}

TEST(RingModel, KunnethProducts) {
  const auto q = kunneth(*projective_space(1), *projective_space(1));
  const auto h1 = q->element(*q->find("h_one")), h2 = q->element(*q->find("one_h"));
  EXPECT_EQ(q->integrate(h1 * h2), Rational(1));
  EXPECT_TRUE((h1 * h1).is_zero());
  EXPECT_EQ(q->tangent_chern().c(1), h1 * 2 + h2 * 2);
  EXPECT_EQ(q->integrate(q->tangent_chern().c(2)), Rational(4));
  // χ(O) = 1 on products
  const auto r = kunneth(*projective_space(2), *projective_space(3));
  EXPECT_EQ(r->integrate(r->todd()), Rational(1));
  EXPECT_EQ(r->integrate(r->tangent_chern().c(5)), Rational(12));
}

TEST(RingModel, RejectsNonAssociativeTables) {
  const std::string msg = expect_validation_error(R"(name bad
dim 3
basis 0 one
basis 1 a b
basis 2 p q
basis 3 t
mul a * a = p
mul a * b = p
mul b * b = q
mul a * p = t
mul b * q = t
integrate t = 1
)");
  EXPECT_NE(msg.find("associativity fails on ("), std::string::npos) << msg;
}

TEST(RingModel, RejectsBadTables) {
  EXPECT_NE(expect_validation_error("name g\ndim 2\nbasis 0 one\nbasis 1 h\nbasis 2 p\nmul h * h = h\nintegrate p = 1\n")
                .find("grading violation"),
            std::string::npos);
  EXPECT_NE(expect_validation_error("name g\ndim 2\nbasis 0 one\nbasis 1 h\nbasis 2 p\nmul h * h = 1/2 p\nintegrate p = 1\n")
                .find("non-integral"),
            std::string::npos);
  EXPECT_NE(expect_validation_error("name g\ndim 2\nbasis 0 one\nbasis 1 h\nbasis 2 p\nmul h * h = 2p\nintegrate p = 1\n")
                .find("not unimodular"),
            std::string::npos);
  EXPECT_NE(expect_validation_error("name g\ndim 2\nbasis 0 one\nbasis 1 h\nbasis 2 p\nmul h * h = p\nintegrate p = 2\n")
                .find("must be 1 or -1"),
            std::string::npos);
  EXPECT_NE(expect_validation_error("name g\ndim 2\nbasis 0 one\nbasis 1 h h\nbasis 2 p\nmul h * h = p\nintegrate p = 1\n")
                .find("duplicate"),
            std::string::npos);
  EXPECT_NE(expect_validation_error(
                "name g\ndim 2\nbasis 0 one\nbasis 1 h\nbasis 2 p\nmul h * h = p\nintegrate p = 1\ntangent c1 = 3p\n")
                .find("tangent class c1"),
            std::string::npos);
}

TEST(RingModel, ParseErrors) {
  EXPECT_THROW(parse_ring_model_text("name g\ndim 0\nbasis 0 one\nfoo bar\n"), ParseError);
  EXPECT_THROW(parse_ring_model_text("dim 0\nbasis 0 one\n"), ParseError);
  EXPECT_THROW(parse_ring_model_text("name g\ndim 1\nbasis 0 one\nbasis 1 h\nmul h * k = h\nintegrate h = 1\n"), ParseError);
  EXPECT_THROW(load_ring_model(kData + "/does-not-exist.model"), ParseError);
}

TEST(RingModel, SteenrodSquareTables) {
  const auto p4 = projective_space(4);
  const auto h2 = p4->element(2);
  EXPECT_TRUE(p4->sq2(h2).is_zero());
  const auto p1p3 = load_ring_model(kData + "/p1xp3.model");
  const auto ab = p1p3->element(*p1p3->find("ab"));
  EXPECT_EQ(p1p3->sq2(ab), p1p3->element(*p1p3->find("ab2")));
  const auto gr = load_ring_model(kData + "/gr24.model");
  EXPECT_FALSE(gr->has_sq2());
  EXPECT_THROW(gr->sq2(gr->element(2)), ValidationError);
}

TEST(FlagModel, Dimensions) {
  struct Case {
    const char* type;
    ParabolicSubset I;
    std::size_t dim;
    std::size_t euler;
  };
  const Case cases[] = {{"A2", {}, 3, 6},       {"A2", {1}, 2, 3},     {"A3", {1, 2}, 3, 4}, {"A3", {0, 2}, 4, 6},
                        {"B2", {}, 4, 8},       {"B2", {0}, 3, 4},     {"G2", {}, 6, 12},   {"C3", {0, 1}, 6, 8}};
  for (const auto& c : cases) {
    const FlagModel f(parse_cartan_type(c.type), c.I);
    EXPECT_EQ(f.dim(), c.dim) << f.label();
    EXPECT_EQ(f.minimal_reps().size(), c.euler) << f.label();
    EXPECT_EQ(f.saturated_reps().size(), c.euler) << f.label();
    // ∫ c_top(T) = Euler characteristic
    EXPECT_EQ(f.bgg().integrate(f.tangent_chern().c(f.dim()) * f.bgg().dual_schubert_class(f.group().parabolic_longest(c.I))),
              Rational(static_cast<long>(c.euler)))
        << f.label();
  }
}

TEST(FlagModel, ProjectiveSpaceAsQuotient) {
  // SL4 / P with W_P = <s2, s3> is P^3, hyperplane class ω1
  const FlagModel f(parse_cartan_type("A3"), {1, 2});
  const Bgg& bgg = f.bgg();
  const BorelClass h = bgg.weight_form(Weight::fundamental(3, 0));
  const auto t = f.tangent_chern();
  for (std::size_t k = 1; k <= 3; ++k)
    EXPECT_TRUE(same_in_cohomology(bgg, t.c(k), h.pow(static_cast<unsigned>(k)) * binomial(4, static_cast<long>(k)))) << k;
  EXPECT_TRUE(f.h2_generates());
  EXPECT_EQ(f.h2_roots(), (std::vector<int>{0}));
}

TEST(FlagModel, SecondCohomologyGeneration) {
  EXPECT_TRUE(FlagModel(parse_cartan_type("A2"), {}).h2_generates());
  EXPECT_TRUE(FlagModel(parse_cartan_type("A3"), {}).h2_generates());
  EXPECT_TRUE(FlagModel(parse_cartan_type("B2"), {}).h2_generates());
  EXPECT_TRUE(FlagModel(parse_cartan_type("C3"), {}).h2_generates());
  EXPECT_FALSE(FlagModel(parse_cartan_type("A3"), {0, 2}).h2_generates());
  EXPECT_FALSE(FlagModel(parse_cartan_type("G2"), {}).h2_generates());
  EXPECT_FALSE(FlagModel(parse_cartan_type("B3"), {}).h2_generates());
}

TEST(FlagModel, GrassmannianTangentClasses) {
  const FlagModel f(parse_cartan_type("A3"), {0, 2});
  const auto t = f.tangent_chern();
  const auto gr = load_ring_model(kData + "/gr24.model");
  // compare ∫ c_k · (s1)^{4-k} on both sides
  const BorelClass s1 = f.bgg().weight_form(Weight::fundamental(3, 1));
  const BorelClass fiber = f.bgg().dual_schubert_class(f.group().parabolic_longest({0, 2}));
  const ModelClass g1 = gr->element(*gr->find("s1"));
  const auto gt = gr->tangent_chern();
  for (std::size_t k = 1; k <= 4; ++k) {
    ModelClass pw = gr->one();
    for (std::size_t j = k; j < 4; ++j) pw = pw * g1;
    EXPECT_EQ(f.bgg().integrate(t.c(k) * s1.pow(static_cast<unsigned>(4 - k)) * fiber), gr->integrate(gt.c(k) * pw)) << k;
  }
}

TEST(FlagModel, InvarianceOfTuples) {
  const FlagModel f(parse_cartan_type("A2"), {1});
  const Bgg& bgg = f.bgg();
  const BorelClass x1 = GradedPoly::variable(bgg.context(), 0), x2 = GradedPoly::variable(bgg.context(), 1);
  EXPECT_TRUE(f.is_invariant(x1));
  EXPECT_FALSE(f.is_invariant(x2));
  EXPECT_THROW(f.require_invariant(ChernTuple<BorelClass>{{x2, bgg.zero()}, bgg.one()}), ValidationError);
  EXPECT_THROW(f.require_invariant(ChernTuple<BorelClass>{{x1 * make_rational(1, 2), bgg.zero()}, bgg.one()}),
               ValidationError);
  const auto sum = f.line_bundle_sum({Weight({1, 0}), Weight({-1, 0})});
  EXPECT_EQ(sum.c(1), bgg.zero());
  EXPECT_EQ(sum.c(2), -(x1 * x1));
  EXPECT_THROW(f.line_bundle_sum({Weight({0, 1})}), ValidationError);
}

TEST(TupleIo, ParsesTupleFiles) {
  std::istringstream in("# comment\nrank 3\nc1 = 2h\nc3 = h^3 # trailing\n");
  const TupleText t = parse_tuple_text(in);
  EXPECT_EQ(t.rank, std::optional<std::size_t>(3));
  EXPECT_EQ(t.classes.size(), 2u);
  const auto p3 = projective_space(3);
  const auto tuple = model_tuple(t, *p3);
  EXPECT_EQ(tuple.c(1), p3->element(1) * 2);
  EXPECT_TRUE(tuple.c(2).is_zero());
  EXPECT_EQ(tuple.c(3), p3->element(3));

  std::istringstream bad1("c1 = h\nc1 = 2h\n");
  EXPECT_THROW(parse_tuple_text(bad1), ParseError);
  std::istringstream bad2("rank 1\nc2 = h2\n");
  EXPECT_THROW(parse_tuple_text(bad2), ParseError);
  std::istringstream bad3("d1 = h\n");
  EXPECT_THROW(parse_tuple_text(bad3), ParseError);
  std::istringstream wrong_degree("c2 = h\n");
  EXPECT_THROW(model_tuple(parse_tuple_text(wrong_degree), *p3), ValidationError);
  std::istringstream unknown("c1 = k\n");
  EXPECT_THROW(model_tuple(parse_tuple_text(unknown), *p3), ParseError);

  const Bgg bgg(parse_cartan_type("A2"));
  const auto ft = flag_tuple(load_tuple_text(kData + "/tuples/a2_sum.tuple"), bgg, 3);
  EXPECT_EQ(ft.c(2), GradedPoly::variable(bgg.context(), 0) * GradedPoly::variable(bgg.context(), 1));
  std::istringstream w3("c1 = w3\n");
  EXPECT_THROW(flag_tuple(parse_tuple_text(w3), bgg, 3), ParseError);
}
