#include "generators.hpp"

#include "qhl/parse.hpp"
#include "qhl/sigma.hpp"

#include <gtest/gtest.h>

using namespace qhl;

namespace {

Fq q() { return Fq::variable(); }
Fq fq(const char* s) { return parse_field<Fq>(s); }

SigmaDerivation<Fq> make_D(std::int64_t s, std::int64_t k, Fq eta = Fq(1))
{
  return SigmaDerivation<Fq>(SigmaEndo<Fq>(q(), s), eta, k);
}

LaurentPoly<Fq> lp(std::initializer_list<std::pair<std::int64_t, Fq>> terms)
{
  LaurentPoly<Fq> a;
  for (const auto& [e, c] : terms) {
    a.add_term(e, c);
  }
  return a;
}

MultiSigmaDerivation<Fq1q2> make_multi(std::vector<std::vector<std::int64_t>> S, ExpVec G)
{
  Fq1q2 q1(Fq1::variable());
  Fq1q2 q2 = Fq1q2::variable();
  return MultiSigmaDerivation<Fq1q2>(MultiSigmaEndo<Fq1q2>({q1, q2}, std::move(S)), Fq1q2(1), std::move(G));
}

} // namespace

TEST(Sigma, MonomialSubstitution)
{
  SigmaEndo<Fq> s1(q(), 1);
  EXPECT_EQ(s1(lp({{2, Fq(1)}, {-1, Fq(1)}})), lp({{2, q() * q()}, {-1, 1 / q()}}));
  SigmaEndo<Fq> s2(q(), 2);
  EXPECT_EQ(s2(t_power<Fq>(3)), t_power<Fq>(6, power(q(), 3)));
  EXPECT_EQ(s2(LaurentPoly<Fq>(Fq(1))), LaurentPoly<Fq>(Fq(1)));
  EXPECT_THROW(SigmaEndo<Fq>(Fq(0), 1), UnsupportedParameter);
}

TEST(Sigma, IsMultiplicative)
{
  SigmaEndo<Fq> s2(q(), 2);
  auto a = lp({{0, Fq(1)}, {1, Fq(1)}});
  auto b = t_power<Fq>(-2);
  EXPECT_EQ(s2(a * b), s2(a) * s2(b));
  proptest::Gen gen(21);
  for (int i = 0; i < 100; ++i) {
    SigmaEndo<Fq> s(q(), gen.integer(-2, 3));
    auto x = gen.laurent(-6, 6);
    auto y = gen.laurent(-6, 6);
    EXPECT_EQ(s(x * y), s(x) * s(y));
  }
}

TEST(SigmaDerivation, ClosedFormExamples)
{
  // (t^3 - q^3 t^3) / ((1 - q) t) * t, by exact division
  auto d = make_D(1, 0);
  auto by_division = laurent_divexact(t_power<Fq>(3) - t_power<Fq>(3, power(q(), 3)), t_power<Fq>(1, 1 - q()))
                       .shifted(1);
  EXPECT_EQ(d.apply_D(t_power<Fq>(3)), by_division);
  EXPECT_EQ(by_division, t_power<Fq>(3, fq("1 + q + q^2")));

  auto d2 = make_D(2, 0);
  EXPECT_EQ(d2.apply_D(t_power<Fq>(2)), lp({{2, Fq(1)}, {3, q()}}));
  EXPECT_TRUE(d2.apply_D(LaurentPoly<Fq>(Fq(1))).is_zero());
}

TEST(SigmaDerivation, NegativeIndexUsesReducedQInteger)
{
  // {-2}_q = (1 - q^-2)/(1 - q) = -q^-1 - q^-2
  auto d = make_D(1, 0);
  Fq expected = (1 - power(q(), -2)) / (1 - q());
  EXPECT_EQ(expected, fq("-q^-1 - q^-2"));
  EXPECT_EQ(d.apply_D(t_power<Fq>(-2)), t_power<Fq>(-2, expected));
}

TEST(SigmaDerivation, ClosedFormMatchesDivision)
{
  for (std::int64_t s : {-1, 0, 1, 2, 3}) {
    for (std::int64_t k : {-1, 0, 1, 2}) {
      auto d = make_D(s, k, fq("2/3"));
      for (std::int64_t n = -8; n <= 8; ++n) {
        EXPECT_EQ(d.apply_D(t_power<Fq>(n)), d.apply_D_by_division(t_power<Fq>(n))) << s << " " << k << " " << n;
      }
    }
  }
}

TEST(SigmaDerivation, DivisionFormUndefinedAtClassicalPoint)
{
  SigmaDerivation<Rational> d(SigmaEndo<Rational>(Rational(1), 1), Rational(1), 0);
  EXPECT_THROW(d.apply_D_by_division(t_power<Rational>(2)), UnsupportedParameter);
  // the closed form still gives the ordinary derivative t d/dt
  EXPECT_EQ(d.apply_D(t_power<Rational>(5)), t_power<Rational>(5, Rational(5)));
}

TEST(SigmaDerivation, LeibnizRuleOnRandomPairs)
{
  proptest::Gen gen(99);
  for (int i = 0; i < 200; ++i) {
    auto d = make_D(gen.integer(1, 3), gen.integer(0, 2), gen.nonzero_fq());
    auto a = gen.laurent(-6, 6);
    auto b = gen.laurent(-6, 6);
    EXPECT_EQ(d.apply_D(a * b), d.apply_D(a) * b + d.apply_sigma(a) * d.apply_D(b));
  }
}

TEST(SigmaDerivation, LeibnizWithFormalEta)
{
  SigmaDerivation<Fqeta> d(SigmaEndo<Fqeta>(Fqeta(q()), 2), Fqeta::variable(), 1);
  proptest::Gen gen(4);
  for (int i = 0; i < 30; ++i) {
    auto a = map_coefficients(gen.laurent(-4, 4), [](const Fq& c) { return Fqeta(c); });
    auto b = map_coefficients(gen.laurent(-4, 4), [](const Fq& c) { return Fqeta(c); });
    EXPECT_EQ(d.apply_D(a * b), d.apply_D(a) * b + d.apply_sigma(a) * d.apply_D(b));
  }
}

TEST(SigmaDerivation, IsLinear)
{
  proptest::Gen gen(8);
  auto d = make_D(3, 1);
  for (int i = 0; i < 50; ++i) {
    auto a = gen.laurent(-5, 5);
    auto b = gen.laurent(-5, 5);
    Fq c = gen.fq();
    EXPECT_EQ(d.apply_D(a.scaled(c) + b), d.apply_D(a).scaled(c) + d.apply_D(b));
  }
}

TEST(Delta, KnownValues)
{
  EXPECT_EQ(make_D(1, 0).delta(), LaurentPoly<Fq>(Fq(1)));
  EXPECT_EQ(make_D(2, 1).delta(), lp({{1, q()}, {2, q() * q()}}));
  EXPECT_EQ(make_D(1, 2).delta(), LaurentPoly<Fq>(q() * q()));
  EXPECT_THROW(make_D(0, 0).delta(), UnsupportedParameter);
  EXPECT_THROW(make_D(-1, 0).delta(), UnsupportedParameter);
}

TEST(Delta, MatchesQuotientOracle)
{
  // delta = D(sigma(t^n)) / sigma(D(t^n)) for any n with D(t^n) != 0
  for (std::int64_t s = 1; s <= 3; ++s) {
    for (std::int64_t k = 0; k <= 2; ++k) {
      auto d = make_D(s, k);
      for (std::int64_t n : {-3, -1, 1, 2, 4}) {
        auto mono = t_power<Fq>(n);
        auto ratio = laurent_divexact(d.apply_D(d.apply_sigma(mono)), d.apply_sigma(d.apply_D(mono)));
        EXPECT_EQ(ratio, d.delta()) << s << " " << k << " " << n;
      }
    }
  }
}

TEST(ConditionC2, ComputedDeltaPasses)
{
  for (std::int64_t s = 1; s <= 3; ++s) {
    for (std::int64_t k = 0; k <= 2; ++k) {
      auto d = make_D(s, k);
      auto rep = check_condition_C2(d, compute_delta(d), -8, 8);
      EXPECT_TRUE(rep.passed()) << rep.to_json().dump();
      EXPECT_EQ(rep.checked, 17);
    }
  }
  auto d = make_D(2, 0);
  EXPECT_TRUE(check_condition_C2(d, lp({{0, Fq(1)}, {1, q()}}), -4, 4).passed());
}

TEST(ConditionC2, MissingDeltaIsReported)
{
  auto d = make_D(2, 0);
  auto rep = check_condition_C2(d, LaurentPoly<Fq>(Fq(1)), -2, 2);
  ASSERT_FALSE(rep.passed());
  bool saw_two = false;
  for (const auto& f : rep.failures) {
    EXPECT_NE(f.lhs, f.rhs);
    saw_two = saw_two || f.indices == nlohmann::json::array({2});
  }
  EXPECT_TRUE(saw_two);
}

TEST(ConditionC1, DomainArgument)
{
  auto rep = check_condition_C1(make_D(1, 0));
  EXPECT_TRUE(rep.passed());
  ASSERT_EQ(rep.notes.size(), 1u);
  EXPECT_NE(rep.notes[0].find("Ann(D) = {0}"), std::string::npos);

  auto zero = check_condition_C1(make_D(1, 0, Fq(0)));
  EXPECT_TRUE(zero.passed());
  EXPECT_NE(zero.notes[0].find("Ann(D) = A"), std::string::npos);

  auto multi = check_condition_C1(make_multi({{1, 0}, {0, 1}}, {0, 0}));
  EXPECT_TRUE(multi.passed());
  EXPECT_NE(multi.notes[0].find("Ann(D) = {0}"), std::string::npos);
}

TEST(MultiSigma, ColumnConvention)
{
  // sigma(z1) = q1 z1 z2^2, sigma(z2) = q2 z2
  auto d = make_multi({{1, 0}, {2, 1}}, {0, 0});
  using M = MultiLaurentPoly<Fq1q2>;
  Fq1q2 q1(Fq1::variable());
  EXPECT_EQ(d.apply_sigma(M::monomial(Fq1q2(1), {1, 0})), M::monomial(q1, {1, 2}));
  auto x = M::monomial(Fq1q2(1), {1, 0}) + M::monomial(Fq1q2(3), {-1, 2});
  auto y = M::monomial(Fq1q2(1), {0, -1});
  EXPECT_EQ(d.apply_sigma(x * y), d.apply_sigma(x) * d.apply_sigma(y));
}

TEST(MultiSigma, LeibnizAndDelta)
{
  using M = MultiLaurentPoly<Fq1q2>;
  proptest::Gen gen(31);
  std::vector<std::pair<std::vector<std::vector<std::int64_t>>, ExpVec>> cases = {
    {{{1, 0}, {0, 1}}, {0, 0}}, {{{1, 0}, {0, 1}}, {1, -1}}, {{{2, 1}, {0, 1}}, {1, 2}}, {{{0, 1}, {1, 0}}, {2, 0}}};
  for (const auto& [S, G] : cases) {
    auto d = make_multi(S, G);
    for (int i = 0; i < 20; ++i) {
      M a, b;
      for (int t = 0; t < 3; ++t) {
        a.add_term({gen.integer(-2, 2), gen.integer(-2, 2)}, Fq1q2(gen.integer(-3, 3)));
        b.add_term({gen.integer(-2, 2), gen.integer(-2, 2)}, Fq1q2(gen.integer(-3, 3)));
      }
      EXPECT_EQ(d.apply_D(a * b), d.apply_D(a) * b + d.apply_sigma(a) * d.apply_D(b));
    }
    auto rep = check_condition_C2(d, compute_delta(d), -2, 2);
    EXPECT_TRUE(rep.passed()) << rep.to_json().dump();
    EXPECT_EQ(rep.checked, 25);
  }
}
