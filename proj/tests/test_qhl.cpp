#include "generators.hpp"

#include "qhl/descriptor.hpp"
#include "qhl/fixtures.hpp"
#include "qhl/witt.hpp"

#include <gtest/gtest.h>

#include <array>
#include <fstream>

using namespace qhl;

namespace {

using Key = std::string;
using Alg = QhlAlgebra<Rational, Key>;
using V = FreeVec<Rational, Key>;

// Small dense matrices over Q, used as an independent model of each fixture.
template <std::size_t N>
using Mat = std::array<std::array<Rational, N>, N>;

template <std::size_t N>
Mat<N> mul(const Mat<N>& a, const Mat<N>& b)
{
  Mat<N> c{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t k = 0; k < N; ++k)
        c[i][j] += a[i][k] * b[k][j];
  return c;
}

template <std::size_t N>
Mat<N> combo(const Mat<N>& a, const Rational& s, const Mat<N>& b)
{
  Mat<N> c{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      c[i][j] = a[i][j] + s * b[i][j];
  return c;
}

template <std::size_t N>
Mat<N> unit(std::size_t i, std::size_t j)
{
  Mat<N> m{};
  m[i][j] = 1;
  return m;
}

// Matrix of a basis vector under a key -> matrix assignment.
template <std::size_t N>
Mat<N> realize(const V& v, const std::map<Key, Mat<N>>& rep)
{
  Mat<N> m{};
  for (const auto& [k, c] : v.terms())
    m = combo(m, c, rep.at(k));
  return m;
}

Fq q() { return Fq::variable(); }

Witt<Fq> q_witt() { return Witt<Fq>(SigmaDerivation<Fq>(SigmaEndo<Fq>(q(), 1), Fq(1), 0)); }

std::vector<std::int64_t> range(std::int64_t lo, std::int64_t hi)
{
  std::vector<std::int64_t> r;
  for (auto i = lo; i <= hi; ++i)
    r.push_back(i);
  return r;
}

} // namespace

TEST(GradeGroup, CanonicalRepresentatives)
{
  GradeGroup G(1, {2, 3});
  EXPECT_EQ(G.normalize({5, -1, 7}), (Grade{5, 1, 1}));
  EXPECT_EQ(G.add({1, 1, 2}, {-3, 1, 2}), (Grade{-2, 0, 1}));
  EXPECT_EQ(G.add({4, 1, 1}, G.negate({4, 1, 1})), G.zero());
  EXPECT_EQ(GradeGroup(0, {2, 2}).elements().size(), 4u);
  EXPECT_EQ(G.elements(-1, 1).size(), 3u * 2 * 3);
  EXPECT_THROW(GradeGroup(0, {1}), std::invalid_argument);
  EXPECT_THROW(G.normalize({1, 0}), std::invalid_argument);
}

TEST(CommutationFactor, StockFactorsSatisfyAxiomsExhaustively)
{
  auto klein = fixtures::klein_factor<Rational>();
  auto rep = check_commutation_factor(klein);
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.checked, 4 * 4 + 2 * 4 * 4 * 4);

  auto super = sign_bicharacter<Rational>(GradeGroup::cyclic(2), {{1}});
  EXPECT_TRUE(check_commutation_factor(super).passed());
  EXPECT_EQ(super({1}, {1}), Rational(-1));
  EXPECT_EQ(super({1}, {0}), Rational(1));

  EXPECT_TRUE(check_commutation_factor(trivial_factor<Rational>(GradeGroup::cyclic(2))).passed());

  auto free = sign_bicharacter<Rational>(GradeGroup::integers(1), {{1}});
  EXPECT_TRUE(check_commutation_factor(free).passed());
}

TEST(CommutationFactor, BrokenFactorsAreRejected)
{
  CommutationFactor<Rational> minus{GradeGroup::cyclic(2), [](const Grade&, const Grade&) { return Rational(-1); }, "minus"};
  auto rep = check_commutation_factor(minus);
  EXPECT_FALSE(rep.passed());
  EXPECT_EQ(rep.failures.front().indices[0], "left");

  CommutationFactor<Rational> two{GradeGroup::cyclic(2),
                                  [](const Grade& a, const Grade& b) { return a[0] && b[0] ? Rational(2) : Rational(1); }, "two"};
  EXPECT_FALSE(check_commutation_factor(two).passed());
  EXPECT_THROW((make_color_algebra<Rational, Key>("bad", two, {"x"}, {{"x", {1}}}, {})), std::invalid_argument);

  EXPECT_THROW(sign_bicharacter<Rational>(GradeGroup::cyclic(3), {{1}}), std::invalid_argument);
}

TEST(ColorAlgebra, GradingViolationNamesThePair)
{
  auto eps = sign_bicharacter<Rational>(GradeGroup::cyclic(2), {{1}});
  StructureTable<Rational, Key> t;
  t[{"a", "b"}] = V::basis("b");
  try {
    make_color_algebra<Rational, Key>("bad", eps, {"a", "b"}, {{"a", {1}}, {"b", {1}}}, t);
    FAIL() << "expected a grading violation";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("(a,b)"), std::string::npos) << e.what();
  }
}

TEST(ColorAlgebra, TrivialGroupGivesLieAlgebra)
{
  auto eps = trivial_factor<Rational>(GradeGroup::trivial());
  auto sl2 = fixtures::sl2<Rational>();
  StructureTable<Rational, Key> t;
  std::map<Key, Grade> grading;
  for (const auto& x : sl2.basis) {
    grading[x] = {};
    for (const auto& y : sl2.basis)
      t[{x, y}] = sl2.bracket(x, y);
  }
  auto A = make_color_algebra<Rational, Key>("sl2", eps, sl2.basis, grading, t);
  for (const auto& x : A.basis)
    for (const auto& y : A.basis)
      EXPECT_EQ(A.omega(x, y), Rational(-1));
  EXPECT_TRUE(check_qhl_axioms(A).passed());
}

TEST(ColorAlgebra, ConstantOneFactorOnZ2)
{
  // epsilon = 1 everywhere: omega = -1, a Z2-graded Lie algebra.
  auto eps = trivial_factor<Rational>(GradeGroup::cyclic(2));
  StructureTable<Rational, Key> t;
  t[{"h", "x"}] = V::basis("x", Rational(2));
  t[{"x", "h"}] = V::basis("x", Rational(-2));
  auto A = make_color_algebra<Rational, Key>("z2 lie", eps, {"h", "x"}, {{"h", {0}}, {"x", {1}}}, t);
  EXPECT_TRUE(check_qhl_axioms(A).passed());
}

TEST(Fixtures, Sl2MatchesMatrixModel)
{
  std::map<Key, Mat<2>> rep{{"e", unit<2>(0, 1)}, {"f", unit<2>(1, 0)}, {"h", combo(unit<2>(0, 0), Rational(-1), unit<2>(1, 1))}};
  auto A = fixtures::sl2<Rational>();
  for (const auto& x : A.basis) {
    for (const auto& y : A.basis) {
      auto expect = combo(mul(rep[x], rep[y]), Rational(-1), mul(rep[y], rep[x]));
      EXPECT_EQ(realize(A.bracket(x, y), rep), expect) << x << "," << y;
    }
  }
  EXPECT_EQ(A.bracket("e", "f"), V::basis("h"));
  EXPECT_EQ(A.bracket("h", "f"), V::basis("f", Rational(-2)));
}

TEST(Fixtures, Gl11MatchesSupercommutator)
{
  std::map<Key, Mat<2>> rep{{"E11", unit<2>(0, 0)}, {"E22", unit<2>(1, 1)}, {"E12", unit<2>(0, 1)}, {"E21", unit<2>(1, 0)}};
  auto parity = [](const Key& k) { return k[1] != k[2] ? 1 : 0; };
  auto A = fixtures::gl11<Rational>();
  for (const auto& x : A.basis) {
    for (const auto& y : A.basis) {
      Rational sign = (parity(x) * parity(y)) % 2 ? Rational(-1) : Rational(1);
      auto expect = combo(mul(rep[x], rep[y]), -sign, mul(rep[y], rep[x]));
      EXPECT_EQ(realize(A.bracket(x, y), rep), expect) << x << "," << y;
      EXPECT_EQ(A.omega(x, y), -sign);
    }
  }
  EXPECT_EQ(A.bracket("E12", "E21"), V::basis("E11") + V::basis("E22"));
  EXPECT_EQ(A.bracket("E21", "E12"), A.bracket("E12", "E21"));
}

TEST(Fixtures, ColorGl3MatchesMatrixModel)
{
  // degree of E_ij is g_i + g_j with g = (0,0), (1,0), (0,1); epsilon from the bilinear form a1 b2 + a2 b1.
  const int g[3][2] = {{0, 0}, {1, 0}, {0, 1}};
  std::map<Key, Mat<3>> rep;
  std::map<Key, std::array<int, 2>> deg;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Key k = "E" + std::to_string(i + 1) + std::to_string(j + 1);
      rep[k] = unit<3>(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      deg[k] = {(g[i][0] + g[j][0]) % 2, (g[i][1] + g[j][1]) % 2};
    }
  }
  auto A = fixtures::color_gl3<Rational>();
  ASSERT_EQ(A.basis.size(), 9u);
  for (const auto& x : A.basis) {
    EXPECT_EQ(A.grade(x), (Grade{deg[x][0], deg[x][1]}));
    for (const auto& y : A.basis) {
      int e = deg[x][0] * deg[y][1] + deg[x][1] * deg[y][0];
      Rational eps = e % 2 ? Rational(-1) : Rational(1);
      auto expect = combo(mul(rep[x], rep[y]), -eps, mul(rep[y], rep[x]));
      EXPECT_EQ(realize(A.bracket(x, y), rep), expect) << x << "," << y;
      EXPECT_EQ(A.omega(x, y), -eps);
    }
  }
  EXPECT_EQ(A.bracket("E12", "E21"), V::basis("E11") - V::basis("E22"));
  EXPECT_EQ(A.bracket("E12", "E23"), V::basis("E13"));
  EXPECT_EQ(A.bracket("E23", "E12"), V::basis("E13"));
}

TEST(Axioms, StockAlgebrasPass)
{
  for (const auto& A : {fixtures::sl2<Rational>(), fixtures::gl11<Rational>(), fixtures::color_gl3<Rational>()}) {
    auto rep = check_qhl_axioms(A);
    EXPECT_TRUE(rep.passed()) << A.name << ": " << rep.to_json().dump();
    auto n = static_cast<std::int64_t>(A.basis.size());
    EXPECT_EQ(rep.checked, 2 * n * n + n * n * n) << A.name;
  }
  auto color = check_qhl_axioms(fixtures::color_gl3<Rational>());
  EXPECT_EQ(color.checked, 2 * 81 + 729);
}

TEST(Axioms, SuperOddPairsAreSymmetric)
{
  auto A = fixtures::gl11<Rational>();
  EXPECT_EQ(A.omega("E12", "E21"), Rational(1));
  EXPECT_EQ(A.omega("E12", "E12"), Rational(1));
  EXPECT_EQ(A.omega("E11", "E12"), Rational(-1));
  EXPECT_TRUE(check_omega_symmetry(A, A.basis).passed());
}

TEST(Axioms, QWittAsHomLiePasses)
{
  auto A = as_qhl(q_witt(), range(-4, 4));
  EXPECT_EQ(A.alpha(std::int64_t{3}), (FreeVec<Fq, std::int64_t>::basis(3, power(q(), 3))));
  EXPECT_EQ(A.beta(std::int64_t{3}), (FreeVec<Fq, std::int64_t>::basis(3)));
  EXPECT_EQ(A.bracket(2, 1), (FreeVec<Fq, std::int64_t>::basis(3, q())));
  auto rep = check_qhl_axioms(A, A.basis);
  EXPECT_TRUE(rep.passed()) << rep.to_json().dump();
  EXPECT_EQ(rep.checked, 2 * 81 + 729);
}

TEST(Axioms, QWittWithDoubledBetaFailsAtFirstNonzeroPair)
{
  auto A = as_qhl(q_witt(), range(-4, 4));
  A.beta_on_basis = [](const std::int64_t& n) { return FreeVec<Fq, std::int64_t>::basis(n, Fq(2)); };
  auto rep = check_beta_twisting(A, A.basis);
  ASSERT_FALSE(rep.passed());
  // <d_-4, d_-4> = 0, so the first pair with something to compare is (-4, -3).
  EXPECT_EQ(rep.failures.front().indices, nlohmann::json::array({"beta-twisting", "-4", "-3"}));
}

TEST(Axioms, PlusOneOmegaOnSkewBracketFails)
{
  auto A = fixtures::sl2<Rational>();
  A.omega = constant_omega<Rational, Key>(Rational(1));
  EXPECT_FALSE(check_omega_symmetry(A, A.basis).passed());
}

TEST(Axioms, PerturbedColorConstantBreaksJacobi)
{
  auto A = mutate(fixtures::color_gl3<Rational>(), Key("E12"), Key("E21"), Key("E11"));
  EXPECT_FALSE(check_qhl_jacobi(A, A.basis).passed());
}

TEST(Axioms, DomainOfOmegaRestrictsTheChecks)
{
  auto A = fixtures::sl2<Rational>();
  A.omega = [](const Key& x, const Key& y) -> std::optional<Rational> {
    if (x == "h" || y == "h")
      return std::nullopt;
    return Rational(-1);
  };
  EXPECT_EQ(check_omega_symmetry(A, A.basis).checked, 4);
  EXPECT_EQ(check_qhl_jacobi(A, A.basis).checked, 8);
}

namespace {

template <class K, class Key2>
void expect_mutations_detected(const QhlAlgebra<K, Key2>& A, std::uint64_t seed)
{
  proptest::Gen gen(seed);
  auto pick = [&] { return A.basis[static_cast<std::size_t>(gen.integer(0, static_cast<std::int64_t>(A.basis.size()) - 1))]; };
  for (int trial = 0; trial < 20; ++trial) {
    auto i = pick();
    auto j = pick();
    auto k = pick();
    auto B = mutate(A, i, j, k, K(1));
    auto rep = check_qhl_axioms(B, B.basis);
    EXPECT_FALSE(rep.passed()) << B.name;
  }
}

} // namespace

TEST(Axioms, RandomMutationsAreDetected)
{
  expect_mutations_detected(fixtures::sl2<Rational>(), 11);
  expect_mutations_detected(fixtures::gl11<Rational>(), 12);
  expect_mutations_detected(fixtures::color_gl3<Rational>(), 13);
  expect_mutations_detected(as_qhl(q_witt(), range(-2, 2)), 14);
}

TEST(Axioms, EveryOddDiagonalMutationOfGl11IsDetected)
{
  auto A = fixtures::gl11<Rational>();
  for (const Key& i : {"E12", "E21"})
    for (const auto& k : A.basis)
      EXPECT_FALSE(check_qhl_axioms(mutate(A, i, i, k)).passed()) << i << " -> " << k;
}

TEST(Axioms, BetaFixesCommutatorsWhenAlphaIsIdentity)
{
  for (const auto& A : {fixtures::sl2<Rational>(), fixtures::gl11<Rational>(), fixtures::color_gl3<Rational>()}) {
    auto rep = check_commutator_ideal(A, A.basis);
    EXPECT_TRUE(rep.passed()) << A.name;
    EXPECT_GT(rep.checked, 0);
  }
  auto A = fixtures::sl2<Rational>();
  A.beta_on_basis = [](const Key& x) { return V::basis(x, Rational(2)); };
  EXPECT_FALSE(check_commutator_ideal(A, A.basis).passed());
  EXPECT_FALSE(check_beta_twisting(A, A.basis).passed());

  auto W = as_qhl(q_witt(), range(-2, 2));
  auto rep = check_commutator_ideal(W, W.basis);
  EXPECT_EQ(rep.checked, 0);
  EXPECT_EQ(rep.notes.size(), 1u);
}

TEST(Morphism, IdentityOnSl2IsStrong)
{
  auto A = fixtures::sl2<Rational>();
  std::function<V(const Key&)> id = [](const Key& x) { return V::basis(x); };
  auto rep = check_morphism(id, A, A, MorphismMode::strong, A.basis);
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.suite, "strong-morphism");
  EXPECT_EQ(rep.checked, 2 * 3 + 9 + 9);
}

TEST(Morphism, QWittScalingBreaksM1)
{
  auto A = as_qhl(q_witt(), range(-2, 2));
  using W = FreeVec<Fq, std::int64_t>;
  std::function<W(const std::int64_t&)> phi = [](const std::int64_t& n) { return W::basis(n, Fq(2)); };
  auto rep = check_morphism(phi, A, A, MorphismMode::weak, A.basis);
  ASSERT_FALSE(rep.passed());
  EXPECT_EQ(rep.failures.front().indices, nlohmann::json::array({"M1", "-2", "-1"}));
  bool found = false;
  for (const auto& f : rep.failures)
    found = found || f.indices == nlohmann::json::array({"M1", "1", "0"});
  EXPECT_TRUE(found);
  auto b = A.bracket(1, 0);
  EXPECT_EQ((apply_linear<Fq, std::int64_t, std::int64_t>(b, phi).scaled(Fq(2))), A.bracket(phi(1), phi(0)));
}

TEST(Morphism, GradedAutomorphismOfColorAlgebraIsStrong)
{
  // Conjugation by diag(1, 2, 3): E_ij -> (d_i / d_j) E_ij.
  auto A = fixtures::color_gl3<Rational>();
  std::function<V(const Key&)> phi = [](const Key& x) {
    int i = x[1] - '0';
    int j = x[2] - '0';
    return V::basis(x, Rational(i) / Rational(j));
  };
  auto rep = check_morphism(phi, A, A, MorphismMode::strong, A.basis);
  EXPECT_TRUE(rep.passed()) << rep.to_json().dump();
  EXPECT_EQ(rep.checked, 2 * 9 + 81 + 81);
}

TEST(Morphism, OmegaIntertwiningDetectsMismatchedOmega)
{
  auto L = fixtures::gl11<Rational>();
  auto M = L;
  M.omega = constant_omega<Rational, Key>(Rational(-1));
  std::function<V(const Key&)> id = [](const Key& x) { return V::basis(x); };
  auto rep = check_morphism(id, L, M, MorphismMode::weak, L.basis);
  ASSERT_FALSE(rep.passed());
  for (const auto& f : rep.failures)
    EXPECT_EQ(f.indices[0], "omega-intertwining");
  EXPECT_EQ(rep.failures.size(), 2u);
}

TEST(Morphism, StrongModeChecksIntertwiningOfAlpha)
{
  auto L = fixtures::sl2<Rational>();
  auto M = L;
  M.alpha_on_basis = [](const Key& x) { return V::basis(x, Rational(-1)); };
  std::function<V(const Key&)> id = [](const Key& x) { return V::basis(x); };
  EXPECT_TRUE(check_morphism(id, L, M, MorphismMode::weak, L.basis).passed());
  auto rep = check_morphism(id, L, M, MorphismMode::strong, L.basis);
  EXPECT_FALSE(rep.passed());
  EXPECT_EQ(rep.failures.size(), 3u);
}

TEST(Descriptor, RoundTripsStockAlgebras)
{
  for (const auto& A : {fixtures::sl2<Rational>(), fixtures::gl11<Rational>(), fixtures::color_gl3<Rational>()}) {
    auto j = algebra_to_json(A);
    auto B = algebra_from_json<Rational>(j);
    EXPECT_EQ(B.basis, A.basis);
    for (const auto& x : A.basis) {
      for (const auto& y : A.basis) {
        EXPECT_EQ(B.bracket(x, y), A.bracket(x, y));
        EXPECT_EQ(B.omega(x, y), A.omega(x, y));
      }
      EXPECT_EQ(B.alpha(x), A.alpha(x));
      EXPECT_EQ(B.beta(x), A.beta(x));
    }
    EXPECT_TRUE(check_qhl_axioms(B).passed());
    EXPECT_EQ(algebra_to_json(B), j);
  }
}

TEST(Descriptor, ParsesFieldCoefficients)
{
  auto j = nlohmann::json::parse(R"j({
    "basis": ["x", "y"],
    "bracket": {"(x,y)": {"y": "q"}, "(y,x)": {"y": "-q"}},
    "alpha": {"x": {"x": "1/2"}},
    "omega": "builtin:-1"
  })j");
  auto A = algebra_from_json<Fq>(j);
  EXPECT_EQ(A.bracket("x", "y"), (FreeVec<Fq, Key>::basis("y", q())));
  EXPECT_EQ(A.alpha("x"), (FreeVec<Fq, Key>::basis("x", Fq(1) / Fq(2))));
  EXPECT_EQ(A.beta("y"), (FreeVec<Fq, Key>::basis("y")));
  EXPECT_TRUE(check_omega_symmetry(A, A.basis).passed());
}

TEST(Descriptor, RejectsMalformedInput)
{
  auto parse = [](const char* text) { return algebra_from_json<Rational>(nlohmann::json::parse(text)); };
  EXPECT_THROW(parse(R"j({"basis": ["x"], "bracket": {"x,x": {}}})j"), std::invalid_argument);
  EXPECT_THROW(parse(R"j({"basis": ["x"], "bracket": {"(x,z)": {}}})j"), std::invalid_argument);
  EXPECT_THROW(parse(R"j({"basis": ["x", "x"]})j"), std::invalid_argument);
  EXPECT_THROW(parse(R"j({"basis": ["x"], "omega": "builtin:+1"})j"), std::invalid_argument);
  EXPECT_THROW(parse(R"j({"basis": ["x"], "omega": {"color": {"sign_matrix": [[1]]}}})j"), std::invalid_argument);
  EXPECT_THROW(parse(R"j({"basis": ["a", "b"], "grade_group": {"rank": 0, "torsion": [2]},
                        "grading": {"a": [1], "b": [1]}, "bracket": {"(a,b)": {"b": 1}},
                        "omega": {"color": {"sign_matrix": [[1]]}}})j"),
               std::invalid_argument);
}

TEST(Descriptor, SampleFilesLoadAndPass)
{
  for (const char* name : {"sl2.json", "gl11.json", "color_gl3.json"}) {
    std::ifstream in(std::string(QHL_SAMPLES_DIR) + "/" + name);
    ASSERT_TRUE(in) << name;
    auto A = algebra_from_json<Rational>(nlohmann::json::parse(in));
    EXPECT_TRUE(check_qhl_axioms(A).passed()) << name;
  }
}
