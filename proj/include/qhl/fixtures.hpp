#pragma once

#include "qhl/qhl.hpp"

#include <string>
#include <vector>

/// Stock finite-dimensional qhl-algebras on string keys.
namespace qhl::fixtures {

/// sl_2 with basis e, f, h: [e,f] = h, [h,e] = 2e, [h,f] = -2f.
template <Field K>
QhlAlgebra<K, std::string> sl2()
{
  using V = FreeVec<K, std::string>;
  StructureTable<K, std::string> t;
  auto set = [&](const std::string& x, const std::string& y, const V& v) {
    t[{x, y}] = v;
    t[{y, x}] = -v;
  };
  set("e", "f", V::basis("h"));
  set("h", "e", V::basis("e", K(2)));
  set("h", "f", V::basis("f", K(-2)));
  return make_lie_algebra<K, std::string>("sl2", {"e", "f", "h"}, std::move(t));
}

/// gl(1|1): even E11, E22, odd E12, E21, with the supercommutator of
/// elementary supermatrices.
template <Field K>
QhlAlgebra<K, std::string> gl11()
{
  using V = FreeVec<K, std::string>;
  GradeGroup z2 = GradeGroup::cyclic(2);
  auto eps = sign_bicharacter<K>(z2, {{1}});
  std::map<std::string, Grade> grading{{"E11", {0}}, {"E22", {0}}, {"E12", {1}}, {"E21", {1}}};
  StructureTable<K, std::string> t;
  V unit = V::basis("E11") + V::basis("E22");
  t[{"E12", "E21"}] = unit;
  t[{"E21", "E12"}] = unit;
  auto skew = [&](const std::string& x, const std::string& y, const V& v) {
    t[{x, y}] = v;
    t[{y, x}] = -v;
  };
  skew("E11", "E12", V::basis("E12"));
  skew("E22", "E12", V::basis("E12", K(-1)));
  skew("E11", "E21", V::basis("E21", K(-1)));
  skew("E22", "E21", V::basis("E21"));
  return make_color_algebra<K, std::string>("gl(1|1)", eps, {"E11", "E22", "E12", "E21"}, std::move(grading), std::move(t));
}

/// Z2 x Z2 with epsilon(a, b) = (-1)^{a1 b2 + a2 b1}.
template <Field K>
CommutationFactor<K> klein_factor()
{
  return sign_bicharacter<K>(GradeGroup(0, {2, 2}), {{0, 1}, {1, 0}});
}

inline std::string gl3_key(int i, int j) { return "E" + std::to_string(i) + std::to_string(j); }

/// gl_3 as a Z2 x Z2 color Lie algebra: E_ij has degree g_i + g_j with
/// g_1 = 0, g_2 = (1,0), g_3 = (0,1), and [a, b] = ab - epsilon(|a|,|b|) ba.
template <Field K>
QhlAlgebra<K, std::string> color_gl3()
{
  using V = FreeVec<K, std::string>;
  auto eps = klein_factor<K>();
  const GradeGroup& G = eps.group;
  const Grade g[3] = {{0, 0}, {1, 0}, {0, 1}};
  std::vector<std::string> basis;
  std::map<std::string, Grade> grading;
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      basis.push_back(gl3_key(i, j));
      grading[gl3_key(i, j)] = G.add(g[i - 1], g[j - 1]);
    }
  }
  StructureTable<K, std::string> t;
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      for (int k = 1; k <= 3; ++k) {
        for (int l = 1; l <= 3; ++l) {
          auto a = gl3_key(i, j);
          auto b = gl3_key(k, l);
          V v;
          if (j == k) {
            v.add_term(gl3_key(i, l), K(1));
          }
          if (l == i) {
            v.add_term(gl3_key(k, j), -eps(grading[a], grading[b]));
          }
          if (!v.is_zero()) {
            t[{a, b}] = v;
          }
        }
      }
    }
  }
  return make_color_algebra<K, std::string>("gl3 (Z2xZ2 color)", eps, std::move(basis), std::move(grading), std::move(t));
}

} // namespace qhl::fixtures
