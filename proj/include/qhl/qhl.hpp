#pragma once

#include "qhl/field.hpp"
#include "qhl/parallel.hpp"
#include "qhl/report.hpp"
#include "qhl/vec.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qhl {

using Grade = std::vector<std::int64_t>;

inline std::string grade_string(const Grade& g) { return key_string(g); }

/// Z^rank + Z/m_1 + ... + Z/m_t, elements stored as rank + t integers with
/// torsion slots reduced to 0 <= g < m.
class GradeGroup
{
public:
  GradeGroup() = default;
  GradeGroup(std::size_t rank, std::vector<std::int64_t> torsion) : m_rank(rank), m_torsion(std::move(torsion))
  {
    for (auto m : m_torsion) {
      if (m < 2) {
        throw std::invalid_argument("torsion modulus must be at least 2, got " + std::to_string(m));
      }
    }
  }

  static GradeGroup trivial() { return {}; }
  static GradeGroup integers(std::size_t rank = 1) { return GradeGroup(rank, {}); }
  static GradeGroup cyclic(std::int64_t m) { return GradeGroup(0, {m}); }

  std::size_t rank() const { return m_rank; }
  const std::vector<std::int64_t>& torsion() const { return m_torsion; }
  std::size_t length() const { return m_rank + m_torsion.size(); }
  bool finite() const { return m_rank == 0; }

  Grade zero() const { return Grade(length(), 0); }

  Grade normalize(Grade g) const
  {
    if (g.size() != length()) {
      throw std::invalid_argument("grade " + grade_string(g) + " has the wrong length for this group");
    }
    for (std::size_t i = 0; i < m_torsion.size(); ++i) {
      auto& x = g[m_rank + i];
      x %= m_torsion[i];
      if (x < 0) {
        x += m_torsion[i];
      }
    }
    return g;
  }

  Grade add(const Grade& a, const Grade& b) const
  {
    if (a.size() != length() || b.size() != length()) {
      throw std::invalid_argument("grade of the wrong length");
    }
    Grade r(length());
    for (std::size_t i = 0; i < r.size(); ++i) {
      r[i] = a[i] + b[i];
    }
    return normalize(r);
  }

  Grade negate(const Grade& a) const
  {
    Grade r = a;
    for (auto& x : r) {
      x = -x;
    }
    return normalize(r);
  }

  /// Every element when finite; otherwise every element with free part in [lo, hi].
  std::vector<Grade> elements(std::int64_t lo = -2, std::int64_t hi = 2) const
  {
    std::vector<Grade> out{Grade{}};
    for (std::size_t i = 0; i < length(); ++i) {
      std::int64_t a = i < m_rank ? lo : 0;
      std::int64_t b = i < m_rank ? hi : m_torsion[i - m_rank] - 1;
      std::vector<Grade> next;
      for (const auto& g : out) {
        for (std::int64_t v = a; v <= b; ++v) {
          Grade h = g;
          h.push_back(v);
          next.push_back(std::move(h));
        }
      }
      out = std::move(next);
    }
    return out;
  }

  nlohmann::json to_json() const { return {{"rank", m_rank}, {"torsion", m_torsion}}; }

  friend bool operator==(const GradeGroup&, const GradeGroup&) = default;

private:
  std::size_t m_rank = 0;
  std::vector<std::int64_t> m_torsion;
};

/// epsilon: Gamma x Gamma -> K.
template <Field K>
struct CommutationFactor
{
  GradeGroup group;
  std::function<K(const Grade&, const Grade&)> eps;
  nlohmann::json description;

  K operator()(const Grade& a, const Grade& b) const { return eps(group.normalize(a), group.normalize(b)); }
};

/// epsilon(a, b) = (-1)^{a^T M b}.
template <Field K>
CommutationFactor<K> sign_bicharacter(const GradeGroup& group, std::vector<std::vector<std::int64_t>> M)
{
  if (M.size() != group.length()) {
    throw std::invalid_argument("sign matrix size does not match the grade group");
  }
  for (const auto& row : M) {
    if (row.size() != group.length()) {
      throw std::invalid_argument("sign matrix must be square");
    }
  }
  for (std::size_t i = 0; i < group.torsion().size(); ++i) {
    if (group.torsion()[i] % 2 != 0) {
      for (std::size_t j = 0; j < group.length(); ++j) {
        if (M[group.rank() + i][j] % 2 != 0 || M[j][group.rank() + i] % 2 != 0) {
          throw std::invalid_argument("sign bicharacter is not well defined on an odd torsion factor");
        }
      }
    }
  }
  auto eps = [M](const Grade& a, const Grade& b) {
    std::int64_t e = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        e += a[i] * M[i][j] * b[j];
      }
    }
    return (e % 2 == 0) ? K(1) : K(-1);
  };
  return {group, eps, {{"sign_matrix", M}}};
}

template <Field K>
CommutationFactor<K> trivial_factor(const GradeGroup& group)
{
  return {group, [](const Grade&, const Grade&) { return K(1); }, "trivial"};
}

/// The three commutation-factor axioms, on every triple of a finite group or on
/// triples with free part in [-2, 2] otherwise.
template <Field K>
Report check_commutation_factor(const CommutationFactor<K>& cf)
{
  Report rep;
  ReportTimer timer(rep);
  rep.suite = "commutation-factor";
  rep.params = {{"group", cf.group.to_json()}, {"epsilon", cf.description}};
  auto elems = cf.group.elements();
  rep.window = cf.group.finite() ? nlohmann::json("all") : nlohmann::json::array({-2, 2});
  for (const auto& a : elems) {
    for (const auto& b : elems) {
      K inv = cf(a, b) * cf(b, a);
      rep.record(inv == K(1), {"inverse", grade_string(a), grade_string(b)}, inv.to_string(), "1");
      for (const auto& c : elems) {
        K l1 = cf(cf.group.add(a, b), c);
        K r1 = cf(a, c) * cf(b, c);
        rep.record(l1 == r1, {"left", grade_string(a), grade_string(b), grade_string(c)}, l1.to_string(), r1.to_string());
        K l2 = cf(a, cf.group.add(b, c));
        K r2 = cf(a, b) * cf(a, c);
        rep.record(l2 == r2, {"right", grade_string(a), grade_string(b), grade_string(c)}, l2.to_string(), r2.to_string());
      }
    }
  }
  return rep;
}

/// (L, <.,.>, alpha, beta, omega) given on basis keys and extended (bi)linearly.
/// omega is scalar valued; it returns nullopt on pairs outside its domain.
template <Field K, class Key>
struct QhlAlgebra
{
  using key_type = Key;
  using coefficient_type = K;
  using Vec = FreeVec<K, Key>;
  using BracketFn = std::function<Vec(const Key&, const Key&)>;
  using MapFn = std::function<Vec(const Key&)>;
  using OmegaFn = std::function<std::optional<K>(const Key&, const Key&)>;
  using GradingFn = std::function<Grade(const Key&)>;

  std::string name;
  std::vector<Key> basis;
  BracketFn bracket_on_basis;
  MapFn alpha_on_basis;
  MapFn beta_on_basis;
  OmegaFn omega;
  std::optional<GradeGroup> grade_group;
  GradingFn grade;
  nlohmann::json params = nlohmann::json::object();

  Vec bracket(const Key& x, const Key& y) const { return bracket_on_basis(x, y); }
  Vec bracket(const Vec& x, const Vec& y) const { return apply_bilinear<K, Key, Key>(x, y, bracket_on_basis); }
  Vec alpha(const Vec& x) const { return apply_linear<K, Key, Key>(x, alpha_on_basis); }
  Vec beta(const Vec& x) const { return apply_linear<K, Key, Key>(x, beta_on_basis); }
  Vec alpha(const Key& x) const { return alpha_on_basis(x); }
  Vec beta(const Key& x) const { return beta_on_basis(x); }
};

template <Field K, class Key>
typename QhlAlgebra<K, Key>::MapFn identity_map()
{
  return [](const Key& k) { return FreeVec<K, Key>::basis(k); };
}

template <Field K, class Key>
typename QhlAlgebra<K, Key>::OmegaFn constant_omega(K value)
{
  return [value](const Key&, const Key&) { return std::optional<K>(value); };
}

/// Bracket table on pairs of basis keys; missing pairs bracket to zero.
template <Field K, class Key>
using StructureTable = std::map<std::pair<Key, Key>, FreeVec<K, Key>>;

template <Field K, class Key>
typename QhlAlgebra<K, Key>::BracketFn table_bracket(StructureTable<K, Key> table)
{
  auto shared = std::make_shared<const StructureTable<K, Key>>(std::move(table));
  return [shared](const Key& x, const Key& y) {
    auto it = shared->find({x, y});
    return it == shared->end() ? FreeVec<K, Key>{} : it->second;
  };
}

/// Ordinary Lie algebra: alpha = beta = id, omega = -1.
template <Field K, class Key>
QhlAlgebra<K, Key> make_lie_algebra(std::string name, std::vector<Key> basis, StructureTable<K, Key> table)
{
  QhlAlgebra<K, Key> A;
  A.name = std::move(name);
  A.basis = std::move(basis);
  A.bracket_on_basis = table_bracket(std::move(table));
  A.alpha_on_basis = identity_map<K, Key>();
  A.beta_on_basis = identity_map<K, Key>();
  A.omega = constant_omega<K, Key>(K(-1));
  return A;
}

/// Color Lie algebra from a commutation factor and a graded bracket table:
/// alpha = beta = id and omega(x, y) = -epsilon(grade x, grade y) on homogeneous keys.
template <Field K, class Key>
QhlAlgebra<K, Key> make_color_algebra(std::string name, const CommutationFactor<K>& eps, std::vector<Key> basis,
                                      std::map<Key, Grade> grading, StructureTable<K, Key> table)
{
  const GradeGroup& G = eps.group;
  auto axioms = check_commutation_factor(eps);
  if (!axioms.passed()) {
    const auto& f = axioms.failures.front();
    throw std::invalid_argument("not a commutation factor: " + f.indices.dump() + " gives " + f.lhs + " vs " + f.rhs);
  }
  for (auto& [k, g] : grading) {
    g = G.normalize(g);
  }
  for (const auto& k : basis) {
    if (!grading.count(k)) {
      throw std::invalid_argument("basis element " + key_string(k) + " has no grade");
    }
  }
  for (const auto& [pair, value] : table) {
    if (!grading.count(pair.first) || !grading.count(pair.second)) {
      throw std::invalid_argument("bracket (" + key_string(pair.first) + "," + key_string(pair.second) + ") uses an ungraded key");
    }
    Grade expected = G.add(grading.at(pair.first), grading.at(pair.second));
    for (const auto& [k, c] : value.terms()) {
      if (!grading.count(k) || grading.at(k) != expected) {
        throw std::invalid_argument("grading violation in bracket (" + key_string(pair.first) + "," + key_string(pair.second) +
                                    "): " + key_string(k) + " is not of degree " + grade_string(expected));
      }
    }
  }
  auto shared_grading = std::make_shared<const std::map<Key, Grade>>(std::move(grading));
  QhlAlgebra<K, Key> A;
  A.name = std::move(name);
  A.basis = std::move(basis);
  A.bracket_on_basis = table_bracket(std::move(table));
  A.alpha_on_basis = identity_map<K, Key>();
  A.beta_on_basis = identity_map<K, Key>();
  A.omega = [shared_grading, eps](const Key& x, const Key& y) -> std::optional<K> {
    auto ix = shared_grading->find(x);
    auto iy = shared_grading->find(y);
    if (ix == shared_grading->end() || iy == shared_grading->end()) {
      return std::nullopt;
    }
    return -eps(ix->second, iy->second);
  };
  A.grade_group = G;
  A.grade = [shared_grading](const Key& x) { return shared_grading->at(x); };
  A.params = {{"grade_group", G.to_json()}, {"epsilon", eps.description}};
  return A;
}

/// A copy of A whose bracket on (i, j) has `amount` added to its k coefficient.
template <Field K, class Key>
QhlAlgebra<K, Key> mutate(const QhlAlgebra<K, Key>& A, const Key& i, const Key& j, const Key& k, const K& amount = K(1))
{
  QhlAlgebra<K, Key> B = A;
  auto inner = A.bracket_on_basis;
  B.bracket_on_basis = [inner, i, j, k, amount](const Key& x, const Key& y) {
    auto v = inner(x, y);
    if (x == i && y == j) {
      v.add_term(k, amount);
    }
    return v;
  };
  B.name = A.name + " (mutated at [" + key_string(i) + "," + key_string(j) + "]." + key_string(k) + ")";
  return B;
}

namespace detail {

template <class Key, class Fn>
Report over_first_key(Report rep, const std::vector<Key>& window, Fn fn)
{
  auto start = std::chrono::steady_clock::now();
  auto parts = parallel_map(window.size(), [&](std::size_t i) {
    Report part;
    fn(window[i], part);
    return part;
  });
  for (const auto& p : parts) {
    rep.merge(p);
  }
  rep.elapsed_ms += std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

template <class Key>
nlohmann::json window_json(const std::vector<Key>& window)
{
  nlohmann::json w = nlohmann::json::array();
  for (const auto& k : window) {
    w.push_back(key_string(k));
  }
  return w;
}

} // namespace detail

/// <alpha x, alpha y> = beta(alpha(<x, y>)) on all basis pairs of the window.
template <Field K, class Key>
Report check_beta_twisting(const QhlAlgebra<K, Key>& A, const std::vector<Key>& window)
{
  Report rep;
  ReportTimer timer(rep);
  rep.suite = "beta-twisting";
  rep.params = A.params;
  rep.window = detail::window_json(window);
  return detail::over_first_key(std::move(rep), window, [&](const Key& x, Report& part) {
    auto ax = A.alpha(x);
    for (const auto& y : window) {
      auto lhs = A.bracket(ax, A.alpha(y));
      auto rhs = A.beta(A.alpha(A.bracket(x, y)));
      part.record(lhs == rhs, {"beta-twisting", key_string(x), key_string(y)}, lhs.to_string(), rhs.to_string());
    }
  });
}

/// <x, y> = omega(x, y) <y, x> on all basis pairs of the window inside D_omega.
template <Field K, class Key>
Report check_omega_symmetry(const QhlAlgebra<K, Key>& A, const std::vector<Key>& window)
{
  Report rep;
  ReportTimer timer(rep);
  rep.suite = "omega-symmetry";
  rep.params = A.params;
  rep.window = detail::window_json(window);
  return detail::over_first_key(std::move(rep), window, [&](const Key& x, Report& part) {
    for (const auto& y : window) {
      auto w = A.omega(x, y);
      if (!w) {
        continue;
      }
      auto lhs = A.bracket(x, y);
      auto rhs = A.bracket(y, x).scaled(*w);
      part.record(lhs == rhs, {"omega-symmetry", key_string(x), key_string(y)}, lhs.to_string(), rhs.to_string());
    }
  });
}

/// Cyclic sum over (x, y, z) of omega(z, x)(<alpha x, <y, z>> + beta<x, <y, z>>) = 0
/// on all basis triples of the window whose cyclic pairs lie in D_omega.
template <Field K, class Key>
Report check_qhl_jacobi(const QhlAlgebra<K, Key>& A, const std::vector<Key>& window)
{
  Report rep;
  ReportTimer timer(rep);
  rep.suite = "qhl-jacobi";
  rep.params = A.params;
  rep.window = detail::window_json(window);
  using Vec = typename QhlAlgebra<K, Key>::Vec;
  return detail::over_first_key(std::move(rep), window, [&](const Key& x, Report& part) {
    for (const auto& y : window) {
      for (const auto& z : window) {
        auto wzx = A.omega(z, x);
        auto wxy = A.omega(x, y);
        auto wyz = A.omega(y, z);
        if (!wzx || !wxy || !wyz) {
          continue;
        }
        auto term = [&](const Key& a, const Key& b, const Key& c, const K& w) {
          Vec inner = A.bracket(b, c);
          return (A.bracket(A.alpha(a), inner) + A.beta(A.bracket(Vec::basis(a), inner))).scaled(w);
        };
        Vec sum = term(x, y, z, *wzx) + term(y, z, x, *wxy) + term(z, x, y, *wyz);
        part.record(sum.is_zero(), {"qhl-jacobi", key_string(x), key_string(y), key_string(z)}, sum.to_string(), "0");
      }
    }
  });
}

/// When alpha = id on the window, beta must fix every bracket value there.
template <Field K, class Key>
Report check_commutator_ideal(const QhlAlgebra<K, Key>& A, const std::vector<Key>& window)
{
  Report rep;
  ReportTimer timer(rep);
  rep.suite = "beta-on-commutators";
  rep.params = A.params;
  rep.window = detail::window_json(window);
  for (const auto& x : window) {
    if (A.alpha(x) != FreeVec<K, Key>::basis(x)) {
      rep.notes.push_back("alpha is not the identity on the window; nothing to check");
      return rep;
    }
  }
  return detail::over_first_key(std::move(rep), window, [&](const Key& x, Report& part) {
    for (const auto& y : window) {
      auto v = A.bracket(x, y);
      auto bv = A.beta(v);
      part.record(bv == v, {"beta-on-commutators", key_string(x), key_string(y)}, bv.to_string(), v.to_string());
    }
  });
}

/// beta-twisting, omega-symmetry and the qhl-Jacobi identity in one report.
template <Field K, class Key>
Report check_qhl_axioms(const QhlAlgebra<K, Key>& A, const std::vector<Key>& window)
{
  Report rep;
  ReportTimer timer(rep);
  rep.suite = "qhl-axioms";
  rep.params = A.params;
  rep.params["algebra"] = A.name;
  rep.window = detail::window_json(window);
  rep.merge(check_beta_twisting(A, window));
  rep.merge(check_omega_symmetry(A, window));
  rep.merge(check_qhl_jacobi(A, window));
  return rep;
}

template <Field K, class Key>
Report check_qhl_axioms(const QhlAlgebra<K, Key>& A)
{
  return check_qhl_axioms(A, A.basis);
}

enum class MorphismMode { weak, strong };

/// omega(u, v) for vectors: defined when every pair of support keys has the same omega value.
template <Field K, class Key>
std::optional<K> omega_on_vectors(const QhlAlgebra<K, Key>& A, const FreeVec<K, Key>& u, const FreeVec<K, Key>& v)
{
  std::optional<K> value;
  for (const auto& [a, ca] : u.terms()) {
    for (const auto& [b, cb] : v.terms()) {
      auto w = A.omega(a, b);
      if (!w || (value && *value != *w)) {
        return std::nullopt;
      }
      value = w;
    }
  }
  return value;
}

/// M1 (and M2, M3 in strong mode) for phi given on basis keys, plus the
/// omega-intertwining consequence omega'(phi x, phi y) phi(w) = phi(omega(x, y) w),
/// checked on w = <y, x> for every window pair where both omegas are defined.
template <Field K, class Key1, class Key2>
Report check_morphism(const std::function<FreeVec<K, Key2>(const Key1&)>& phi, const QhlAlgebra<K, Key1>& L,
                      const QhlAlgebra<K, Key2>& M, MorphismMode mode, const std::vector<Key1>& window)
{
  Report rep;
  ReportTimer timer(rep);
  rep.suite = mode == MorphismMode::strong ? "strong-morphism" : "weak-morphism";
  rep.params = {{"source", L.name}, {"target", M.name}};
  rep.window = detail::window_json(window);
  auto phi_vec = [&](const FreeVec<K, Key1>& v) { return apply_linear<K, Key1, Key2>(v, phi); };
  return detail::over_first_key(std::move(rep), window, [&](const Key1& x, Report& part) {
    auto px = phi(x);
    if (mode == MorphismMode::strong) {
      auto l2 = phi_vec(L.alpha(x));
      auto r2 = M.alpha(px);
      part.record(l2 == r2, {"M2", key_string(x)}, l2.to_string(), r2.to_string());
      auto l3 = phi_vec(L.beta(x));
      auto r3 = M.beta(px);
      part.record(l3 == r3, {"M3", key_string(x)}, l3.to_string(), r3.to_string());
    }
    for (const auto& y : window) {
      auto py = phi(y);
      auto l1 = phi_vec(L.bracket(x, y));
      auto r1 = M.bracket(px, py);
      part.record(l1 == r1, {"M1", key_string(x), key_string(y)}, l1.to_string(), r1.to_string());
      auto w = L.omega(x, y);
      if (!w) {
        continue;
      }
      auto image = phi_vec(L.bracket(y, x));
      if (px.is_zero() || py.is_zero()) {
        continue;
      }
      auto w2 = omega_on_vectors(M, px, py);
      if (!w2) {
        continue;
      }
      auto lhs = image.scaled(*w2);
      auto rhs = image.scaled(*w);
      part.record(lhs == rhs, {"omega-intertwining", key_string(x), key_string(y)}, lhs.to_string(), rhs.to_string());
    }
  });
}

} // namespace qhl
