#pragma once

#include "qhl/central_ext.hpp"
#include "qhl/qhl.hpp"
#include "qhl/witt.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qhl {

/// x (x) t^n in g (x) k[t, t^-1].
template <class Key>
struct LoopKey
{
  Key base{};
  std::int64_t degree = 0;

  friend auto operator<=>(const LoopKey&, const LoopKey&) = default;
  friend bool operator==(const LoopKey&, const LoopKey&) = default;
};

template <class Key>
std::string key_string(const LoopKey<Key>& k)
{
  return key_string(k.base) + "*t^" + std::to_string(k.degree);
}

template <Field K, class Key>
FreeVec<K, LoopKey<Key>> tensor_t(const FreeVec<K, Key>& x, std::int64_t n)
{
  FreeVec<K, LoopKey<Key>> r;
  for (const auto& [k, c] : x.terms()) {
    r.add_term(LoopKey<Key>{k, n}, c);
  }
  return r;
}

template <class Key>
std::vector<LoopKey<Key>> loop_window(const std::vector<Key>& basis, std::int64_t lo, std::int64_t hi)
{
  std::vector<LoopKey<Key>> w;
  for (std::int64_t n = lo; n <= hi; ++n) {
    for (const auto& x : basis) {
      w.push_back({x, n});
    }
  }
  return w;
}

/// The loop algebra with alpha (x) id, beta (x) id, omega (x) id; the basis list is
/// the base basis times the degrees lo..hi.
template <Field K, class Key>
QhlAlgebra<K, LoopKey<Key>> build_loop(const QhlAlgebra<K, Key>& base, std::int64_t lo, std::int64_t hi)
{
  using LK = LoopKey<Key>;
  auto g = std::make_shared<const QhlAlgebra<K, Key>>(base);
  QhlAlgebra<K, LK> A;
  A.name = "loop(" + base.name + ")";
  A.basis = loop_window(base.basis, lo, hi);
  A.bracket_on_basis = [g](const LK& x, const LK& y) { return tensor_t(g->bracket(x.base, y.base), x.degree + y.degree); };
  A.alpha_on_basis = [g](const LK& x) { return tensor_t(g->alpha(x.base), x.degree); };
  A.beta_on_basis = [g](const LK& x) { return tensor_t(g->beta(x.base), x.degree); };
  A.omega = [g](const LK& x, const LK& y) { return g->omega(x.base, y.base); };
  if (base.grade_group && base.grade) {
    A.grade_group = base.grade_group;
    A.grade = [g](const LK& x) { return g->grade(x.base); };
  }
  A.params = {{"base", base.name}, {"base_params", base.params}};
  return A;
}

/// A bilinear form on basis keys.
template <Field K, class Key>
using BilinearForm = std::function<K(const Key&, const Key&)>;

template <Field K, class Key>
K form_on(const BilinearForm<K, Key>& B, const FreeVec<K, Key>& x, const FreeVec<K, Key>& y)
{
  K r(0);
  for (const auto& [a, ca] : x.terms()) {
    for (const auto& [b, cb] : y.terms()) {
      r = r + ca * cb * B(a, b);
    }
  }
  return r;
}

/// B(x, y) = trace(ad x ad y) for a finite-dimensional Lie algebra (alpha = beta = id,
/// omega = -1 on the basis).
template <Field K, class Key>
BilinearForm<K, Key> killing_form(const QhlAlgebra<K, Key>& L)
{
  using V = FreeVec<K, Key>;
  for (const auto& x : L.basis) {
    if (L.alpha(x) != V::basis(x) || L.beta(x) != V::basis(x)) {
      throw std::invalid_argument("killing form needs a Lie algebra: alpha or beta is not the identity on " + key_string(x));
    }
    for (const auto& y : L.basis) {
      auto w = L.omega(x, y);
      if (!w || *w != K(-1)) {
        throw std::invalid_argument("killing form needs a Lie algebra: omega(" + key_string(x) + "," + key_string(y) + ") != -1");
      }
    }
  }
  auto table = std::make_shared<std::map<std::pair<Key, Key>, K>>();
  for (const auto& x : L.basis) {
    for (const auto& y : L.basis) {
      K tr(0);
      for (const auto& e : L.basis) {
        tr = tr + L.bracket(V::basis(x), L.bracket(y, e)).coeff(e);
      }
      (*table)[{x, y}] = tr;
    }
  }
  return [table](const Key& x, const Key& y) {
    auto it = table->find({x, y});
    return it == table->end() ? K(0) : it->second;
  };
}

/// Symmetry B(x,y) = B(y,x) and invariance B(<x,y>, z) = B(x, <y,z>) on basis keys.
template <Field K, class Key>
Report check_invariant_form(const QhlAlgebra<K, Key>& L, const BilinearForm<K, Key>& B)
{
  using V = FreeVec<K, Key>;
  Report rep;
  ReportTimer timer(rep);
  rep.suite = "invariant-form";
  rep.params = {{"algebra", L.name}};
  rep.window = detail::window_json(L.basis);
  for (const auto& x : L.basis) {
    for (const auto& y : L.basis) {
      K a = B(x, y);
      K b = B(y, x);
      rep.record(a == b, {"symmetric", key_string(x), key_string(y)}, a.to_string(), b.to_string());
      for (const auto& z : L.basis) {
        K l = form_on(B, L.bracket(x, y), V::basis(z));
        K r = form_on(B, V::basis(x), L.bracket(y, z));
        rep.record(l == r, {"invariant", key_string(x), key_string(y), key_string(z)}, l.to_string(), r.to_string());
      }
    }
  }
  return rep;
}

/// g(x (x) t^n, y (x) t^m) = B(x, y) eta {n}_q [n + m = k], the residue of B(x,y) D(t^n) t^m
/// for D = eta t^-k (id - sigma)/(1 - q) with sigma(t) = q t.
template <Field K, class Key>
struct LoopCocycle
{
  BilinearForm<K, Key> B;
  K eta{1};
  std::int64_t k = 0;
  K q{1};

  K operator()(const LoopKey<Key>& x, const LoopKey<Key>& y) const
  {
    if (x.degree + y.degree != k) {
      return K(0);
    }
    return B(x.base, y.base) * eta * q_integer(x.degree, q);
  }

  nlohmann::json to_json() const { return {{"eta", eta.to_string()}, {"k", k}, {"q", q.to_string()}}; }
};

/// The loop algebra extended by k.c with the cocycle above; alpha and beta fix c and
/// omega acts blockwise.
template <Field K, class Key>
struct CentralLoopExtension
{
  QhlAlgebra<K, Key> base;
  QhlAlgebra<K, LoopKey<Key>> loop;
  LoopCocycle<K, Key> cocycle;
  BuiltExtension<K, LoopKey<Key>, std::string> ext;
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  const QhlAlgebra<K, ExtKey<LoopKey<Key>, std::string>>& algebra() const { return ext.E; }
};

template <Field K, class Key>
CentralLoopExtension<K, Key> build_central_loop(const QhlAlgebra<K, Key>& base, std::int64_t lo, std::int64_t hi,
                                                LoopCocycle<K, Key> cocycle)
{
  using LK = LoopKey<Key>;
  ExtensionData<K, LK, std::string> d;
  d.L = build_loop(base, lo, hi);
  d.a = abelian_algebra<K, std::string>("k", {"c"});
  d.g = [cocycle](const LK& x, const LK& y) { return FreeVec<K, std::string>::basis("c", cocycle(x, y)); };
  d.f = projection_onto<K, LK, std::string>(d.a.alpha_on_basis);
  d.h = projection_onto<K, LK, std::string>(d.a.beta_on_basis);
  d.L_window = d.L.basis;
  d.a_window = d.a.basis;
  CentralLoopExtension<K, Key> r{base, d.L, cocycle, build_extension(d, false), lo, hi};
  r.ext.E.name = "central(" + d.L.name + ")";
  r.ext.E.params = {{"base", base.name}, {"cocycle", cocycle.to_json()}};
  return r;
}

/// The cyclic sum over (x,n), (y,m), (z,l) of g((alpha + id)(x) (x) t^n, <y,z> (x) t^(m+l)),
/// each term weighted by -omega(z, x) (so by 1 when omega = -1); nullopt outside D_omega.
template <Field K, class Key>
std::optional<K> loop_cocycle_residual(const CentralLoopExtension<K, Key>& C, const LoopKey<Key>& x, const LoopKey<Key>& y,
                                       const LoopKey<Key>& z)
{
  using V = FreeVec<K, Key>;
  using LK = LoopKey<Key>;
  const LK* c[3] = {&x, &y, &z};
  K sum(0);
  for (int i = 0; i < 3; ++i) {
    const LK& p = *c[i];
    const LK& q = *c[(i + 1) % 3];
    const LK& r = *c[(i + 2) % 3];
    auto w = C.base.omega(r.base, p.base);
    if (!w) {
      return std::nullopt;
    }
    V xp = V::basis(p.base);
    auto u = tensor_t(xp + C.base.alpha(xp), p.degree);
    auto v = tensor_t(C.base.bracket(q.base, r.base), q.degree + r.degree);
    K term(0);
    for (const auto& [a, ca] : u.terms()) {
      for (const auto& [b, cb] : v.terms()) {
        term = term + ca * cb * C.cocycle(a, b);
      }
    }
    sum = sum - *w * term;
  }
  return sum;
}

/// Residuals of the loop cocycle condition for every base triple and degree triple in
/// lo..hi; nonzero residuals are failures with the symbolic value as lhs.
template <Field K, class Key>
Report check_loop_cocycle(const CentralLoopExtension<K, Key>& C, std::int64_t lo, std::int64_t hi)
{
  auto window = loop_window(C.base.basis, lo, hi);
  Report rep;
  ReportTimer timer(rep);
  rep.suite = "loop-cocycle";
  rep.params = {{"base", C.base.name}, {"cocycle", C.cocycle.to_json()}};
  rep.window = {{"basis", detail::window_json(C.base.basis)}, {"degrees", {lo, hi}}};
  rep = detail::over_first_key(std::move(rep), window, [&](const LoopKey<Key>& x, Report& part) {
    for (const auto& y : window) {
      for (const auto& z : window) {
        if (auto r = loop_cocycle_residual(C, x, y, z)) {
          part.record(r->is_zero(), {key_string(x), key_string(y), key_string(z)}, r->to_string(), "0");
        }
      }
    }
  });
  if (!rep.failures.empty()) {
    std::int64_t max_degree = 0;
    for (const auto& f : rep.failures) {
      for (const auto& idx : f.indices) {
        auto s = idx.template get<std::string>();
        max_degree = std::max<std::int64_t>(max_degree, std::abs(std::stoll(s.substr(s.rfind('^') + 1))));
      }
    }
    rep.notes.push_back("nonzero residuals: " + std::to_string(rep.failures.size()) + " of " + std::to_string(rep.checked));
    rep.notes.push_back("largest |degree| with a nonzero residual: " + std::to_string(max_degree));
  }
  return rep;
}

} // namespace qhl
