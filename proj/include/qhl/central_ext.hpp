#pragma once

#include "qhl/qhl.hpp"

#include <compare>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qhl {

/// Basis key of E = L + a: either s(x) for an L-key x or i(c) for an a-key c.
template <class LK, class AK>
struct ExtKey
{
  bool central = false;
  LK l{};
  AK a{};

  static ExtKey lift(const LK& x) { return {false, x, AK{}}; }
  static ExtKey inject(const AK& c) { return {true, LK{}, c}; }

  friend auto operator<=>(const ExtKey&, const ExtKey&) = default;
  friend bool operator==(const ExtKey&, const ExtKey&) = default;
};

template <class LK, class AK>
std::string key_string(const ExtKey<LK, AK>& k)
{
  return k.central ? "i(" + key_string(k.a) + ")" : "s(" + key_string(k.l) + ")";
}

/// Refusal to build an extension; carries the failing report.
class ExtensionError : public std::invalid_argument
{
public:
  ExtensionError(const std::string& what, Report rep) : std::invalid_argument(what), report(std::move(rep)) {}
  Report report;
};

/// Data A, B, C for E = L + a: a bilinear g on L and linear f, h on the basis of L + a.
template <Field K, class LK, class AK>
struct ExtensionData
{
  using AVec = FreeVec<K, AK>;
  using EKey = ExtKey<LK, AK>;

  QhlAlgebra<K, LK> L;
  QhlAlgebra<K, AK> a;
  std::function<AVec(const LK&, const LK&)> g;
  std::function<AVec(const EKey&)> f;
  std::function<AVec(const EKey&)> h;
  std::vector<LK> L_window;
  std::vector<AK> a_window;

  AVec g_vec(const FreeVec<K, LK>& x, const FreeVec<K, LK>& y) const { return apply_bilinear<K, LK, AK>(x, y, g); }

  /// f and h evaluated on (l, c) in L + a.
  AVec f_pair(const FreeVec<K, LK>& l, const AVec& c) const { return on_pair(f, l, c); }
  AVec h_pair(const FreeVec<K, LK>& l, const AVec& c) const { return on_pair(h, l, c); }

private:
  static AVec on_pair(const std::function<AVec(const EKey&)>& fn, const FreeVec<K, LK>& l, const AVec& c)
  {
    AVec r;
    for (const auto& [k, x] : l.terms()) {
      r += fn(EKey::lift(k)).scaled(x);
    }
    for (const auto& [k, x] : c.terms()) {
      r += fn(EKey::inject(k)).scaled(x);
    }
    return r;
  }
};

/// f(s(x)) = 0 and f(i(c)) = alpha_a(c): the projection onto alpha_a.
template <Field K, class LK, class AK>
std::function<FreeVec<K, AK>(const ExtKey<LK, AK>&)> projection_onto(typename QhlAlgebra<K, AK>::MapFn on_a)
{
  return [on_a](const ExtKey<LK, AK>& e) { return e.central ? on_a(e.a) : FreeVec<K, AK>{}; };
}

/// The abelian algebra on the given keys with alpha = beta = id and omega = -1.
template <Field K, class AK>
QhlAlgebra<K, AK> abelian_algebra(std::string name, std::vector<AK> basis)
{
  QhlAlgebra<K, AK> A;
  A.name = std::move(name);
  A.basis = std::move(basis);
  A.bracket_on_basis = [](const AK&, const AK&) { return FreeVec<K, AK>{}; };
  A.alpha_on_basis = identity_map<K, AK>();
  A.beta_on_basis = identity_map<K, AK>();
  A.omega = constant_omega<K, AK>(K(-1));
  return A;
}

namespace detail {

template <class Key>
nlohmann::json keys_json(const std::vector<Key>& keys)
{
  nlohmann::json j = nlohmann::json::array();
  for (const auto& k : keys) {
    j.push_back(key_string(k));
  }
  return j;
}

template <class LK, class AK>
nlohmann::json ext_window_json(const std::vector<LK>& lw, const std::vector<AK>& aw)
{
  return {{"L", keys_json(lw)}, {"a", keys_json(aw)}};
}

/// Sum over the three cyclic shifts of (x, y, z) of weight(z, x) * term(x, y, z);
/// nullopt when a weight is undefined.
template <class V, class Key, class Weight, class Term>
std::optional<V> cyclic_sum(const Key& x, const Key& y, const Key& z, Weight&& weight, Term&& term)
{
  V sum;
  const Key* c[3] = {&x, &y, &z};
  for (int i = 0; i < 3; ++i) {
    const Key& p = *c[i];
    const Key& q = *c[(i + 1) % 3];
    const Key& r = *c[(i + 2) % 3];
    auto w = weight(r, p);
    if (!w) {
      return std::nullopt;
    }
    sum += term(p, q, r).scaled(*w);
  }
  return sum;
}

} // namespace detail

/// Cyclic expression for data (g, h) at (x, y, z):
///   sum omega(z,x) [ g(alpha x, <y,z>) + h(<x,<y,z>>, g(x,<y,z>)) ].
template <Field K, class LK, class AK>
std::optional<FreeVec<K, AK>> data_cocycle_residual(const ExtensionData<K, LK, AK>& d, const LK& x, const LK& y, const LK& z)
{
  using LVec = FreeVec<K, LK>;
  return detail::cyclic_sum<FreeVec<K, AK>>(
    x, y, z, [&](const LK& p, const LK& q) { return d.L.omega(p, q); },
    [&](const LK& p, const LK& q, const LK& r) {
      LVec yz = d.L.bracket(q, r);
      LVec xp = LVec::basis(p);
      return d.g_vec(d.L.alpha(xp), yz) + d.h_pair(d.L.bracket(xp, yz), d.g_vec(xp, yz));
    });
}

/// The hom-Lie form: sum g((id + alpha)(x), <y, z>).
template <Field K, class LK, class AK>
FreeVec<K, AK> hom_lie_cocycle_residual(const QhlAlgebra<K, LK>& L, const std::function<FreeVec<K, AK>(const LK&, const LK&)>& g,
                                        const LK& x, const LK& y, const LK& z)
{
  using LVec = FreeVec<K, LK>;
  return *detail::cyclic_sum<FreeVec<K, AK>>(
    x, y, z, [](const LK&, const LK&) { return std::optional<K>(K(1)); },
    [&](const LK& p, const LK& q, const LK& r) {
      LVec xp = LVec::basis(p);
      return apply_bilinear<K, LK, AK>(xp + L.alpha(xp), L.bracket(q, r), g);
    });
}

/// The graded form: sum epsilon(deg z, deg x) g(x, <y, z>).
template <Field K, class LK, class AK>
FreeVec<K, AK> color_cocycle_residual(const QhlAlgebra<K, LK>& L, const CommutationFactor<K>& eps,
                                      const std::function<FreeVec<K, AK>(const LK&, const LK&)>& g, const LK& x, const LK& y,
                                      const LK& z)
{
  using LVec = FreeVec<K, LK>;
  return *detail::cyclic_sum<FreeVec<K, AK>>(
    x, y, z, [&](const LK& p, const LK& q) { return std::optional<K>(eps(L.grade(p), L.grade(q))); },
    [&](const LK& p, const LK& q, const LK& r) { return apply_bilinear<K, LK, AK>(LVec::basis(p), L.bracket(q, r), g); });
}

/// Hypotheses of the existence theorem on the windows of d: a abelian, g omega-alternating,
/// f(0,c) = alpha_a(c), h(0,c) = beta_a(c), the alpha-compatibility of g and the cyclic condition.
template <Field K, class LK, class AK>
Report check_data_abc(const ExtensionData<K, LK, AK>& d)
{
  using LVec = FreeVec<K, LK>;
  using AVec = FreeVec<K, AK>;
  using EKey = ExtKey<LK, AK>;
  Report rep;
  ReportTimer timer(rep);
  rep.suite = "extension-data";
  rep.params = {{"L", d.L.name}, {"a", d.a.name}};
  rep.window = detail::ext_window_json(d.L_window, d.a_window);

  for (const auto& c : d.a_window) {
    for (const auto& e : d.a_window) {
      auto v = d.a.bracket(c, e);
      rep.record(v.is_zero(), {"abelian", key_string(c), key_string(e)}, v.to_string(), "0");
    }
    auto f0 = d.f(EKey::inject(c));
    auto fa = d.a.alpha(c);
    rep.record(f0 == fa, {"f(0,a)", key_string(c)}, f0.to_string(), fa.to_string());
    auto h0 = d.h(EKey::inject(c));
    auto hb = d.a.beta(c);
    rep.record(h0 == hb, {"h(0,a)", key_string(c)}, h0.to_string(), hb.to_string());
  }

  return detail::over_first_key(std::move(rep), d.L_window, [&](const LK& x, Report& part) {
    LVec xv = LVec::basis(x);
    for (const auto& y : d.L_window) {
      LVec yv = LVec::basis(y);
      if (auto w = d.L.omega(x, y)) {
        auto lhs = d.g(x, y);
        auto rhs = d.g(y, x).scaled(*w);
        part.record(lhs == rhs, {"alternating", key_string(x), key_string(y)}, lhs.to_string(), rhs.to_string());
      }
      LVec b = d.L.bracket(x, y);
      AVec gxy = d.g(x, y);
      auto lhs = d.g_vec(d.L.alpha(xv), d.L.alpha(yv));
      auto rhs = d.h_pair(d.L.alpha(b), d.f_pair(b, gxy));
      part.record(lhs == rhs, {"alpha-compatibility", key_string(x), key_string(y)}, lhs.to_string(), rhs.to_string());
      for (const auto& z : d.L_window) {
        auto r = data_cocycle_residual(d, x, y, z);
        if (r) {
          part.record(r->is_zero(), {"cocycle", key_string(x), key_string(y), key_string(z)}, r->to_string(), "0");
        }
      }
    }
  });
}

/// A central extension 0 -> a -> E -> L -> 0 with a chosen section, given by maps on basis keys.
template <Field K, class LK, class AK, class EK>
struct ExtensionPresentation
{
  QhlAlgebra<K, EK> E;
  QhlAlgebra<K, LK> L;
  QhlAlgebra<K, AK> a;
  std::function<FreeVec<K, EK>(const LK&)> section;
  std::function<FreeVec<K, EK>(const AK&)> inject;
  std::function<FreeVec<K, LK>(const EK&)> project;
  std::vector<LK> L_window;
  std::vector<AK> a_window;
  std::vector<EK> E_window;

  FreeVec<K, EK> s(const FreeVec<K, LK>& x) const { return apply_linear<K, LK, EK>(x, section); }
  FreeVec<K, EK> iota(const FreeVec<K, AK>& c) const { return apply_linear<K, AK, EK>(c, inject); }
  FreeVec<K, LK> pr(const FreeVec<K, EK>& e) const { return apply_linear<K, EK, LK>(e, project); }

  /// The same extension seen through another section.
  ExtensionPresentation with_section(std::function<FreeVec<K, EK>(const LK&)> s2) const
  {
    ExtensionPresentation p = *this;
    p.section = std::move(s2);
    return p;
  }
};

/// E = L + a from data A, B, C, with canonical section, injection and projection.
template <Field K, class LK, class AK>
using BuiltExtension = ExtensionPresentation<K, LK, AK, ExtKey<LK, AK>>;

template <Field K, class LK, class AK>
BuiltExtension<K, LK, AK> build_extension(const ExtensionData<K, LK, AK>& d, bool verify = true)
{
  using EKey = ExtKey<LK, AK>;
  using EVec = FreeVec<K, EKey>;
  if (verify) {
    auto rep = check_data_abc(d);
    if (!rep.passed()) {
      const auto& f = rep.failures.front();
      throw ExtensionError("extension data fails " + f.indices.dump() + ": " + f.lhs + " != " + f.rhs, rep);
    }
  }
  auto lift = [](const FreeVec<K, LK>& x) {
    EVec r;
    for (const auto& [k, c] : x.terms()) {
      r.add_term(EKey::lift(k), c);
    }
    return r;
  };
  auto inj = [](const FreeVec<K, AK>& x) {
    EVec r;
    for (const auto& [k, c] : x.terms()) {
      r.add_term(EKey::inject(k), c);
    }
    return r;
  };
  auto data = std::make_shared<const ExtensionData<K, LK, AK>>(d);

  BuiltExtension<K, LK, AK> P;
  P.L = d.L;
  P.a = d.a;
  P.L_window = d.L_window;
  P.a_window = d.a_window;
  P.section = [](const LK& x) { return EVec::basis(EKey::lift(x)); };
  P.inject = [](const AK& c) { return EVec::basis(EKey::inject(c)); };
  P.project = [](const EKey& e) { return e.central ? FreeVec<K, LK>{} : FreeVec<K, LK>::basis(e.l); };
  for (const auto& x : d.L_window) {
    P.E_window.push_back(EKey::lift(x));
  }
  for (const auto& c : d.a_window) {
    P.E_window.push_back(EKey::inject(c));
  }

  auto& E = P.E;
  E.name = "E = " + d.L.name + " + " + d.a.name;
  E.basis = P.E_window;
  E.bracket_on_basis = [data, lift, inj](const EKey& p, const EKey& q) {
    if (p.central || q.central) {
      return EVec{};
    }
    return lift(data->L.bracket(p.l, q.l)) + inj(data->g(p.l, q.l));
  };
  E.alpha_on_basis = [data, lift, inj](const EKey& p) {
    return (p.central ? EVec{} : lift(data->L.alpha(p.l))) + inj(data->f(p));
  };
  E.beta_on_basis = [data, lift, inj](const EKey& p) {
    return (p.central ? EVec{} : lift(data->L.beta(p.l))) + inj(data->h(p));
  };
  E.omega = [data](const EKey& p, const EKey& q) -> std::optional<K> {
    if (p.central != q.central) {
      return std::nullopt;
    }
    return p.central ? data->a.omega(p.a, q.a) : data->L.omega(p.l, q.l);
  };
  E.params = {{"L", d.L.name}, {"a", d.a.name}};
  return P;
}

namespace detail {

/// Coordinates in the span of finitely many vectors, by incremental Gaussian elimination.
template <Field K, class Key, class Label>
class SpanSolver
{
public:
  void add(const FreeVec<K, Key>& v, const Label& label)
  {
    FreeVec<K, Key> r = v;
    FreeVec<K, Label> combo = FreeVec<K, Label>::basis(label);
    reduce(r, combo);
    if (r.is_zero()) {
      throw std::invalid_argument("vectors are linearly dependent at " + key_string(label));
    }
    auto [pivot, c] = *r.terms().begin();
    K inv = K(1) / c;
    m_rows.push_back({pivot, r.scaled(inv), combo.scaled(inv)});
  }

  std::optional<FreeVec<K, Label>> solve(const FreeVec<K, Key>& target) const
  {
    FreeVec<K, Key> r = target;
    FreeVec<K, Label> combo;
    reduce(r, combo);
    if (!r.is_zero()) {
      return std::nullopt;
    }
    return -combo;
  }

  std::size_t rank() const { return m_rows.size(); }

private:
  struct Row
  {
    Key pivot;
    FreeVec<K, Key> vec;
    FreeVec<K, Label> combo;
  };

  void reduce(FreeVec<K, Key>& r, FreeVec<K, Label>& combo) const
  {
    for (const auto& row : m_rows) {
      K c = r.coeff(row.pivot);
      if (!c.is_zero()) {
        r -= row.vec.scaled(c);
        combo -= row.combo.scaled(c);
      }
    }
  }

  std::vector<Row> m_rows;
};

} // namespace detail

/// f, h, g recovered from a presentation through E = s(L) + i(a).
template <Field K, class LK, class AK, class EK>
struct ExtractedData
{
  std::function<FreeVec<K, AK>(const LK&, const LK&)> g;
  std::function<FreeVec<K, AK>(const FreeVec<K, EK>&)> f;
  std::function<FreeVec<K, AK>(const FreeVec<K, EK>&)> h;
};

template <Field K, class LK, class AK, class EK>
ExtractedData<K, LK, AK, EK> extract_data(const ExtensionPresentation<K, LK, AK, EK>& P)
{
  using EVec = FreeVec<K, EK>;
  auto solver = std::make_shared<detail::SpanSolver<K, EK, AK>>();
  for (const auto& c : P.a_window) {
    solver->add(P.inject(c), c);
  }
  auto pres = std::make_shared<const ExtensionPresentation<K, LK, AK, EK>>(P);
  auto in_a = [solver](const EVec& v, const std::string& what) {
    auto r = solver->solve(v);
    if (!r) {
      throw std::invalid_argument(what + " is not in i(a): " + v.to_string());
    }
    return *r;
  };
  ExtractedData<K, LK, AK, EK> X;
  X.g = [pres, in_a](const LK& x, const LK& y) {
    EVec e = pres->E.bracket(pres->section(x), pres->section(y)) - pres->s(pres->L.bracket(x, y));
    return in_a(e, "<s(" + key_string(x) + "),s(" + key_string(y) + ")> - s<x,y>");
  };
  X.f = [pres, in_a](const EVec& e) {
    return in_a(pres->E.alpha(e) - pres->s(pres->L.alpha(pres->pr(e))), "alpha_E - s alpha_L pr");
  };
  X.h = [pres, in_a](const EVec& e) {
    return in_a(pres->E.beta(e) - pres->s(pres->L.beta(pres->pr(e))), "beta_E - s beta_L pr");
  };
  return X;
}

/// omega_E on (s(x), s(y)) acting on the section block: the common value over support
/// keys of s(x), s(y) that project nontrivially to L.
template <Field K, class LK, class AK, class EK>
std::optional<K> section_omega(const ExtensionPresentation<K, LK, AK, EK>& P, const LK& x, const LK& y)
{
  std::optional<K> value;
  auto sx = P.section(x);
  auto sy = P.section(y);
  for (const auto& [p, cp] : sx.terms()) {
    if (P.project(p).is_zero()) {
      continue;
    }
    for (const auto& [r, cr] : sy.terms()) {
      if (P.project(r).is_zero()) {
        continue;
      }
      auto w = P.E.omega(p, r);
      if (!w || (value && *value != *w)) {
        return std::nullopt;
      }
      value = w;
    }
  }
  return value;
}

/// Cyclic condition of the necessary-conditions theorem, from extracted (g, h) and the section.
template <Field K, class LK, class AK, class EK>
std::optional<FreeVec<K, AK>> extracted_cocycle_residual(const ExtensionPresentation<K, LK, AK, EK>& P,
                                                         const ExtractedData<K, LK, AK, EK>& X, const LK& x, const LK& y,
                                                         const LK& z)
{
  using LVec = FreeVec<K, LK>;
  return detail::cyclic_sum<FreeVec<K, AK>>(
    x, y, z, [&](const LK& p, const LK& q) { return section_omega(P, p, q); },
    [&](const LK& p, const LK& q, const LK& r) {
      LVec yz = P.L.bracket(q, r);
      LVec xp = LVec::basis(p);
      auto gxyz = apply_bilinear<K, LK, AK>(xp, yz, X.g);
      return apply_bilinear<K, LK, AK>(P.L.alpha(xp), yz, X.g) + X.h(P.s(P.L.bracket(xp, yz)) + P.iota(gxyz));
    });
}

/// Structural facts of a central extension: pr s = id, pr i = 0, i(a) central,
/// pr and i algebra maps, and the alpha/beta squares commute.
template <Field K, class LK, class AK, class EK>
Report check_extension_structure(const ExtensionPresentation<K, LK, AK, EK>& P)
{
  using EVec = FreeVec<K, EK>;
  Report rep;
  ReportTimer timer(rep);
  rep.suite = "extension-structure";
  rep.params = {{"E", P.E.name}};
  rep.window = detail::keys_json(P.E_window);
  for (const auto& x : P.L_window) {
    auto v = P.pr(P.section(x));
    rep.record(v == FreeVec<K, LK>::basis(x), {"pr.s", key_string(x)}, v.to_string(), key_string(x));
  }
  for (const auto& c : P.a_window) {
    auto ic = P.inject(c);
    auto v = P.pr(ic);
    rep.record(v.is_zero(), {"pr.i", key_string(c)}, v.to_string(), "0");
    for (const auto& e : P.E_window) {
      auto l = P.E.bracket(ic, EVec::basis(e));
      auto r = P.E.bracket(EVec::basis(e), ic);
      rep.record(l.is_zero() && r.is_zero(), {"central", key_string(c), key_string(e)}, l.to_string() + " ; " + r.to_string(), "0 ; 0");
    }
    for (const auto& d : P.a_window) {
      auto l = P.E.bracket(ic, P.inject(d));
      auto r = P.iota(P.a.bracket(c, d));
      rep.record(l == r, {"i-homomorphism", key_string(c), key_string(d)}, l.to_string(), r.to_string());
    }
    auto la = P.E.alpha(ic);
    auto ra = P.iota(P.a.alpha(c));
    rep.record(la == ra, {"alpha.i", key_string(c)}, la.to_string(), ra.to_string());
    auto lb = P.E.beta(ic);
    auto rb = P.iota(P.a.beta(c));
    rep.record(lb == rb, {"beta.i", key_string(c)}, lb.to_string(), rb.to_string());
  }
  for (const auto& e : P.E_window) {
    auto ev = EVec::basis(e);
    auto la = P.pr(P.E.alpha(ev));
    auto ra = P.L.alpha(P.project(e));
    rep.record(la == ra, {"pr.alpha", key_string(e)}, la.to_string(), ra.to_string());
    auto lb = P.pr(P.E.beta(ev));
    auto rb = P.L.beta(P.project(e));
    rep.record(lb == rb, {"pr.beta", key_string(e)}, lb.to_string(), rb.to_string());
    for (const auto& e2 : P.E_window) {
      auto l = P.pr(P.E.bracket(e, e2));
      auto r = P.L.bracket(P.project(e), P.project(e2));
      rep.record(l == r, {"pr-homomorphism", key_string(e), key_string(e2)}, l.to_string(), r.to_string());
    }
  }
  return rep;
}

/// Recovers f, h, g through the section and checks f i = alpha_a, h i = beta_a,
/// omega-alternation of g, the alpha-compatibility and the cyclic condition.
/// Throws std::invalid_argument when pr s != id on the window.
template <Field K, class LK, class AK, class EK>
Report check_necessary_conditions(const ExtensionPresentation<K, LK, AK, EK>& P)
{
  using LVec = FreeVec<K, LK>;
  using AVec = FreeVec<K, AK>;
  for (const auto& x : P.L_window) {
    if (P.pr(P.section(x)) != LVec::basis(x)) {
      throw std::invalid_argument("section does not split: pr(s(" + key_string(x) + ")) = " + P.pr(P.section(x)).to_string());
    }
  }
  auto X = extract_data(P);
  Report rep;
  ReportTimer timer(rep);
  rep.suite = "necessary-conditions";
  rep.params = {{"E", P.E.name}};
  rep.window = detail::ext_window_json(P.L_window, P.a_window);
  for (const auto& c : P.a_window) {
    auto f = X.f(P.inject(c));
    auto fa = P.a.alpha(c);
    rep.record(f == fa, {"f.i", key_string(c)}, f.to_string(), fa.to_string());
    auto h = X.h(P.inject(c));
    auto hb = P.a.beta(c);
    rep.record(h == hb, {"h.i", key_string(c)}, h.to_string(), hb.to_string());
  }
  return detail::over_first_key(std::move(rep), P.L_window, [&](const LK& x, Report& part) {
    LVec xv = LVec::basis(x);
    for (const auto& y : P.L_window) {
      LVec yv = LVec::basis(y);
      auto wl = P.L.omega(x, y);
      auto we = section_omega(P, x, y);
      if (wl) {
        part.record(we && *we == *wl, {"section-intertwining", key_string(x), key_string(y)}, we ? we->to_string() : "undefined",
                    wl->to_string());
      }
      if (we) {
        auto lhs = X.g(x, y);
        auto rhs = X.g(y, x).scaled(*we);
        part.record(lhs == rhs, {"alternating", key_string(x), key_string(y)}, lhs.to_string(), rhs.to_string());
      }
      auto lhs = apply_bilinear<K, LK, AK>(P.L.alpha(xv), P.L.alpha(yv), X.g);
      auto rhs = X.h(P.s(P.L.alpha(P.L.bracket(x, y))) + P.iota(X.f(P.E.bracket(P.section(x), P.section(y)))));
      part.record(lhs == rhs, {"alpha-compatibility", key_string(x), key_string(y)}, lhs.to_string(), rhs.to_string());
      for (const auto& z : P.L_window) {
        if (auto r = extracted_cocycle_residual(P, X, x, y, z)) {
          part.record(r->is_zero(), {"cocycle", key_string(x), key_string(y), key_string(z)}, r->to_string(), "0");
        }
      }
    }
  });
}

/// g'(x, y) = g(x, y) - xi(<x, y>).
template <Field K, class LK, class AK>
std::function<FreeVec<K, AK>(const LK&, const LK&)> transform_cocycle(const QhlAlgebra<K, LK>& L,
                                                                       std::function<FreeVec<K, AK>(const LK&, const LK&)> g,
                                                                       std::function<FreeVec<K, AK>(const LK&)> xi)
{
  auto bracket = L.bracket_on_basis;
  return [bracket, g = std::move(g), xi = std::move(xi)](const LK& x, const LK& y) {
    return g(x, y) - apply_linear<K, LK, AK>(bracket(x, y), xi);
  };
}

enum class EquivalenceMode { weak, strong };

/// phi(s(l) + i(a)) = s'(l) + i'(a - xi(l)) between two presentations of extensions of
/// the same L by the same a. Weak mode: phi bijective on the window, the diagram commutes
/// and phi preserves brackets. Strong mode adds alpha_a xi = xi alpha_L, f s = f' s',
/// the beta analogues, and phi alpha_E = alpha_E' phi, phi beta_E = beta_E' phi.
template <Field K, class LK, class AK, class EK, class EK2>
Report check_equivalence(const ExtensionPresentation<K, LK, AK, EK>& P, const ExtensionPresentation<K, LK, AK, EK2>& Q,
                         const std::function<FreeVec<K, AK>(const LK&)>& xi, EquivalenceMode mode)
{
  using LVec = FreeVec<K, LK>;
  using AVec = FreeVec<K, AK>;
  using EVec = FreeVec<K, EK>;
  if (P.L_window != Q.L_window || P.a_window != Q.a_window) {
    throw std::invalid_argument("extensions are not over the same L and a windows");
  }
  detail::SpanSolver<K, EK, AK> in_a;
  for (const auto& c : P.a_window) {
    in_a.add(P.inject(c), c);
  }
  auto phi = [&](const EVec& e) {
    LVec l = P.pr(e);
    auto a = in_a.solve(e - P.s(l));
    if (!a) {
      throw std::invalid_argument("element not in s(L) + i(a): " + e.to_string());
    }
    return Q.s(l) + Q.iota(*a - apply_linear<K, LK, AK>(l, xi));
  };
  auto XP = extract_data(P);
  auto XQ = extract_data(Q);

  Report rep;
  ReportTimer timer(rep);
  rep.suite = mode == EquivalenceMode::strong ? "strong-equivalence" : "weak-equivalence";
  rep.params = {{"E", P.E.name}, {"E'", Q.E.name}};
  rep.window = detail::keys_json(P.E_window);

  detail::SpanSolver<K, EK2, std::string> image;
  bool injective = true;
  for (const auto& e : P.E_window) {
    try {
      image.add(phi(EVec::basis(e)), key_string(e));
    } catch (const std::invalid_argument&) {
      injective = false;
    }
  }
  rep.record(injective && image.rank() == Q.E_window.size(), {"bijective"}, std::to_string(image.rank()),
             std::to_string(Q.E_window.size()));
  for (const auto& c : P.a_window) {
    auto l = phi(P.inject(c));
    auto r = Q.inject(c);
    rep.record(l == r, {"phi.i", key_string(c)}, l.to_string(), r.to_string());
  }
  for (const auto& e : P.E_window) {
    auto ev = EVec::basis(e);
    auto l = Q.pr(phi(ev));
    auto r = P.project(e);
    rep.record(l == r, {"pr'.phi", key_string(e)}, l.to_string(), r.to_string());
    for (const auto& e2 : P.E_window) {
      auto e2v = EVec::basis(e2);
      auto lhs = Q.E.bracket(phi(ev), phi(e2v));
      auto rhs = phi(P.E.bracket(ev, e2v));
      rep.record(lhs == rhs, {"bracket", key_string(e), key_string(e2)}, lhs.to_string(), rhs.to_string());
    }
    if (mode == EquivalenceMode::strong) {
      auto la = phi(P.E.alpha(ev));
      auto ra = Q.E.alpha(phi(ev));
      rep.record(la == ra, {"M2a", key_string(e)}, la.to_string(), ra.to_string());
      auto lb = phi(P.E.beta(ev));
      auto rb = Q.E.beta(phi(ev));
      rep.record(lb == rb, {"M3a", key_string(e)}, lb.to_string(), rb.to_string());
    }
  }
  if (mode == EquivalenceMode::strong) {
    for (const auto& x : P.L_window) {
      LVec xv = LVec::basis(x);
      AVec s1a = P.a.alpha(xi(x));
      AVec s1a_r = apply_linear<K, LK, AK>(P.L.alpha(xv), xi);
      rep.record(s1a == s1a_r, {"S1alpha", key_string(x)}, s1a.to_string(), s1a_r.to_string());
      AVec s2a = XP.f(P.section(x));
      AVec s2a_r = XQ.f(Q.section(x));
      rep.record(s2a == s2a_r, {"S2alpha", key_string(x)}, s2a.to_string(), s2a_r.to_string());
      AVec s1b = P.a.beta(xi(x));
      AVec s1b_r = apply_linear<K, LK, AK>(P.L.beta(xv), xi);
      rep.record(s1b == s1b_r, {"S1beta", key_string(x)}, s1b.to_string(), s1b_r.to_string());
      AVec s2b = XP.h(P.section(x));
      AVec s2b_r = XQ.h(Q.section(x));
      rep.record(s2b == s2b_r, {"S2beta", key_string(x)}, s2b.to_string(), s2b_r.to_string());
    }
  }
  return rep;
}

/// The Heisenberg data: L = span{x, y} abelian, a = span{c}, g(x,y) = c = -g(y,x),
/// f and h the projections onto alpha_a = beta_a = id.
template <Field K>
ExtensionData<K, std::string, std::string> heisenberg_data()
{
  using V = FreeVec<K, std::string>;
  ExtensionData<K, std::string, std::string> d;
  d.L = abelian_algebra<K, std::string>("abelian(x,y)", {"x", "y"});
  d.a = abelian_algebra<K, std::string>("k", {"c"});
  d.g = [](const std::string& p, const std::string& q) {
    if (p == "x" && q == "y") {
      return V::basis("c");
    }
    if (p == "y" && q == "x") {
      return V::basis("c", K(-1));
    }
    return V{};
  };
  d.f = projection_onto<K, std::string, std::string>(d.a.alpha_on_basis);
  d.h = projection_onto<K, std::string, std::string>(d.a.beta_on_basis);
  d.L_window = d.L.basis;
  d.a_window = d.a.basis;
  return d;
}

} // namespace qhl
