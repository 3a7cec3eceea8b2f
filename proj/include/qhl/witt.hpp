#pragma once

#include "qhl/laurent.hpp"
#include "qhl/parallel.hpp"
#include "qhl/qhl.hpp"
#include "qhl/report.hpp"
#include "qhl/sigma.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace qhl {

namespace detail {

inline std::string index_string(std::int64_t n) { return std::to_string(n); }

inline std::string index_string(const ExpVec& n)
{
  std::string s = "(";
  for (std::size_t i = 0; i < n.size(); ++i) {
    s += (i ? "," : "") + std::to_string(n[i]);
  }
  return s + ")";
}

inline std::vector<std::int64_t> window_indices(std::int64_t lo, std::int64_t hi, std::int64_t)
{
  std::vector<std::int64_t> out;
  for (std::int64_t n = lo; n <= hi; ++n) {
    out.push_back(n);
  }
  return out;
}

inline std::vector<ExpVec> window_indices(std::int64_t lo, std::int64_t hi, const ExpVec& shape)
{
  return box(shape.size(), lo, hi);
}

} // namespace detail

/// sum_n c_n d_n with d_n = -t^n D. Stored as the finitely supported map n -> c_n.
template <Field K, class Exp>
struct WittElement
{
  Laurent<K, Exp> coeffs;

  static WittElement generator(const Exp& n, const K& c = K(1)) { return {Laurent<K, Exp>::monomial(c, n)}; }

  bool is_zero() const { return coeffs.is_zero(); }
  K coeff(const Exp& n) const { return coeffs.coeff(n); }

  WittElement scaled(const K& c) const { return {coeffs.scaled(c)}; }
  WittElement operator-() const { return {-coeffs}; }
  friend WittElement operator+(const WittElement& a, const WittElement& b) { return {a.coeffs + b.coeffs}; }
  friend WittElement operator-(const WittElement& a, const WittElement& b) { return {a.coeffs - b.coeffs}; }
  friend bool operator==(const WittElement&, const WittElement&) = default;

  std::string to_string() const
  {
    if (is_zero()) {
      return "0";
    }
    std::string out;
    for (const auto& [n, c] : coeffs.terms()) {
      std::string cs = c.to_string();
      bool negative = !needs_parens(cs) && cs.front() == '-';
      if (negative) {
        cs.erase(0, 1);
      }
      std::string term = "d_" + detail::index_string(n);
      if (cs != "1") {
        term = (needs_parens(cs) ? "(" + cs + ")" : cs) + "*" + term;
      }
      if (out.empty()) {
        out = negative ? "-" + term : term;
      } else {
        out += (negative ? " - " : " + ") + term;
      }
    }
    return out;
  }
};

/// Adds `amount` to the d_target coefficient of <d_n, d_m> only.
template <Field K, class Exp>
struct Mutation
{
  Exp n;
  Exp m;
  Exp target;
  K amount;
};

/// The bracket algebra on A.D: <aD, bD> = (sigma(a)D(b) - sigma(b)D(a)) D,
/// with alpha(aD) = sigma(a)D, beta(aD) = (delta a)D and omega = -1.
template <SigmaDerivationLike Deriv>
class WittAlgebra
{
public:
  using derivation_type = Deriv;
  using K = typename Deriv::coefficient_type;
  using Exp = typename Deriv::exponent_type;
  using Poly = typename Deriv::poly_type;
  using Element = WittElement<K, Exp>;

  explicit WittAlgebra(Deriv d) : m_d(std::move(d))
  {
    try {
      m_delta = m_d.delta();
    } catch (const UnsupportedParameter&) {
      m_delta.reset();
    }
  }

  const Deriv& derivation() const { return m_d; }
  bool has_delta() const { return m_delta.has_value(); }

  const Poly& delta() const
  {
    if (!m_delta) {
      (void)m_d.delta();
    }
    return *m_delta;
  }

  void add_mutation(Mutation<K, Exp> mu) { m_mutations.push_back(std::move(mu)); }
  const std::vector<Mutation<K, Exp>>& mutations() const { return m_mutations; }

  static Element generator(const Exp& n) { return Element::generator(n); }

  /// a with x = aD, i.e. a = -sum c_n t^n.
  static Poly to_module(const Element& x) { return -x.coeffs; }
  static Element from_module(const Poly& a) { return {-a}; }

  Element bracket(const Element& x, const Element& y) const
  {
    Poly a = to_module(x);
    Poly b = to_module(y);
    Poly c = m_d.apply_sigma(a) * m_d.apply_D(b) - m_d.apply_sigma(b) * m_d.apply_D(a);
    Element r = from_module(c);
    for (const auto& mu : m_mutations) {
      K w = x.coeff(mu.n) * y.coeff(mu.m);
      if (!w.is_zero()) {
        r = r + Element::generator(mu.target, w * mu.amount);
      }
    }
    return r;
  }

  Element bracket(const Exp& n, const Exp& m) const { return bracket(generator(n), generator(m)); }

  Element alpha(const Element& x) const { return from_module(m_d.apply_sigma(to_module(x))); }

  /// Module scaling by delta.
  Element beta(const Element& x) const { return from_module(delta() * to_module(x)); }

  nlohmann::json params() const { return m_d.params(); }

private:
  Deriv m_d;
  std::optional<Poly> m_delta;
  std::vector<Mutation<K, Exp>> m_mutations;
};

template <Field K>
using Witt = WittAlgebra<SigmaDerivation<K>>;
template <Field K>
using MultiWitt = WittAlgebra<MultiSigmaDerivation<K>>;

/// {n}_q = (1 - q^n)/(1 - q) as the finite sum it reduces to; equals n at q = 1.
template <Field K>
K q_integer(std::int64_t n, const K& q)
{
  K r(0);
  if (n >= 0) {
    K qr(1);
    for (std::int64_t i = 0; i < n; ++i) {
      r = r + qr;
      qr = qr * q;
    }
  } else {
    for (std::int64_t i = n; i < 0; ++i) {
      r = r - power(q, i);
    }
  }
  return r;
}

/// Cyclic sum of <sigma(a)D, <bD, cD>> + delta.<aD, <bD, cD>> over (x, y, z).
template <SigmaDerivationLike Deriv>
typename WittAlgebra<Deriv>::Element six_term_jacobi(const WittAlgebra<Deriv>& W, const typename WittAlgebra<Deriv>::Element& x,
                                                     const typename WittAlgebra<Deriv>::Element& y,
                                                     const typename WittAlgebra<Deriv>::Element& z)
{
  auto term = [&](const auto& a, const auto& b, const auto& c) {
    auto inner = W.bracket(b, c);
    return W.bracket(W.alpha(a), inner) + W.beta(W.bracket(a, inner));
  };
  return term(x, y, z) + term(y, z, x) + term(z, x, y);
}

/// Table of <d_n, d_m> for n, m in the window, in lexicographic order.
template <SigmaDerivationLike Deriv>
std::vector<std::tuple<typename Deriv::exponent_type, typename Deriv::exponent_type, typename WittAlgebra<Deriv>::Element>>
structure_constants(const WittAlgebra<Deriv>& W, std::int64_t lo, std::int64_t hi)
{
  using Exp = typename Deriv::exponent_type;
  std::vector<Exp> idx;
  if constexpr (std::same_as<Exp, std::int64_t>) {
    idx = detail::window_indices(lo, hi, Exp{});
  } else {
    idx = detail::box(W.derivation().arity(), lo, hi);
  }
  auto rows = parallel_map(idx.size(), [&](std::size_t i) {
    std::vector<std::tuple<Exp, Exp, typename WittAlgebra<Deriv>::Element>> row;
    for (const auto& m : idx) {
      row.emplace_back(idx[i], m, W.bracket(idx[i], m));
    }
    return row;
  });
  std::vector<std::tuple<Exp, Exp, typename WittAlgebra<Deriv>::Element>> out;
  for (auto& r : rows) {
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

/// Which form of the m >= 0, n < 0 case of the nonlinear relations to use.
/// As printed, that case equals <d_m, d_n>; the corrected form negates it.
enum class MixedCaseSign { corrected, as_printed };

/// The four-case closed form for <d_n, d_m> when sigma(t) = q t^s and
/// D = eta t^{-k+1}(id - sigma)/(t - q t^s).
template <Field K>
WittElement<K, std::int64_t> nonlinear_closed_form(const SigmaDerivation<K>& d, std::int64_t n, std::int64_t m,
                                                  MixedCaseSign mixed = MixedCaseSign::corrected)
{
  using E = WittElement<K, std::int64_t>;
  const K& q = d.q();
  const std::int64_t s = d.s();
  const std::int64_t k = d.k();
  E r;
  auto add = [&](const K& c, std::int64_t idx) { r = r + E::generator(idx, c); };
  auto sign = [](std::int64_t v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };
  if (n >= 0 && m >= 0) {
    for (std::int64_t l = std::min(n, m); l <= std::max(n, m) - 1; ++l) {
      add(K(sign(n - m)) * power(q, n + m - 1 - l), s * (n + m - 1) - (k - 1) - l * (s - 1));
    }
  } else if (n >= 0 && m < 0) {
    for (std::int64_t l = 0; l <= -m - 1; ++l) {
      add(power(q, n + m + l), (m + l) * (s - 1) + n * s + m - k);
    }
    for (std::int64_t l = 0; l <= n - 1; ++l) {
      add(power(q, m + l), (s - 1) * l + n + m * s - k);
    }
  } else if (m >= 0 && n < 0) {
    E part;
    for (std::int64_t l1 = 0; l1 <= m - 1; ++l1) {
      part = part + E::generator((s - 1) * l1 + m + n * s - k, power(q, n + l1));
    }
    for (std::int64_t l2 = 0; l2 <= -n - 1; ++l2) {
      part = part + E::generator((n + l2) * (s - 1) + n + m * s - k, power(q, m + n + l2));
    }
    r = mixed == MixedCaseSign::corrected ? -part : part;
  } else {
    for (std::int64_t l = std::min(-n, -m); l <= std::max(-n, -m) - 1; ++l) {
      add(K(sign(n - m)) * power(q, n + m + l), (m + n) * s + (s - 1) * l - k);
    }
  }
  return r.scaled(d.eta());
}

/// <d_k, d_l> = Q q^l d_{Sl + k - G} - Q q^k d_{Sk + l - G}.
template <Field K>
WittElement<K, ExpVec> multivariate_relation(const MultiSigmaDerivation<K>& d, const ExpVec& kk, const ExpVec& ll)
{
  using E = WittElement<K, ExpVec>;
  const auto& sig = d.sigma();
  auto shift = [&](const ExpVec& a, const ExpVec& b) {
    ExpVec r = sig.image_exponent(a);
    for (std::size_t i = 0; i < r.size(); ++i) {
      r[i] += b[i] - d.G()[i];
    }
    return r;
  };
  return E::generator(shift(ll, kk), d.Q() * sig.scale(ll)) - E::generator(shift(kk, ll), d.Q() * sig.scale(kk));
}

namespace detail {

template <class Fn>
Report merge_rows(Report rep, std::size_t rows, Fn fn)
{
  auto parts = parallel_map(rows, fn);
  for (const auto& p : parts) {
    rep.merge(p);
  }
  return rep;
}

} // namespace detail

/// Linear sigma(t) = q t: <d_n, d_m> = eta({n} - {m}) d_{n+m-k} on all pairs and
/// (q^n + q^k)<d_n, <d_l, d_m>> + cyclic = 0 on all triples; with k = 0 and eta = 1
/// these are the q-deformed Witt relations. Also checks the same Jacobi identity
/// in its general six-term form.
template <Field K>
Report verify_theorem3(const Witt<K>& W, std::int64_t lo, std::int64_t hi, std::int64_t jlo, std::int64_t jhi)
{
  const auto& d = W.derivation();
  if (d.s() != 1) {
    throw UnsupportedParameter("the linear q-deformed Witt relations need s = 1, got s = " + std::to_string(d.s()));
  }
  using E = typename Witt<K>::Element;
  Report rep;
  ReportTimer timer(rep);
  rep.suite = "thm3";
  rep.params = W.params();
  rep.window = {{"pairs", {lo, hi}}, {"triples", {jlo, jhi}}};
  const K& q = d.q();
  auto pair_rows = static_cast<std::size_t>(std::max<std::int64_t>(0, hi - lo + 1));
  rep = detail::merge_rows(std::move(rep), pair_rows, [&](std::size_t i) {
    Report part;
    std::int64_t n = lo + static_cast<std::int64_t>(i);
    for (std::int64_t m = lo; m <= hi; ++m) {
      E lhs = W.bracket(n, m);
      E rhs = E::generator(n + m - d.k(), d.eta() * (q_integer(n, q) - q_integer(m, q)));
      part.record(lhs == rhs, {"relation", n, m}, lhs.to_string(), rhs.to_string());
      E swapped = W.bracket(m, n);
      part.record(lhs == -swapped, {"skew", n, m}, lhs.to_string(), (-swapped).to_string());
    }
    return part;
  });
  auto triple_rows = static_cast<std::size_t>(std::max<std::int64_t>(0, jhi - jlo + 1));
  rep = detail::merge_rows(std::move(rep), triple_rows, [&](std::size_t i) {
    Report part;
    std::int64_t n = jlo + static_cast<std::int64_t>(i);
    for (std::int64_t l = jlo; l <= jhi; ++l) {
      for (std::int64_t m = jlo; m <= jhi; ++m) {
        auto term = [&](std::int64_t a, std::int64_t b, std::int64_t c) {
          return W.bracket(E::generator(a), W.bracket(b, c)).scaled(power(q, a) + power(q, d.k()));
        };
        E sum = term(n, l, m) + term(l, m, n) + term(m, n, l);
        part.record(sum.is_zero(), {"jacobi", n, l, m}, sum.to_string(), "0");
        E six = six_term_jacobi(W, E::generator(n), E::generator(l), E::generator(m));
        part.record(six.is_zero(), {"six-term", n, l, m}, six.to_string(), "0");
      }
    }
    return part;
  });
  return rep;
}

/// Nonlinear sigma(t) = q t^s: closed-form relations against the direct
/// bracket on all pairs, skew-symmetry, and the six-term identity with delta on all triples.
template <Field K>
Report verify_theorem4(const Witt<K>& W, std::int64_t lo, std::int64_t hi, std::int64_t jlo, std::int64_t jhi,
                       MixedCaseSign mixed = MixedCaseSign::corrected)
{
  const auto& d = W.derivation();
  if (d.s() < 1) {
    throw UnsupportedParameter("unsupported s = " + std::to_string(d.s()) + ": the nonlinear relations need s >= 1");
  }
  using E = typename Witt<K>::Element;
  Report rep;
  ReportTimer timer(rep);
  rep.suite = "thm4";
  rep.params = W.params();
  rep.params["delta"] = W.delta().to_string();
  rep.params["mixed_case"] = mixed == MixedCaseSign::corrected ? "corrected" : "as-printed";
  rep.window = {{"pairs", {lo, hi}}, {"triples", {jlo, jhi}}};
  if (mixed == MixedCaseSign::corrected) {
    rep.notes.push_back("case m >= 0, n < 0 compared with the sign-corrected closed form; as printed it equals <d_m, d_n>");
  }
  auto pair_rows = static_cast<std::size_t>(std::max<std::int64_t>(0, hi - lo + 1));
  rep = detail::merge_rows(std::move(rep), pair_rows, [&](std::size_t i) {
    Report part;
    std::int64_t n = lo + static_cast<std::int64_t>(i);
    for (std::int64_t m = lo; m <= hi; ++m) {
      E lhs = W.bracket(n, m);
      E rhs = nonlinear_closed_form(d, n, m, mixed);
      part.record(lhs == rhs, {"relation", n, m}, lhs.to_string(), rhs.to_string());
      E swapped = W.bracket(m, n);
      part.record(lhs == -swapped, {"skew", n, m}, lhs.to_string(), (-swapped).to_string());
    }
    return part;
  });
  auto triple_rows = static_cast<std::size_t>(std::max<std::int64_t>(0, jhi - jlo + 1));
  rep = detail::merge_rows(std::move(rep), triple_rows, [&](std::size_t i) {
    Report part;
    std::int64_t n = jlo + static_cast<std::int64_t>(i);
    for (std::int64_t m = jlo; m <= jhi; ++m) {
      for (std::int64_t l = jlo; l <= jhi; ++l) {
        E six = six_term_jacobi(W, E::generator(n), E::generator(m), E::generator(l));
        part.record(six.is_zero(), {"six-term", n, m, l}, six.to_string(), "0");
      }
    }
    return part;
  });
  return rep;
}

/// Several variables: skew-symmetry, the displayed relation with alpha(k) = S k,
/// and the six-term identity with delta = q^G z^{(S - I) G}, over the box [lo, hi]^n.
template <Field K>
Report verify_theorem5(const MultiWitt<K>& W, std::int64_t lo, std::int64_t hi)
{
  using E = typename MultiWitt<K>::Element;
  const auto& d = W.derivation();
  Report rep;
  ReportTimer timer(rep);
  rep.suite = "thm5";
  rep.params = W.params();
  rep.params["delta"] = W.delta().to_string();
  rep.window = {lo, hi};
  auto idx = detail::box(d.arity(), lo, hi);
  rep = detail::merge_rows(std::move(rep), idx.size(), [&](std::size_t i) {
    Report part;
    const ExpVec& a = idx[i];
    for (const auto& b : idx) {
      E lhs = W.bracket(a, b);
      E swapped = W.bracket(b, a);
      part.record(lhs == -swapped, {"skew", a, b}, lhs.to_string(), (-swapped).to_string());
      E rhs = multivariate_relation(d, a, b);
      part.record(lhs == rhs, {"relation", a, b}, lhs.to_string(), rhs.to_string());
      for (const auto& c : idx) {
        E six = six_term_jacobi(W, E::generator(a), E::generator(b), E::generator(c));
        part.record(six.is_zero(), {"six-term", a, b, c}, six.to_string(), "0");
      }
    }
    return part;
  });
  return rep;
}

template <Field K, class Exp>
FreeVec<K, Exp> to_free_vec(const WittElement<K, Exp>& x)
{
  FreeVec<K, Exp> v;
  for (const auto& [e, c] : x.coeffs.terms()) {
    v.add_term(e, c);
  }
  return v;
}

/// The deformed Witt algebra as a generic qhl-algebra on the keys d_n, with
/// the given window as its basis list and omega = -1.
template <SigmaDerivationLike Deriv>
QhlAlgebra<typename Deriv::coefficient_type, typename Deriv::exponent_type>
as_qhl(const WittAlgebra<Deriv>& W, std::vector<typename Deriv::exponent_type> window)
{
  using K = typename Deriv::coefficient_type;
  using Exp = typename Deriv::exponent_type;
  auto w = std::make_shared<const WittAlgebra<Deriv>>(W);
  QhlAlgebra<K, Exp> A;
  A.name = "deformed Witt";
  A.basis = std::move(window);
  A.bracket_on_basis = [w](const Exp& n, const Exp& m) { return to_free_vec(w->bracket(n, m)); };
  A.alpha_on_basis = [w](const Exp& n) { return to_free_vec(w->alpha(w->generator(n))); };
  A.beta_on_basis = [w](const Exp& n) { return to_free_vec(w->beta(w->generator(n))); };
  A.omega = constant_omega<K, Exp>(K(-1));
  A.params = W.params();
  return A;
}

} // namespace qhl
