#pragma once

#include "qhl/field.hpp"
#include "qhl/poly.hpp"
#include "qhl/ratfunc.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qhl {

using ExpVec = std::vector<std::int64_t>;

namespace detail {

inline std::int64_t exp_add(std::int64_t a, std::int64_t b) { return a + b; }

inline ExpVec exp_add(const ExpVec& a, const ExpVec& b)
{
  if (a.size() != b.size()) {
    throw std::invalid_argument("exponent vectors of different arity");
  }
  ExpVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    r[i] = a[i] + b[i];
  }
  return r;
}

inline std::string monomial_string(std::int64_t e, std::string_view var)
{
  if (e == 0) {
    return "";
  }
  std::string s(var);
  if (e != 1) {
    s += "^" + std::to_string(e);
  }
  return s;
}

inline std::string monomial_string(const ExpVec& e, std::string_view var)
{
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    auto part = monomial_string(e[i], std::string(var) + std::to_string(i + 1));
    if (part.empty()) {
      continue;
    }
    if (!s.empty()) {
      s += "*";
    }
    s += part;
  }
  return s;
}

} // namespace detail

/// Finitely supported exponent -> coefficient map: Laurent polynomials in one
/// variable (Exp = int64) or several (Exp = ExpVec). Zero coefficients are never stored.
template <Field K, class Exp>
class Laurent
{
public:
  using coefficient_type = K;
  using exponent_type = Exp;
  using term_map = std::map<Exp, K>;

  Laurent() = default;
  Laurent(const K& c)
    requires std::same_as<Exp, std::int64_t>
  {
    if (!c.is_zero()) {
      m_terms.emplace(0, c);
    }
  }

  static Laurent monomial(const K& c, Exp e)
  {
    Laurent p;
    if (!c.is_zero()) {
      p.m_terms.emplace(std::move(e), c);
    }
    return p;
  }

  static Laurent from_terms(const term_map& terms)
  {
    Laurent p;
    for (const auto& [e, c] : terms) {
      p.add_term(e, c);
    }
    return p;
  }

  const term_map& terms() const { return m_terms; }
  bool is_zero() const { return m_terms.empty(); }
  std::size_t size() const { return m_terms.size(); }

  K coeff(const Exp& e) const
  {
    auto it = m_terms.find(e);
    return it == m_terms.end() ? K(0) : it->second;
  }

  void add_term(const Exp& e, const K& c)
  {
    if (c.is_zero()) {
      return;
    }
    auto [it, inserted] = m_terms.try_emplace(e, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero()) {
        m_terms.erase(it);
      }
    }
  }

  Laurent operator-() const
  {
    Laurent r = *this;
    for (auto& [e, c] : r.m_terms) {
      c = -c;
    }
    return r;
  }

  Laurent& operator+=(const Laurent& o)
  {
    for (const auto& [e, c] : o.m_terms) {
      add_term(e, c);
    }
    return *this;
  }

  Laurent& operator-=(const Laurent& o)
  {
    for (const auto& [e, c] : o.m_terms) {
      add_term(e, -c);
    }
    return *this;
  }

  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }

  /// Exponent-wise convolution.
  friend Laurent operator*(const Laurent& a, const Laurent& b)
  {
    Laurent r;
    for (const auto& [ea, ca] : a.m_terms) {
      for (const auto& [eb, cb] : b.m_terms) {
        r.add_term(detail::exp_add(ea, eb), ca * cb);
      }
    }
    return r;
  }

  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

  Laurent scaled(const K& s) const
  {
    if (s.is_zero()) {
      return {};
    }
    Laurent r = *this;
    for (auto& [e, c] : r.m_terms) {
      c = c * s;
    }
    return r;
  }

  /// Multiplication by the monomial x^e.
  Laurent shifted(const Exp& e) const
  {
    Laurent r;
    for (const auto& [ex, c] : m_terms) {
      r.m_terms.emplace_hint(r.m_terms.end(), detail::exp_add(ex, e), c);
    }
    return r;
  }

  friend bool operator==(const Laurent&, const Laurent&) = default;

  std::string to_string(std::string_view var = default_var()) const
  {
    if (is_zero()) {
      return "0";
    }
    std::string out;
    bool first = true;
    for (const auto& [e, c] : m_terms) {
      std::string cs = c.to_string();
      bool negative = false;
      if (!needs_parens(cs) && cs.front() == '-') {
        negative = true;
        cs.erase(0, 1);
      }
      std::string mono = detail::monomial_string(e, var);
      std::string term;
      if (mono.empty()) {
        term = needs_parens(cs) ? "(" + cs + ")" : cs;
      } else if (cs == "1") {
        term = mono;
      } else {
        term = (needs_parens(cs) ? "(" + cs + ")" : cs) + "*" + mono;
      }
      if (first) {
        out = negative ? "-" + term : term;
        first = false;
      } else {
        out += negative ? " - " : " + ";
        out += term;
      }
    }
    return out;
  }

  static constexpr std::string_view default_var()
  {
    if constexpr (std::same_as<Exp, std::int64_t>) {
      return "t";
    } else {
      return "z";
    }
  }

private:
  term_map m_terms;
};

/// A = K[t, 1/t]
template <Field K>
using LaurentPoly = Laurent<K, std::int64_t>;

/// A = K[z1^{±1}, ..., zn^{±1}]
template <Field K>
using MultiLaurentPoly = Laurent<K, ExpVec>;

template <Field K>
LaurentPoly<K> t_power(std::int64_t n, const K& c = K(1))
{
  return LaurentPoly<K>::monomial(c, n);
}

template <Field K>
std::int64_t min_exponent(const LaurentPoly<K>& a)
{
  if (a.is_zero()) {
    throw std::domain_error("zero Laurent polynomial has no lowest exponent");
  }
  return a.terms().begin()->first;
}

template <Field K>
std::int64_t max_exponent(const LaurentPoly<K>& a)
{
  if (a.is_zero()) {
    throw std::domain_error("zero Laurent polynomial has no highest exponent");
  }
  return a.terms().rbegin()->first;
}

/// Raised by laurent_divexact when the divisor does not divide the dividend.
template <Field K>
class InexactDivision : public std::domain_error
{
public:
  InexactDivision(const LaurentPoly<K>& remainder)
    : std::domain_error("inexact Laurent division, remainder " + remainder.to_string()), m_remainder(remainder)
  {}
  const LaurentPoly<K>& remainder() const { return m_remainder; }

private:
  LaurentPoly<K> m_remainder;
};

namespace detail {

template <Field K>
Poly<K> to_poly_shifted(const LaurentPoly<K>& a, std::int64_t low)
{
  std::vector<K> c(static_cast<std::size_t>(max_exponent(a) - low + 1), K(0));
  for (const auto& [e, v] : a.terms()) {
    c[static_cast<std::size_t>(e - low)] = v;
  }
  return Poly<K>(std::move(c));
}

template <Field K>
LaurentPoly<K> from_poly_shifted(const Poly<K>& p, std::int64_t low)
{
  LaurentPoly<K> r;
  const auto& c = p.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    r.add_term(low + static_cast<std::int64_t>(i), c[i]);
  }
  return r;
}

} // namespace detail

/// Exact quotient c with b*c = a in K[t, 1/t].
///
/// Monomials are units, so b is first stripped to b0 with b0(0) != 0 and the
/// division is carried out in K[t]. Throws InexactDivision carrying the remainder.
template <Field K>
LaurentPoly<K> laurent_divexact(const LaurentPoly<K>& a, const LaurentPoly<K>& b)
{
  if (b.is_zero()) {
    throw std::domain_error("Laurent division by zero");
  }
  if (a.is_zero()) {
    return {};
  }
  const std::int64_t b_low = min_exponent(b);
  const std::int64_t a_low = min_exponent(a);
  Poly<K> b0 = detail::to_poly_shifted(b, b_low);
  Poly<K> a0 = detail::to_poly_shifted(a, a_low);
  auto [quot, rem] = Poly<K>::divmod(a0, b0);
  if (!rem.is_zero()) {
    throw InexactDivision<K>(detail::from_poly_shifted(rem, a_low));
  }
  return detail::from_poly_shifted(quot, a_low - b_low);
}

/// Coefficient-wise image under a map of coefficient fields.
template <class Fn, Field K, class Exp>
auto map_coefficients(const Laurent<K, Exp>& a, Fn&& fn)
{
  using K2 = std::remove_cvref_t<decltype(fn(std::declval<const K&>()))>;
  Laurent<K2, Exp> r;
  for (const auto& [e, c] : a.terms()) {
    r.add_term(e, fn(c));
  }
  return r;
}

/// Evaluates the outermost indeterminate of every coefficient at value.
/// Throws std::domain_error when a reduced denominator vanishes there.
template <Field K, Indeterminate V, class Exp>
Laurent<K, Exp> specialize(const Laurent<RatFunc<K, V>, Exp>& a, const K& value)
{
  return map_coefficients(a, [&](const RatFunc<K, V>& c) { return c.evaluate(value); });
}

/// Classical limit of a Q(q)-coefficient Laurent polynomial at a rational q.
template <class Exp>
Laurent<Rational, Exp> specialize_q(const Laurent<Fq, Exp>& a, const Rational& value)
{
  return specialize(a, value);
}

} // namespace qhl
