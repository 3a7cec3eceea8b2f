#pragma once

#include "qhl/field.hpp"
#include "qhl/poly.hpp"
#include "qhl/rational.hpp"

#include <concepts>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace qhl {

/// Tag naming the indeterminate of a rational-function field.
template <class V>
concept Indeterminate = requires {
  { V::name } -> std::convertible_to<std::string_view>;
};

namespace var {
struct q { static constexpr std::string_view name = "q"; };
struct eta { static constexpr std::string_view name = "eta"; };
struct q1 { static constexpr std::string_view name = "q1"; };
struct q2 { static constexpr std::string_view name = "q2"; };
struct q3 { static constexpr std::string_view name = "q3"; };
} // namespace var

/// The rational-function field K(x), x named by V.
///
/// Canonical form: gcd(num, den) = 1 and den monic, so equality is structural.
/// Nesting RatFunc<RatFunc<...>> gives multi-parameter fields such as Q(q)(eta).
template <Field K, Indeterminate V>
class RatFunc
{
public:
  using coefficient_type = K;
  using poly_type = Poly<K>;

  RatFunc() : m_den(K(1)) {}
  RatFunc(const K& c) : m_num(c), m_den(K(1)) {}
  template <class T>
    requires(!std::same_as<std::remove_cvref_t<T>, K> && !std::same_as<std::remove_cvref_t<T>, RatFunc> &&
             std::constructible_from<K, const T&>)
  RatFunc(const T& c) : RatFunc(K(c))
  {}

  RatFunc(poly_type num, poly_type den) : m_num(std::move(num)), m_den(std::move(den)) { normalize(); }

  static RatFunc variable() { return RatFunc(poly_type::monomial(K(1), 1), poly_type(K(1))); }
  static constexpr std::string_view variable_name() { return V::name; }

  /// Resolves a named indeterminate of this field or of any field below it.
  static std::optional<RatFunc> symbol(std::string_view name)
  {
    if (name == V::name) {
      return variable();
    }
    if (auto inner = K::symbol(name)) {
      return RatFunc(*inner);
    }
    return std::nullopt;
  }

  const poly_type& num() const { return m_num; }
  const poly_type& den() const { return m_den; }

  bool is_zero() const { return m_num.is_zero(); }
  bool is_constant() const { return m_num.is_constant() && m_den.is_one(); }
  /// Value of a constant element in the coefficient field.
  K constant_value() const
  {
    if (!is_constant()) {
      throw std::domain_error("rational function is not constant: " + to_string());
    }
    return m_num.coeff(0);
  }

  /// Substitutes x := value; fails when the reduced denominator vanishes there.
  K evaluate(const K& value) const
  {
    K d = m_den.evaluate(value);
    if (d.is_zero()) {
      throw std::domain_error("pole of " + to_string() + " at " + std::string(V::name) + " = " + value.to_string());
    }
    return m_num.evaluate(value) / d;
  }

  RatFunc operator-() const
  {
    RatFunc r = *this;
    r.m_num = -r.m_num;
    return r;
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b)
  {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.m_den == b.m_den) {
      return RatFunc(a.m_num + b.m_num, a.m_den, a.m_den.is_one());
    }
    return RatFunc(a.m_num * b.m_den + b.m_num * a.m_den, a.m_den * b.m_den);
  }

  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

  friend RatFunc operator*(const RatFunc& a, const RatFunc& b)
  {
    if (a.is_zero() || b.is_zero()) {
      return RatFunc();
    }
    if (a.m_den.is_one() && b.m_den.is_one()) {
      return RatFunc(a.m_num * b.m_num, a.m_den, true);
    }
    return RatFunc(a.m_num * b.m_num, a.m_den * b.m_den);
  }

  RatFunc inverse() const
  {
    if (is_zero()) {
      throw std::domain_error("division by zero in " + std::string(V::name) + "-rational functions");
    }
    return RatFunc(m_den, m_num);
  }

  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  friend bool operator==(const RatFunc&, const RatFunc&) = default;

  std::string to_string() const
  {
    if (m_den.is_one()) {
      return m_num.to_string(V::name);
    }
    return "(" + m_num.to_string(V::name) + ")/(" + m_den.to_string(V::name) + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const RatFunc& r) { return os << r.to_string(); }

private:
  RatFunc(poly_type num, poly_type den, bool already_reduced) : m_num(std::move(num)), m_den(std::move(den))
  {
    if (!already_reduced) {
      normalize();
    } else if (m_num.is_zero()) {
      m_den = poly_type(K(1));
    }
  }

  void normalize()
  {
    if (m_den.is_zero()) {
      throw std::domain_error("rational function with zero denominator");
    }
    if (m_num.is_zero()) {
      m_den = poly_type(K(1));
      return;
    }
    if (m_den.is_constant()) {
      if (!m_den.is_one()) {
        m_num = m_num.scaled(K(1) / m_den.lead());
        m_den = poly_type(K(1));
      }
      return;
    }
    if (m_den.is_monomial()) {
      // gcd with c*x^k is x^min(k, ord num)
      auto k = static_cast<std::size_t>(m_den.degree());
      auto o = std::min(k, m_num.order());
      K inv = K(1) / m_den.lead();
      m_num = m_num.shifted_down(o).scaled(inv);
      m_den = poly_type::monomial(K(1), k - o);
      return;
    }
    auto g = poly_type::gcd(m_num, m_den);
    if (!g.is_one()) {
      m_num = poly_type::divmod(m_num, g).first;
      m_den = poly_type::divmod(m_den, g).first;
    }
    if (!(m_den.lead() == K(1))) {
      K inv = K(1) / m_den.lead();
      m_num = m_num.scaled(inv);
      m_den = m_den.scaled(inv);
    }
  }

  poly_type m_num;
  poly_type m_den;
};

/// Q(q): the field housing a formal deformation parameter.
using Fq = RatFunc<Rational, var::q>;
/// Q(q)(eta): formal q with a formal derivation scale eta.
using Fqeta = RatFunc<Fq, var::eta>;
/// Q(q1)(q2): two independent scales for two-variable Laurent rings.
using Fq1 = RatFunc<Rational, var::q1>;
using Fq1q2 = RatFunc<Fq1, var::q2>;
/// Q(eta) for a rational q with formal eta.
using Feta = RatFunc<Rational, var::eta>;

} // namespace qhl
