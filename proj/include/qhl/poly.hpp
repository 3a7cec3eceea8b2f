#pragma once

#include "qhl/field.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qhl {

/// Dense univariate polynomial over a field, c[0] + c[1] x + ... .
/// The coefficient vector never ends in a zero; the zero polynomial is empty.
template <Field K>
class Poly
{
public:
  Poly() = default;
  explicit Poly(std::vector<K> coeffs) : m_c(std::move(coeffs)) { trim(); }
  explicit Poly(const K& c) : m_c{c} { trim(); }

  /// c * x^k
  static Poly monomial(const K& c, std::size_t k)
  {
    Poly p;
    if (!c.is_zero()) {
      p.m_c.assign(k + 1, K(0));
      p.m_c[k] = c;
    }
    return p;
  }

  bool is_zero() const { return m_c.empty(); }
  /// -1 for the zero polynomial.
  std::int64_t degree() const { return static_cast<std::int64_t>(m_c.size()) - 1; }
  const K& lead() const { return m_c.back(); }
  const std::vector<K>& coeffs() const { return m_c; }

  K coeff(std::size_t i) const { return i < m_c.size() ? m_c[i] : K(0); }

  bool is_one() const { return m_c.size() == 1 && m_c[0] == K(1); }
  bool is_constant() const { return m_c.size() <= 1; }

  /// Exponent of the lowest nonzero term; 0 for the zero polynomial.
  std::size_t order() const
  {
    for (std::size_t i = 0; i < m_c.size(); ++i) {
      if (!m_c[i].is_zero()) {
        return i;
      }
    }
    return 0;
  }

  /// Single nonzero term.
  bool is_monomial() const { return !is_zero() && order() == m_c.size() - 1; }

  Poly shifted_down(std::size_t k) const
  {
    Poly p;
    if (k < m_c.size()) {
      p.m_c.assign(m_c.begin() + static_cast<std::ptrdiff_t>(k), m_c.end());
    }
    return p;
  }

  Poly shifted_up(std::size_t k) const
  {
    if (is_zero()) {
      return {};
    }
    Poly p;
    p.m_c.assign(k, K(0));
    p.m_c.insert(p.m_c.end(), m_c.begin(), m_c.end());
    return p;
  }

  K evaluate(const K& x) const
  {
    K acc(0);
    for (auto it = m_c.rbegin(); it != m_c.rend(); ++it) {
      acc = acc * x + *it;
    }
    return acc;
  }

  Poly scaled(const K& s) const
  {
    if (s.is_zero()) {
      return {};
    }
    Poly p = *this;
    for (auto& c : p.m_c) {
      c = c * s;
    }
    return p;
  }

  Poly monic() const { return is_zero() ? Poly{} : scaled(K(1) / lead()); }

  Poly operator-() const
  {
    Poly p = *this;
    for (auto& c : p.m_c) {
      c = -c;
    }
    return p;
  }

  Poly& operator+=(const Poly& o)
  {
    if (o.m_c.size() > m_c.size()) {
      m_c.resize(o.m_c.size(), K(0));
    }
    for (std::size_t i = 0; i < o.m_c.size(); ++i) {
      m_c[i] = m_c[i] + o.m_c[i];
    }
    trim();
    return *this;
  }

  Poly& operator-=(const Poly& o)
  {
    if (o.m_c.size() > m_c.size()) {
      m_c.resize(o.m_c.size(), K(0));
    }
    for (std::size_t i = 0; i < o.m_c.size(); ++i) {
      m_c[i] = m_c[i] - o.m_c[i];
    }
    trim();
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b)
  {
    if (a.is_zero() || b.is_zero()) {
      return {};
    }
    Poly p;
    p.m_c.assign(a.m_c.size() + b.m_c.size() - 1, K(0));
    for (std::size_t i = 0; i < a.m_c.size(); ++i) {
      if (a.m_c[i].is_zero()) {
        continue;
      }
      for (std::size_t j = 0; j < b.m_c.size(); ++j) {
        if (b.m_c[j].is_zero()) {
          continue;
        }
        p.m_c[i + j] = p.m_c[i + j] + a.m_c[i] * b.m_c[j];
      }
    }
    p.trim();
    return p;
  }

  friend bool operator==(const Poly&, const Poly&) = default;

  /// Euclidean division: a = quot * b + rem with deg rem < deg b.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b)
  {
    if (b.is_zero()) {
      throw std::domain_error("polynomial division by zero");
    }
    Poly rem = a;
    Poly quot;
    if (a.degree() < b.degree()) {
      return {quot, rem};
    }
    quot.m_c.assign(static_cast<std::size_t>(a.degree() - b.degree() + 1), K(0));
    const K inv_lead = K(1) / b.lead();
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
      auto shift = static_cast<std::size_t>(rem.degree() - b.degree());
      K factor = rem.lead() * inv_lead;
      quot.m_c[shift] = factor;
      for (std::size_t i = 0; i < b.m_c.size(); ++i) {
        rem.m_c[shift + i] = rem.m_c[shift + i] - factor * b.m_c[i];
      }
      rem.trim();
    }
    quot.trim();
    return {quot, rem};
  }

  /// Monic greatest common divisor (zero only when both inputs are zero).
  static Poly gcd(Poly a, Poly b)
  {
    while (!b.is_zero()) {
      auto r = divmod(a, b).second;
      a = std::move(b);
      b = r.monic();
    }
    return a.monic();
  }

  std::string to_string(std::string_view var) const
  {
    if (is_zero()) {
      return "0";
    }
    std::string out;
    bool first = true;
    for (std::size_t i = 0; i < m_c.size(); ++i) {
      if (m_c[i].is_zero()) {
        continue;
      }
      std::string cs = m_c[i].to_string();
      bool negative = false;
      if (!needs_parens(cs) && cs.front() == '-') {
        negative = true;
        cs.erase(0, 1);
      }
      std::string term;
      if (i == 0) {
        term = needs_parens(cs) ? "(" + cs + ")" : cs;
      } else {
        std::string mono(var);
        if (i > 1) {
          mono += "^" + std::to_string(i);
        }
        if (cs == "1") {
          term = mono;
        } else {
          term = (needs_parens(cs) ? "(" + cs + ")" : cs) + "*" + mono;
        }
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

private:
  void trim()
  {
    while (!m_c.empty() && m_c.back().is_zero()) {
      m_c.pop_back();
    }
  }

  std::vector<K> m_c;
};

} // namespace qhl
