#pragma once

#include "qhl/field.hpp"
#include "qhl/rational.hpp"

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qhl {

/// Parses arithmetic expressions such as "1 - q^2", "(1+q)*eta^-1" or "3/4"
/// into an element of K. Identifiers resolve through K::symbol.
template <Field K>
class ExprParser
{
public:
  explicit ExprParser(std::string_view text) : m_s(text) {}

  K parse()
  {
    K v = expr();
    skip_ws();
    if (m_pos != m_s.size()) {
      fail("unexpected '" + std::string(1, m_s[m_pos]) + "'");
    }
    return v;
  }

private:
  K expr()
  {
    K acc = term();
    while (true) {
      skip_ws();
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  K term()
  {
    K acc = unary();
    while (true) {
      skip_ws();
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        K d = unary();
        if (d.is_zero()) {
          fail("division by zero");
        }
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  K unary()
  {
    skip_ws();
    if (accept('-')) {
      return -unary();
    }
    if (accept('+')) {
      return unary();
    }
    return pow();
  }

  K pow()
  {
    K base = atom();
    skip_ws();
    if (accept('^')) {
      skip_ws();
      bool neg = accept('-');
      skip_ws();
      std::size_t start = m_pos;
      while (m_pos < m_s.size() && std::isdigit(static_cast<unsigned char>(m_s[m_pos]))) {
        ++m_pos;
      }
      if (start == m_pos) {
        fail("expected integer exponent");
      }
      std::int64_t e = std::stoll(std::string(m_s.substr(start, m_pos - start)));
      if (neg && base.is_zero()) {
        fail("negative power of zero");
      }
      return power(base, neg ? -e : e);
    }
    return base;
  }

  K atom()
  {
    skip_ws();
    if (m_pos >= m_s.size()) {
      fail("unexpected end of input");
    }
    char c = m_s[m_pos];
    if (accept('(')) {
      K v = expr();
      skip_ws();
      if (!accept(')')) {
        fail("expected ')'");
      }
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = m_pos;
      while (m_pos < m_s.size() && std::isdigit(static_cast<unsigned char>(m_s[m_pos]))) {
        ++m_pos;
      }
      Rational r = Rational::parse(m_s.substr(start, m_pos - start));
      return from_rational(r);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = m_pos;
      while (m_pos < m_s.size() && (std::isalnum(static_cast<unsigned char>(m_s[m_pos])) || m_s[m_pos] == '_')) {
        ++m_pos;
      }
      auto name = m_s.substr(start, m_pos - start);
      auto sym = K::symbol(name);
      if (!sym) {
        fail("unknown indeterminate '" + std::string(name) + "'");
      }
      return *sym;
    }
    fail("unexpected '" + std::string(1, c) + "'");
    return K(0);
  }

  static K from_rational(const Rational& r)
  {
    if constexpr (std::constructible_from<K, const Rational&>) {
      return K(r);
    } else {
      return K(static_cast<std::int64_t>(r.numerator()));
    }
  }

  void skip_ws()
  {
    while (m_pos < m_s.size() && std::isspace(static_cast<unsigned char>(m_s[m_pos]))) {
      ++m_pos;
    }
  }

  bool accept(char c)
  {
    if (m_pos < m_s.size() && m_s[m_pos] == c) {
      ++m_pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& why) const
  {
    throw std::invalid_argument("cannot parse '" + std::string(m_s) + "': " + why);
  }

  std::string_view m_s;
  std::size_t m_pos = 0;
};

template <Field K>
K parse_field(std::string_view text)
{
  return ExprParser<K>(text).parse();
}

} // namespace qhl
