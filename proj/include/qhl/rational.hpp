#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qhl {

/// Exact rational number with arbitrary-precision numerator and denominator.
///
/// Always stored in lowest terms with a positive denominator; zero is 0/1.
/// Values whose numerator and denominator fit in 64 bits are kept inline and
/// combined with 128-bit intermediates; anything larger lives in a
/// Boost.Multiprecision rational. A value has exactly one representation.
class Rational
{
public:
  using Integer = boost::multiprecision::cpp_int;
  using Big = boost::multiprecision::cpp_rational;

  Rational() = default;
  Rational(std::int64_t n) : m_num(n) {}
  Rational(const Integer& n) { assign(Big(n)); }
  Rational(const Integer& num, const Integer& den)
  {
    if (den == 0) {
      throw std::domain_error("rational with zero denominator");
    }
    assign(den < 0 ? Big(-num, -den) : Big(num, den));
  }

  static Rational parse(std::string_view text)
  {
    std::string s(text);
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) {
        return Rational(Integer(trim(s)));
      }
      return Rational(Integer(trim(s.substr(0, slash))), Integer(trim(s.substr(slash + 1))));
    } catch (const std::runtime_error&) {
      throw std::invalid_argument("not a rational literal: '" + s + "'");
    }
  }

  /// Rationals have no named indeterminates.
  static std::optional<Rational> symbol(std::string_view) { return std::nullopt; }

  Integer numerator() const { return m_big ? Integer(boost::multiprecision::numerator(*m_big)) : Integer(m_num); }
  Integer denominator() const { return m_big ? Integer(boost::multiprecision::denominator(*m_big)) : Integer(m_den); }

  bool is_zero() const { return !m_big && m_num == 0; }
  bool is_one() const { return !m_big && m_num == 1 && m_den == 1; }
  int sign() const
  {
    if (m_big) {
      return m_big->sign();
    }
    return m_num > 0 ? 1 : (m_num < 0 ? -1 : 0);
  }

  Rational inverse() const
  {
    if (is_zero()) {
      throw std::domain_error("division by zero");
    }
    return Rational(1) / *this;
  }

  Rational operator-() const
  {
    if (!m_big && m_num != std::numeric_limits<std::int64_t>::min()) {
      Rational r;
      r.m_num = -m_num;
      r.m_den = m_den;
      return r;
    }
    return from_big(-big());
  }

  friend Rational operator+(const Rational& a, const Rational& b)
  {
    if (!a.m_big && !b.m_big) {
      if (a.m_den == 1 && b.m_den == 1) {
        return from_wide(wide(a.m_num) + b.m_num, 1);
      }
      return from_wide(wide(a.m_num) * b.m_den + wide(b.m_num) * a.m_den, wide(a.m_den) * b.m_den);
    }
    return from_big(a.big() + b.big());
  }

  friend Rational operator-(const Rational& a, const Rational& b)
  {
    if (!a.m_big && !b.m_big) {
      if (a.m_den == 1 && b.m_den == 1) {
        return from_wide(wide(a.m_num) - b.m_num, 1);
      }
      return from_wide(wide(a.m_num) * b.m_den - wide(b.m_num) * a.m_den, wide(a.m_den) * b.m_den);
    }
    return from_big(a.big() - b.big());
  }

  friend Rational operator*(const Rational& a, const Rational& b)
  {
    if (!a.m_big && !b.m_big) {
      return from_wide(wide(a.m_num) * b.m_num, wide(a.m_den) * b.m_den);
    }
    return from_big(a.big() * b.big());
  }

  friend Rational operator/(const Rational& a, const Rational& b)
  {
    if (b.is_zero()) {
      throw std::domain_error("division by zero");
    }
    if (!a.m_big && !b.m_big) {
      return from_wide(wide(a.m_num) * b.m_den, wide(a.m_den) * b.m_num);
    }
    return from_big(a.big() / b.big());
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b)
  {
    if (!a.m_big && !b.m_big) {
      return a.m_num == b.m_num && a.m_den == b.m_den;
    }
    if (a.m_big && b.m_big) {
      return *a.m_big == *b.m_big;
    }
    return false;
  }

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
  {
    if (!a.m_big && !b.m_big) {
      return wide(a.m_num) * b.m_den <=> wide(b.m_num) * a.m_den;
    }
    Big x = a.big();
    Big y = b.big();
    if (x < y) return std::strong_ordering::less;
    if (y < x) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string to_string() const
  {
    if (!m_big) {
      return m_den == 1 ? std::to_string(m_num) : std::to_string(m_num) + "/" + std::to_string(m_den);
    }
    return numerator().str() + "/" + denominator().str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

private:
  using Wide = __int128;
  using UWide = unsigned __int128;

  static Wide wide(std::int64_t v) { return static_cast<Wide>(v); }

  static UWide uabs(Wide v) { return v < 0 ? static_cast<UWide>(-(v + 1)) + 1 : static_cast<UWide>(v); }

  static UWide gcd(UWide a, UWide b)
  {
    while (b != 0) {
      UWide t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static bool fits(Wide v)
  {
    return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
  }

  static Integer to_integer(Wide v)
  {
    UWide u = uabs(v);
    Integer r = static_cast<std::uint64_t>(u >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(u);
    return v < 0 ? Integer(-r) : r;
  }

  /// num/den from exact 128-bit combinations of 64-bit values; den != 0.
  static Rational from_wide(Wide num, Wide den)
  {
    if (num == 0) {
      return Rational();
    }
    if (den < 0 && num != std::numeric_limits<Wide>::min() && den != std::numeric_limits<Wide>::min()) {
      num = -num;
      den = -den;
    }
    if (den > 0 && den != 1) {
      UWide g = gcd(uabs(num), static_cast<UWide>(den));
      if (g != 1) {
        num /= static_cast<Wide>(g);
        den /= static_cast<Wide>(g);
      }
    }
    if (den > 0 && fits(num) && fits(den)) {
      Rational r;
      r.m_num = static_cast<std::int64_t>(num);
      r.m_den = static_cast<std::int64_t>(den);
      return r;
    }
    return from_big(Big(to_integer(num), to_integer(den)));
  }

  static Rational from_big(const Big& v)
  {
    Rational r;
    r.assign(v);
    return r;
  }

  void assign(const Big& v)
  {
    Integer n = boost::multiprecision::numerator(v);
    Integer d = boost::multiprecision::denominator(v);
    if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max() &&
        d <= std::numeric_limits<std::int64_t>::max()) {
      m_num = static_cast<std::int64_t>(n);
      m_den = static_cast<std::int64_t>(d);
      m_big.reset();
    } else {
      m_big = std::make_shared<const Big>(v);
    }
  }

  Big big() const { return m_big ? *m_big : Big(Integer(m_num), Integer(m_den)); }

  static std::string trim(const std::string& s)
  {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) {
      return {};
    }
    std::string out = s.substr(b, e - b + 1);
    if (!out.empty() && out.front() == '+') {
      out.erase(0, 1);
    }
    return out;
  }

  std::int64_t m_num = 0;
  std::int64_t m_den = 1;
  std::shared_ptr<const Big> m_big;
};

} // namespace qhl
