#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace qhl {

/// Coefficient field: exact arithmetic, structural equality, named indeterminates.
template <class K>
concept Field = std::regular<K> && requires(const K a, const K b, std::string_view name) {
  { a + b } -> std::convertible_to<K>;
  { a - b } -> std::convertible_to<K>;
  { a * b } -> std::convertible_to<K>;
  { a / b } -> std::convertible_to<K>;
  { -a } -> std::convertible_to<K>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.to_string() } -> std::convertible_to<std::string>;
  { K::symbol(name) } -> std::same_as<std::optional<K>>;
  K(std::int64_t{1});
};

/// Integer power of a field element; negative exponents invert.
template <Field K>
K power(const K& base, std::int64_t exp)
{
  if (exp < 0) {
    return power(K(1) / base, -exp);
  }
  K result(1);
  K b = base;
  while (exp > 0) {
    if (exp & 1) {
      result = result * b;
    }
    exp >>= 1;
    if (exp > 0) {
      b = b * b;
    }
  }
  return result;
}

/// True when a printed coefficient must be parenthesised before juxtaposition.
inline bool needs_parens(const std::string& s)
{
  if (s.empty()) {
    return false;
  }
  for (std::size_t i = 1; i < s.size(); ++i) {
    char c = s[i];
    if (c == ' ' || c == '/' || c == '*' || c == '+' || c == '-') {
      return true;
    }
  }
  return false;
}

} // namespace qhl
