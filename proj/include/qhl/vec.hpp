#pragma once

#include "qhl/field.hpp"
#include "qhl/laurent.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qhl {

inline std::string key_string(const std::string& k) { return k; }
inline std::string key_string(std::int64_t k) { return std::to_string(k); }
inline std::string key_string(const ExpVec& k)
{
  std::string s = "(";
  for (std::size_t i = 0; i < k.size(); ++i) {
    s += (i ? "," : "") + std::to_string(k[i]);
  }
  return s + ")";
}

/// Finitely supported linear combination of basis keys. Zero coefficients are never stored.
template <Field K, class Key>
class FreeVec
{
public:
  using term_map = std::map<Key, K>;

  FreeVec() = default;

  static FreeVec basis(const Key& k, const K& c = K(1))
  {
    FreeVec v;
    v.add_term(k, c);
    return v;
  }

  const term_map& terms() const { return m_terms; }
  bool is_zero() const { return m_terms.empty(); }
  std::size_t size() const { return m_terms.size(); }

  K coeff(const Key& k) const
  {
    auto it = m_terms.find(k);
    return it == m_terms.end() ? K(0) : it->second;
  }

  void add_term(const Key& k, const K& c)
  {
    if (c.is_zero()) {
      return;
    }
    auto [it, inserted] = m_terms.try_emplace(k, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero()) {
        m_terms.erase(it);
      }
    }
  }

  FreeVec& operator+=(const FreeVec& o)
  {
    for (const auto& [k, c] : o.m_terms) {
      add_term(k, c);
    }
    return *this;
  }

  FreeVec& operator-=(const FreeVec& o)
  {
    for (const auto& [k, c] : o.m_terms) {
      add_term(k, -c);
    }
    return *this;
  }

  friend FreeVec operator+(FreeVec a, const FreeVec& b) { return a += b; }
  friend FreeVec operator-(FreeVec a, const FreeVec& b) { return a -= b; }
  FreeVec operator-() const { return scaled(K(-1)); }

  FreeVec scaled(const K& s) const
  {
    if (s.is_zero()) {
      return {};
    }
    FreeVec r = *this;
    for (auto& [k, c] : r.m_terms) {
      c = c * s;
    }
    return r;
  }

  friend bool operator==(const FreeVec&, const FreeVec&) = default;

  std::string to_string() const
  {
    if (is_zero()) {
      return "0";
    }
    std::string out;
    for (const auto& [k, c] : m_terms) {
      std::string cs = c.to_string();
      bool negative = !needs_parens(cs) && cs.front() == '-';
      if (negative) {
        cs.erase(0, 1);
      }
      std::string term = key_string(k);
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

private:
  term_map m_terms;
};

/// Extends a map on basis keys linearly.
template <Field K, class Key, class Key2, class Fn>
FreeVec<K, Key2> apply_linear(const FreeVec<K, Key>& v, Fn&& on_basis)
{
  FreeVec<K, Key2> r;
  for (const auto& [k, c] : v.terms()) {
    r += on_basis(k).scaled(c);
  }
  return r;
}

/// Extends a map on basis pairs bilinearly.
template <Field K, class Key, class Key2, class Fn>
FreeVec<K, Key2> apply_bilinear(const FreeVec<K, Key>& x, const FreeVec<K, Key>& y, Fn&& on_basis)
{
  FreeVec<K, Key2> r;
  for (const auto& [a, ca] : x.terms()) {
    for (const auto& [b, cb] : y.terms()) {
      r += on_basis(a, b).scaled(ca * cb);
    }
  }
  return r;
}

} // namespace qhl
