#pragma once

#include "qhl/laurent.hpp"
#include "qhl/parse.hpp"
#include "qhl/ratfunc.hpp"

#include <json.hpp>

#include <string>

namespace qhl {

namespace detail {
template <class T>
struct is_ratfunc : std::false_type {};
template <Field K, Indeterminate V>
struct is_ratfunc<RatFunc<K, V>> : std::true_type {};
} // namespace detail

/// {"num": "poly-string", "den": "poly-string"}
template <Field K>
nlohmann::json coefficient_to_json(const K& c)
{
  if constexpr (detail::is_ratfunc<K>::value) {
    return {{"num", c.num().to_string(K::variable_name())}, {"den", c.den().to_string(K::variable_name())}};
  } else {
    return {{"num", c.numerator().str()}, {"den", c.denominator().str()}};
  }
}

template <Field K>
K coefficient_from_json(const nlohmann::json& j)
{
  if (j.is_string()) {
    return parse_field<K>(j.get<std::string>());
  }
  if (j.is_number_integer()) {
    return K(j.get<std::int64_t>());
  }
  K num = parse_field<K>(j.at("num").get<std::string>());
  K den = j.contains("den") ? parse_field<K>(j.at("den").get<std::string>()) : K(1);
  if (den.is_zero()) {
    throw std::invalid_argument("coefficient with zero denominator");
  }
  return num / den;
}

/// {"terms": [{"exp": int or [int], "coeff": {...}}]} with terms in exponent order.
template <Field K, class Exp>
nlohmann::json laurent_to_json(const Laurent<K, Exp>& a)
{
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : a.terms()) {
    terms.push_back({{"exp", e}, {"coeff", coefficient_to_json(c)}});
  }
  return {{"terms", terms}};
}

template <Field K, class Exp>
Laurent<K, Exp> laurent_from_json(const nlohmann::json& j)
{
  Laurent<K, Exp> r;
  std::size_t arity = 0;
  bool first = true;
  for (const auto& term : j.at("terms")) {
    Exp e = term.at("exp").get<Exp>();
    if constexpr (std::same_as<Exp, ExpVec>) {
      if (first) {
        arity = e.size();
      } else if (e.size() != arity) {
        throw std::invalid_argument("exponent vectors of different arity in polynomial JSON");
      }
    }
    first = false;
    r.add_term(e, coefficient_from_json<K>(term.at("coeff")));
  }
  return r;
}

} // namespace qhl
