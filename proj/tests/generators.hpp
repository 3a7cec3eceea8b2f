#pragma once

// Hand-rolled random generators for property tests.

#include "qhl/laurent.hpp"
#include "qhl/ratfunc.hpp"

#include <random>

namespace qhl::proptest {

class Gen
{
public:
  explicit Gen(std::uint64_t seed) : m_rng(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi)
  {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(m_rng);
  }

  bool coin() { return integer(0, 1) == 1; }

  Rational rational()
  {
    std::int64_t den = integer(1, 4);
    return Rational(integer(-5, 5)) / Rational(den);
  }

  Rational nonzero_rational()
  {
    Rational r;
    do {
      r = rational();
    } while (r.is_zero());
    return r;
  }

  Poly<Rational> poly(int max_degree)
  {
    std::vector<Rational> c;
    auto deg = integer(0, max_degree);
    for (std::int64_t i = 0; i <= deg; ++i) {
      c.push_back(rational());
    }
    return Poly<Rational>(c);
  }

  /// Random element of Q(q) with small numerator and denominator degree.
  Fq fq(int max_degree = 2)
  {
    Poly<Rational> den;
    do {
      den = poly(max_degree);
    } while (den.is_zero());
    return Fq(poly(max_degree), den);
  }

  Fq nonzero_fq()
  {
    Fq r;
    do {
      r = fq();
    } while (r.is_zero());
    return r;
  }

  /// Random q-polynomial coefficient (no denominator) for Laurent tests.
  Fq fq_poly() { return Fq(poly(2), Poly<Rational>(Rational(1))); }

  LaurentPoly<Fq> laurent(std::int64_t lo, std::int64_t hi, int max_terms = 4)
  {
    LaurentPoly<Fq> a;
    auto n = integer(0, max_terms);
    for (std::int64_t i = 0; i < n; ++i) {
      a.add_term(integer(lo, hi), fq_poly());
    }
    return a;
  }

  LaurentPoly<Fq> nonzero_laurent(std::int64_t lo, std::int64_t hi, int max_terms = 4)
  {
    LaurentPoly<Fq> a;
    do {
      a = laurent(lo, hi, max_terms);
    } while (a.is_zero());
    return a;
  }

  std::mt19937_64& engine() { return m_rng; }

private:
  std::mt19937_64 m_rng;
};

} // namespace qhl::proptest
