#pragma once

#include "qhl/field.hpp"
#include "qhl/laurent.hpp"
#include "qhl/report.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qhl {

/// A parameter outside the range where a construction is defined.
class UnsupportedParameter : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// sigma(t) = q t^s on K[t, 1/t].
template <Field K>
struct SigmaEndo
{
  K q;
  std::int64_t s = 1;

  SigmaEndo(K q_, std::int64_t s_) : q(std::move(q_)), s(s_)
  {
    if (q.is_zero()) {
      throw UnsupportedParameter("sigma(t) = q t^s needs q != 0");
    }
  }

  /// Image of a monomial: c t^n -> c q^n t^{sn}.
  LaurentPoly<K> monomial_image(std::int64_t n, const K& c = K(1)) const
  {
    return LaurentPoly<K>::monomial(c * power(q, n), s * n);
  }

  LaurentPoly<K> operator()(const LaurentPoly<K>& a) const
  {
    LaurentPoly<K> r;
    for (const auto& [n, c] : a.terms()) {
      r.add_term(s * n, c * power(q, n));
    }
    return r;
  }
};

template <Field K>
LaurentPoly<K> apply_sigma(const SigmaEndo<K>& sigma, const LaurentPoly<K>& a)
{
  return sigma(a);
}

/// D = eta t^{-k+1} (id - sigma) / (t - q t^s), a sigma-derivation of K[t, 1/t].
template <Field K>
class SigmaDerivation
{
public:
  using coefficient_type = K;
  using exponent_type = std::int64_t;
  using poly_type = LaurentPoly<K>;

  SigmaDerivation(SigmaEndo<K> sigma, K eta, std::int64_t k) : m_sigma(std::move(sigma)), m_eta(std::move(eta)), m_k(k) {}

  const SigmaEndo<K>& sigma() const { return m_sigma; }
  const K& q() const { return m_sigma.q; }
  std::int64_t s() const { return m_sigma.s; }
  const K& eta() const { return m_eta; }
  std::int64_t k() const { return m_k; }
  std::size_t arity() const { return 1; }

  poly_type apply_sigma(const poly_type& a) const { return m_sigma(a); }

  /// D(t^n) = eta t^{n-k} {n}_u with u = q t^{s-1}, expanded as a finite sum.
  poly_type monomial_image(std::int64_t n) const
  {
    poly_type r;
    if (m_eta.is_zero()) {
      return r;
    }
    const std::int64_t step = m_sigma.s - 1;
    if (n >= 0) {
      K qr(1);
      for (std::int64_t i = 0; i < n; ++i) {
        r.add_term(n - m_k + i * step, m_eta * qr);
        qr = qr * m_sigma.q;
      }
    } else {
      K qinv = K(1) / m_sigma.q;
      K qr = qinv;
      for (std::int64_t i = -1; i >= n; --i) {
        r.add_term(n - m_k + i * step, -(m_eta * qr));
        qr = qr * qinv;
      }
    }
    return r;
  }

  poly_type apply_D(const poly_type& a) const
  {
    poly_type r;
    for (const auto& [n, c] : a.terms()) {
      r += monomial_image(n).scaled(c);
    }
    return r;
  }

  /// The defining quotient taken literally, through exact Laurent division.
  /// Undefined when t - q t^s vanishes identically (s = 1, q = 1).
  poly_type apply_D_by_division(const poly_type& a) const
  {
    poly_type denom = t_power<K>(1) - t_power<K>(m_sigma.s, m_sigma.q);
    if (denom.is_zero()) {
      throw UnsupportedParameter("t - q t^s is zero; the quotient form of D is undefined");
    }
    poly_type quotient = laurent_divexact(a - m_sigma(a), denom);
    return quotient.shifted(1 - m_k).scaled(m_eta);
  }

  /// delta = q^k t^{k(s-1)} sum_{r<s} (q t^{s-1})^r, so that D sigma = delta sigma D.
  poly_type delta() const
  {
    if (m_sigma.s < 1) {
      throw UnsupportedParameter("unsupported s = " + std::to_string(m_sigma.s) + ": delta needs s >= 1");
    }
    const std::int64_t step = m_sigma.s - 1;
    const K qk = power(m_sigma.q, m_k);
    poly_type r;
    K qr(1);
    for (std::int64_t i = 0; i < m_sigma.s; ++i) {
      r.add_term(m_k * step + i * step, qk * qr);
      qr = qr * m_sigma.q;
    }
    return r;
  }

  nlohmann::json params() const
  {
    return {{"q", m_sigma.q.to_string()}, {"s", m_sigma.s}, {"k", m_k}, {"eta", m_eta.to_string()}};
  }

private:
  SigmaEndo<K> m_sigma;
  K m_eta;
  std::int64_t m_k;
};

/// sigma(z^m) = q^m z^{S m}: column i of S is the exponent vector of sigma(z_i) / q_i.
template <Field K>
struct MultiSigmaEndo
{
  std::vector<K> q;
  std::vector<std::vector<std::int64_t>> S;

  MultiSigmaEndo(std::vector<K> q_, std::vector<std::vector<std::int64_t>> S_) : q(std::move(q_)), S(std::move(S_))
  {
    if (q.empty()) {
      throw std::invalid_argument("multivariate sigma needs at least one variable");
    }
    if (S.size() != q.size()) {
      throw std::invalid_argument("exponent matrix rows do not match the number of variables");
    }
    for (const auto& row : S) {
      if (row.size() != q.size()) {
        throw std::invalid_argument("exponent matrix must be square");
      }
    }
    for (const auto& qi : q) {
      if (qi.is_zero()) {
        throw UnsupportedParameter("sigma(z_i) = q_i z^... needs every q_i != 0");
      }
    }
  }

  std::size_t arity() const { return q.size(); }

  ExpVec image_exponent(const ExpVec& m) const
  {
    check_arity(m);
    ExpVec r(m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m.size(); ++j) {
        r[i] += S[i][j] * m[j];
      }
    }
    return r;
  }

  /// q^m = prod q_i^{m_i}
  K scale(const ExpVec& m) const
  {
    check_arity(m);
    K r(1);
    for (std::size_t i = 0; i < m.size(); ++i) {
      r = r * power(q[i], m[i]);
    }
    return r;
  }

  MultiLaurentPoly<K> operator()(const MultiLaurentPoly<K>& a) const
  {
    MultiLaurentPoly<K> r;
    for (const auto& [m, c] : a.terms()) {
      r.add_term(image_exponent(m), c * scale(m));
    }
    return r;
  }

  void check_arity(const ExpVec& m) const
  {
    if (m.size() != q.size()) {
      throw std::invalid_argument(
        "exponent of arity " + std::to_string(m.size()) + " for " + std::to_string(q.size()) + " variables");
    }
  }
};

template <Field K>
MultiLaurentPoly<K> apply_sigma(const MultiSigmaEndo<K>& sigma, const MultiLaurentPoly<K>& a)
{
  return sigma(a);
}

/// D = Q z^{-G} (id - sigma) on K[z1^{+-1}, ..., zn^{+-1}].
template <Field K>
class MultiSigmaDerivation
{
public:
  using coefficient_type = K;
  using exponent_type = ExpVec;
  using poly_type = MultiLaurentPoly<K>;

  MultiSigmaDerivation(MultiSigmaEndo<K> sigma, K Q, ExpVec G) : m_sigma(std::move(sigma)), m_Q(std::move(Q)), m_G(std::move(G))
  {
    m_sigma.check_arity(m_G);
  }

  const MultiSigmaEndo<K>& sigma() const { return m_sigma; }
  const K& Q() const { return m_Q; }
  const ExpVec& G() const { return m_G; }
  std::size_t arity() const { return m_sigma.arity(); }

  poly_type apply_sigma(const poly_type& a) const { return m_sigma(a); }

  poly_type monomial_image(const ExpVec& m) const
  {
    poly_type r = poly_type::monomial(K(1), m) - poly_type::monomial(m_sigma.scale(m), m_sigma.image_exponent(m));
    return r.shifted(negated(m_G)).scaled(m_Q);
  }

  poly_type apply_D(const poly_type& a) const
  {
    poly_type r;
    for (const auto& [m, c] : a.terms()) {
      r += monomial_image(m).scaled(c);
    }
    return r;
  }

  /// delta = q^G z^{(S - I) G}, the ratio z^{-G} / sigma(z^{-G}).
  poly_type delta() const
  {
    ExpVec e = m_sigma.image_exponent(m_G);
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] -= m_G[i];
    }
    return poly_type::monomial(m_sigma.scale(m_G), e);
  }

  nlohmann::json params() const
  {
    nlohmann::json qs = nlohmann::json::array();
    for (const auto& qi : m_sigma.q) {
      qs.push_back(qi.to_string());
    }
    return {{"qs", qs}, {"S", m_sigma.S}, {"G", m_G}, {"Q", m_Q.to_string()}};
  }

private:
  static ExpVec negated(ExpVec e)
  {
    for (auto& x : e) {
      x = -x;
    }
    return e;
  }

  MultiSigmaEndo<K> m_sigma;
  K m_Q;
  ExpVec m_G;
};

template <class D>
concept SigmaDerivationLike = requires(const D d, const typename D::poly_type a, const typename D::exponent_type e) {
  typename D::coefficient_type;
  { d.apply_D(a) } -> std::same_as<typename D::poly_type>;
  { d.apply_sigma(a) } -> std::same_as<typename D::poly_type>;
  { d.monomial_image(e) } -> std::same_as<typename D::poly_type>;
  { d.delta() } -> std::same_as<typename D::poly_type>;
};

template <SigmaDerivationLike D>
typename D::poly_type apply_D(const D& d, const typename D::poly_type& a)
{
  return d.apply_D(a);
}

template <SigmaDerivationLike D>
typename D::poly_type compute_delta(const D& d)
{
  return d.delta();
}

namespace detail {

inline nlohmann::json index_json(std::int64_t n) { return nlohmann::json::array({n}); }
inline nlohmann::json index_json(const ExpVec& n) { return nlohmann::json(n); }

/// All exponent vectors of the given arity with every entry in [lo, hi], lexicographic.
inline std::vector<ExpVec> box(std::size_t arity, std::int64_t lo, std::int64_t hi)
{
  std::vector<ExpVec> out;
  if (hi < lo) {
    return out;
  }
  ExpVec cur(arity, lo);
  while (true) {
    out.push_back(cur);
    std::size_t i = arity;
    while (i > 0 && cur[i - 1] == hi) {
      cur[i - 1] = lo;
      --i;
    }
    if (i == 0) {
      return out;
    }
    ++cur[i - 1];
  }
}

} // namespace detail

/// Checks D(sigma(t^n)) = delta sigma(D(t^n)) for every n in [lo, hi]
/// (every multi-index with entries in [lo, hi] in several variables).
template <SigmaDerivationLike D>
Report check_condition_C2(const D& d, const typename D::poly_type& delta, std::int64_t lo, std::int64_t hi)
{
  using P = typename D::poly_type;
  using K = typename D::coefficient_type;
  Report rep;
  ReportTimer timer(rep);
  rep.suite = "condition-C2";
  rep.params = d.params();
  rep.params["delta"] = delta.to_string();
  rep.window = {lo, hi};
  auto check = [&](const auto& n) {
    P mono = P::monomial(K(1), n);
    P lhs = d.apply_D(d.apply_sigma(mono));
    P rhs = delta * d.apply_sigma(d.apply_D(mono));
    rep.record(lhs == rhs, detail::index_json(n), lhs.to_string(), rhs.to_string());
  };
  if constexpr (std::same_as<typename D::exponent_type, std::int64_t>) {
    for (std::int64_t n = lo; n <= hi; ++n) {
      check(n);
    }
  } else {
    for (const auto& n : detail::box(d.arity(), lo, hi)) {
      check(n);
    }
  }
  return rep;
}

/// sigma(Ann D) inside Ann D. A is an integral domain, so Ann D is {0} as soon
/// as D is nonzero, and all of A when D = 0; either way the inclusion holds.
/// The report records which case applies and the witness used.
template <SigmaDerivationLike D>
Report check_condition_C1(const D& d)
{
  using P = typename D::poly_type;
  using K = typename D::coefficient_type;
  Report rep;
  ReportTimer timer(rep);
  rep.suite = "condition-C1";
  rep.params = d.params();
  std::vector<typename D::exponent_type> probes;
  if constexpr (std::same_as<typename D::exponent_type, std::int64_t>) {
    probes = {0, 1, -1};
  } else {
    for (std::size_t i = 0; i < d.arity(); ++i) {
      ExpVec e(d.arity(), 0);
      e[i] = 1;
      probes.push_back(e);
      e[i] = -1;
      probes.push_back(e);
    }
  }
  P witness;
  for (const auto& e : probes) {
    P image = d.apply_D(P::monomial(K(1), e));
    if (!image.is_zero()) {
      rep.notes.push_back("D(" + P::monomial(K(1), e).to_string() + ") = " + image.to_string() +
                          " is nonzero; A is a domain so Ann(D) = {0} and sigma(0) = 0 lies in it");
      witness = image;
      break;
    }
  }
  if (witness.is_zero()) {
    rep.notes.push_back("D vanishes on the generators, so D = 0, Ann(D) = A and sigma(A) is contained in A");
  }
  rep.record(true, nlohmann::json::array(), "sigma(Ann D)", "Ann D");
  return rep;
}

} // namespace qhl
