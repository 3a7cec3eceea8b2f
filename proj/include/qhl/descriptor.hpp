#pragma once

#include "qhl/central_ext.hpp"
#include "qhl/parse.hpp"
#include "qhl/qhl.hpp"
#include "qhl/serialize.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qhl {

/// JSON descriptor for finite algebras on string keys:
///
///   {"name": ..., "basis": [...],
///    "grade_group": {"rank": r, "torsion": [...]}, "grading": {"x": [..]},
///    "bracket": {"(x,y)": {"z": coeff}},
///    "alpha": {"x": {"y": coeff}}, "beta": {...},
///    "omega": "builtin:-1" | {"color": {"sign_matrix": [[..]]}} | {"table": {"(x,y)": coeff}}}
///
/// Coefficients are field literals ("2", "-1/3", "q") or {"num", "den"} objects.
/// Missing alpha or beta entries are the identity; missing brackets are zero.
namespace detail {

inline std::pair<std::string, std::string> parse_pair_key(const std::string& s)
{
  auto comma = s.find(',');
  if (s.size() < 5 || s.front() != '(' || s.back() != ')' || comma == std::string::npos ||
      s.find(',', comma + 1) != std::string::npos) {
    throw std::invalid_argument("bad pair key '" + s + "', expected \"(x,y)\"");
  }
  return {s.substr(1, comma - 1), s.substr(comma + 1, s.size() - comma - 2)};
}

inline std::string pair_key(const std::string& x, const std::string& y) { return "(" + x + "," + y + ")"; }

template <Field K>
nlohmann::json coefficient_literal(const K& c)
{
  std::string s = c.to_string();
  try {
    if (parse_field<K>(s) == c) {
      return s;
    }
  } catch (const std::exception&) {
  }
  return coefficient_to_json(c);
}

template <Field K>
FreeVec<K, std::string> vec_from_json(const nlohmann::json& j, const std::map<std::string, int>& known)
{
  FreeVec<K, std::string> v;
  for (const auto& [k, c] : j.items()) {
    if (!known.count(k)) {
      throw std::invalid_argument("unknown basis element '" + k + "'");
    }
    v.add_term(k, coefficient_from_json<K>(c));
  }
  return v;
}

template <Field K, class Key, class Label>
nlohmann::json vec_to_json(const FreeVec<K, Key>& v, const Label& label)
{
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, c] : v.terms()) {
    j[label(k)] = coefficient_literal(c);
  }
  return j;
}

template <Field K>
nlohmann::json vec_to_json(const FreeVec<K, std::string>& v)
{
  return vec_to_json(v, [](const std::string& k) { return k; });
}

} // namespace detail

template <Field K>
QhlAlgebra<K, std::string> algebra_from_json(const nlohmann::json& j)
{
  using V = FreeVec<K, std::string>;
  std::vector<std::string> basis = j.at("basis").get<std::vector<std::string>>();
  std::map<std::string, int> known;
  for (const auto& b : basis) {
    if (b.empty() || b.find_first_of("(),") != std::string::npos) {
      throw std::invalid_argument("basis label '" + b + "' must be non-empty without '(', ')' or ','");
    }
    if (!known.emplace(b, 0).second) {
      throw std::invalid_argument("duplicate basis element '" + b + "'");
    }
  }
  StructureTable<K, std::string> table;
  if (j.contains("bracket")) {
    for (const auto& [key, value] : j.at("bracket").items()) {
      auto [x, y] = detail::parse_pair_key(key);
      if (!known.count(x) || !known.count(y)) {
        throw std::invalid_argument("bracket " + key + " uses an unknown basis element");
      }
      table[{x, y}] = detail::vec_from_json<K>(value, known);
    }
  }
  auto read_map = [&](const char* field) {
    auto m = std::make_shared<std::map<std::string, V>>();
    if (j.contains(field)) {
      for (const auto& [key, value] : j.at(field).items()) {
        if (!known.count(key)) {
          throw std::invalid_argument(std::string(field) + " given on unknown basis element '" + key + "'");
        }
        (*m)[key] = detail::vec_from_json<K>(value, known);
      }
    }
    return typename QhlAlgebra<K, std::string>::MapFn([m = std::shared_ptr<const std::map<std::string, V>>(m)](const std::string& x) {
      auto it = m->find(x);
      return it == m->end() ? V::basis(x) : it->second;
    });
  };

  std::optional<GradeGroup> group;
  std::map<std::string, Grade> grading;
  if (j.contains("grade_group")) {
    const auto& g = j.at("grade_group");
    group = GradeGroup(g.value("rank", std::size_t{0}), g.value("torsion", std::vector<std::int64_t>{}));
    for (const auto& [key, value] : j.at("grading").items()) {
      if (!known.count(key)) {
        throw std::invalid_argument("grading given on unknown basis element '" + key + "'");
      }
      grading[key] = value.template get<Grade>();
    }
  }

  std::string name = j.value("name", std::string("descriptor"));
  QhlAlgebra<K, std::string> A;
  const auto& om = j.contains("omega") ? j.at("omega") : nlohmann::json("builtin:-1");
  if (om.is_object() && om.contains("color")) {
    if (!group) {
      throw std::invalid_argument("color omega needs grade_group and grading");
    }
    auto eps = sign_bicharacter<K>(*group, om.at("color").at("sign_matrix").get<std::vector<std::vector<std::int64_t>>>());
    A = make_color_algebra<K, std::string>(name, eps, basis, grading, std::move(table));
  } else {
    A.name = name;
    A.basis = basis;
    A.bracket_on_basis = table_bracket(std::move(table));
    if (om.is_string()) {
      if (om.get<std::string>() != "builtin:-1") {
        throw std::invalid_argument("unknown omega '" + om.get<std::string>() + "'");
      }
      A.omega = constant_omega<K, std::string>(K(-1));
    } else if (om.is_object() && om.contains("table")) {
      auto w = std::make_shared<std::map<std::pair<std::string, std::string>, K>>();
      for (const auto& [key, value] : om.at("table").items()) {
        (*w)[detail::parse_pair_key(key)] = coefficient_from_json<K>(value);
      }
      A.omega = [w](const std::string& x, const std::string& y) -> std::optional<K> {
        auto it = w->find({x, y});
        return it == w->end() ? std::nullopt : std::optional<K>(it->second);
      };
    } else {
      throw std::invalid_argument("omega must be \"builtin:-1\", {\"color\": ...} or {\"table\": ...}");
    }
    if (group) {
      auto g = std::make_shared<const std::map<std::string, Grade>>(grading);
      A.grade_group = group;
      A.grade = [g](const std::string& x) { return g->at(x); };
    }
  }
  A.alpha_on_basis = read_map("alpha");
  A.beta_on_basis = read_map("beta");
  return A;
}

/// Writes a finite algebra on its basis list, relabelling keys through `label`;
/// omega becomes an explicit table over the pairs where it is defined.
template <Field K, class Key, class Label>
nlohmann::json algebra_to_json(const QhlAlgebra<K, Key>& A, const Label& label)
{
  using V = FreeVec<K, Key>;
  nlohmann::json j;
  j["name"] = A.name;
  nlohmann::json basis = nlohmann::json::array();
  nlohmann::json bracket = nlohmann::json::object();
  nlohmann::json omega = nlohmann::json::object();
  nlohmann::json alpha = nlohmann::json::object();
  nlohmann::json beta = nlohmann::json::object();
  for (const auto& x : A.basis) {
    basis.push_back(label(x));
    for (const auto& y : A.basis) {
      auto v = A.bracket(x, y);
      if (!v.is_zero()) {
        bracket[detail::pair_key(label(x), label(y))] = detail::vec_to_json(v, label);
      }
      if (auto w = A.omega(x, y)) {
        omega[detail::pair_key(label(x), label(y))] = detail::coefficient_literal(*w);
      }
    }
    auto ax = A.alpha(x);
    if (ax != V::basis(x)) {
      alpha[label(x)] = detail::vec_to_json(ax, label);
    }
    auto bx = A.beta(x);
    if (bx != V::basis(x)) {
      beta[label(x)] = detail::vec_to_json(bx, label);
    }
  }
  j["basis"] = basis;
  if (A.grade_group && A.grade) {
    j["grade_group"] = A.grade_group->to_json();
    nlohmann::json g = nlohmann::json::object();
    for (const auto& x : A.basis) {
      g[label(x)] = A.grade(x);
    }
    j["grading"] = g;
  }
  j["bracket"] = bracket;
  if (!alpha.empty()) {
    j["alpha"] = alpha;
  }
  if (!beta.empty()) {
    j["beta"] = beta;
  }
  j["omega"] = {{"table", omega}};
  return j;
}

template <Field K>
nlohmann::json algebra_to_json(const QhlAlgebra<K, std::string>& A)
{
  return algebra_to_json(A, [](const std::string& k) { return k; });
}

/// Extension descriptor:
///
///   {"L": <algebra>, "a": <algebra>, "g": {"(x,y)": {"c": coeff}},
///    "f": {"L": {"x": {"c": coeff}}, "a": {"c": {"c": coeff}}}, "h": {...},
///    "xi": {"x": {"c": coeff}}, "strong": false}
///
/// "a" defaults to the line spanned by c; missing f and h entries are the
/// projections onto alpha_a and beta_a; "xi" asks for an equivalence check
/// against the data transformed by xi.
template <Field K>
struct ExtensionDescriptor
{
  ExtensionData<K, std::string, std::string> data;
  std::optional<std::function<FreeVec<K, std::string>(const std::string&)>> xi;
  bool strong = false;
};

template <Field K>
ExtensionDescriptor<K> extension_from_json(const nlohmann::json& j)
{
  using V = FreeVec<K, std::string>;
  using EKey = ExtKey<std::string, std::string>;
  ExtensionDescriptor<K> out;
  auto& d = out.data;
  d.L = algebra_from_json<K>(j.at("L"));
  d.a = j.contains("a") ? algebra_from_json<K>(j.at("a")) : abelian_algebra<K, std::string>("k", {"c"});
  std::map<std::string, int> L_keys;
  std::map<std::string, int> a_keys;
  for (const auto& x : d.L.basis) {
    L_keys[x] = 0;
  }
  for (const auto& c : d.a.basis) {
    a_keys[c] = 0;
  }
  auto g = std::make_shared<std::map<std::pair<std::string, std::string>, V>>();
  if (j.contains("g")) {
    for (const auto& [key, value] : j.at("g").items()) {
      auto [x, y] = detail::parse_pair_key(key);
      if (!L_keys.count(x) || !L_keys.count(y)) {
        throw std::invalid_argument("g " + key + " uses an unknown element of L");
      }
      (*g)[{x, y}] = detail::vec_from_json<K>(value, a_keys);
    }
  }
  d.g = [g](const std::string& x, const std::string& y) {
    auto it = g->find({x, y});
    return it == g->end() ? V{} : it->second;
  };
  auto read_map = [&](const char* field, typename QhlAlgebra<K, std::string>::MapFn on_a) {
    auto on_L = std::make_shared<std::map<std::string, V>>();
    auto on_c = std::make_shared<std::map<std::string, V>>();
    if (j.contains(field)) {
      const auto& m = j.at(field);
      for (const auto& [part, table, known] :
           {std::tuple{"L", on_L, &L_keys}, std::tuple{"a", on_c, &a_keys}}) {
        if (!m.contains(part)) {
          continue;
        }
        for (const auto& [key, value] : m.at(part).items()) {
          if (!known->count(key)) {
            throw std::invalid_argument(std::string(field) + " given on unknown element '" + key + "'");
          }
          (*table)[key] = detail::vec_from_json<K>(value, a_keys);
        }
      }
    }
    return std::function<V(const EKey&)>([on_L, on_c, on_a](const EKey& e) {
      if (e.central) {
        auto it = on_c->find(e.a);
        return it == on_c->end() ? on_a(e.a) : it->second;
      }
      auto it = on_L->find(e.l);
      return it == on_L->end() ? V{} : it->second;
    });
  };
  d.f = read_map("f", d.a.alpha_on_basis);
  d.h = read_map("h", d.a.beta_on_basis);
  d.L_window = d.L.basis;
  d.a_window = d.a.basis;
  if (j.contains("xi")) {
    auto xi = std::make_shared<std::map<std::string, V>>();
    for (const auto& [key, value] : j.at("xi").items()) {
      if (!L_keys.count(key)) {
        throw std::invalid_argument("xi given on unknown element '" + key + "'");
      }
      (*xi)[key] = detail::vec_from_json<K>(value, a_keys);
    }
    out.xi = [xi](const std::string& x) {
      auto it = xi->find(x);
      return it == xi->end() ? V{} : it->second;
    };
  }
  out.strong = j.value("strong", false);
  return out;
}

/// Descriptor labels for E = L + a: L keep their labels, a labels are primed until
/// they no longer clash with L.
inline std::function<std::string(const ExtKey<std::string, std::string>&)> extension_labels(const std::vector<std::string>& L_basis,
                                                                                          const std::vector<std::string>& a_basis)
{
  std::set<std::string> used(L_basis.begin(), L_basis.end());
  auto names = std::make_shared<std::map<std::string, std::string>>();
  for (const auto& c : a_basis) {
    std::string n = c;
    while (used.count(n)) {
      n += "'";
    }
    used.insert(n);
    (*names)[c] = n;
  }
  return [names](const ExtKey<std::string, std::string>& e) { return e.central ? names->at(e.a) : e.l; };
}

} // namespace qhl
