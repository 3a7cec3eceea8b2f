#include "qhl/central_ext.hpp"
#include "qhl/descriptor.hpp"
#include "qhl/fixtures.hpp"
#include "qhl/loop.hpp"
#include "qhl/witt.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

using namespace qhl;
using nlohmann::json;

namespace {

/// Exit code 2: bad flags, bad input files, unsupported parameters.
class UsageError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct Window
{
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

Window parse_window(const std::string& text)
{
  static const std::regex re(R"(\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) {
    throw UsageError("window '" + text + "' must look like a..b");
  }
  Window w{std::stoll(m[1]), std::stoll(m[2])};
  if (w.lo > w.hi) {
    throw UsageError("window '" + text + "' is empty");
  }
  return w;
}

struct Config
{
  std::string command;
  std::string suite;
  std::optional<std::int64_t> s;
  std::int64_t k = 0;
  std::string eta = "1";
  std::string q = "formal";
  std::optional<std::string> window;
  std::optional<std::string> triples;
  int mutate = 0;
  std::uint64_t seed = 1;
  std::string base;
  std::string B = "killing";
  std::string S = "1,0;0,1";
  std::string G = "0,0";
  std::string Q = "1";
  bool as_printed = false;
  std::string format = "json";
  std::string output;
  std::string input;
  bool no_timing = false;

  Window window_or(std::int64_t lo, std::int64_t hi) const { return window ? parse_window(*window) : Window{lo, hi}; }
  Window triples_or(std::int64_t lo, std::int64_t hi) const { return triples ? parse_window(*triples) : Window{lo, hi}; }
};

json read_json_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in) {
    throw UsageError("cannot read '" + path + "'");
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

bool mentions_eta(const std::string& text) { return std::regex_search(text, std::regex(R"(\beta\b)")); }

/// Calls fn(K{}, q) with K the smallest field holding the requested q and eta.
template <class Fn>
int with_field(const Config& c, Fn&& fn)
{
  bool formal_q = c.q == "formal";
  bool formal_eta = mentions_eta(c.eta);
  if (formal_q) {
    if (formal_eta) {
      return fn(Fqeta{}, Fqeta(Fq::variable()));
    }
    return fn(Fq{}, Fq::variable());
  }
  Rational q = parse_field<Rational>(c.q);
  if (q.is_zero()) {
    throw UsageError("q must be nonzero");
  }
  if (formal_eta) {
    return fn(Feta{}, Feta(q));
  }
  return fn(Rational{}, q);
}

// ---------------------------------------------------------------- output

std::string csv_field(const std::string& s)
{
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string r = "\"";
  for (char ch : s) {
    r += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  }
  return r + "\"";
}

json report_json(const Report& rep, bool timing)
{
  json j = rep.to_json();
  if (!timing) {
    j.erase("elapsed_ms");
  }
  return j;
}

std::string report_csv(const Report& rep)
{
  std::ostringstream out;
  out << "# suite=" << rep.suite << " checked=" << rep.checked << " failures=" << rep.failures.size() << "\n";
  out << "indices,lhs,rhs,note\n";
  for (const auto& f : rep.failures) {
    out << csv_field(f.indices.dump()) << "," << csv_field(f.lhs) << "," << csv_field(f.rhs) << "," << csv_field(f.note)
        << "\n";
  }
  return out.str();
}

std::string report_pretty(const Report& rep, bool timing)
{
  std::ostringstream out;
  out << rep.suite << ": " << (rep.passed() ? "PASS" : "FAIL") << ", " << rep.checked << " checked, " << rep.failures.size()
      << " failures";
  if (timing) {
    out << " (" << rep.elapsed_ms << " ms)";
  }
  out << "\n  params: " << rep.params.dump() << "\n  window: " << rep.window.dump() << "\n";
  for (const auto& n : rep.notes) {
    out << "  note: " << n << "\n";
  }
  for (const auto& f : rep.failures) {
    out << "  " << f.indices.dump() << ": " << f.lhs << " != " << f.rhs;
    if (!f.note.empty()) {
      out << "  [" << f.note << "]";
    }
    out << "\n";
  }
  return out.str();
}

void emit(const Config& c, const std::string& text)
{
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output);
  if (!out) {
    throw UsageError("cannot write '" + c.output + "'");
  }
  out << text;
}

int emit_report(const Config& c, const Report& rep)
{
  if (c.format == "csv") {
    emit(c, report_csv(rep));
  } else if (c.format == "pretty") {
    emit(c, report_pretty(rep, !c.no_timing));
  } else {
    emit(c, report_json(rep, !c.no_timing).dump(2) + "\n");
  }
  return rep.passed() ? 0 : 1;
}

/// One report out of several; each failure is tagged with the suite it came from.
Report combine(const std::string& suite, json params, json window, const std::vector<Report>& parts)
{
  Report rep;
  rep.suite = suite;
  rep.params = std::move(params);
  rep.window = std::move(window);
  for (const auto& p : parts) {
    Report tagged = p;
    for (auto& f : tagged.failures) {
      f.note = f.note.empty() ? p.suite : p.suite + ": " + f.note;
    }
    rep.notes.push_back(p.suite + ": " + std::to_string(p.checked) + " checked, " + std::to_string(p.failures.size()) +
                        " failures");
    rep.merge(tagged);
    rep.elapsed_ms += p.elapsed_ms;
  }
  return rep;
}

// ---------------------------------------------------------------- algebras

template <Field K>
Witt<K> linear_witt(const Config& c, const K& q, std::int64_t default_s)
{
  std::int64_t s = c.s.value_or(default_s);
  return Witt<K>(SigmaDerivation<K>(SigmaEndo<K>(q, s), parse_field<K>(c.eta), c.k));
}

template <Field K>
QhlAlgebra<K, std::string> named_algebra(const std::string& name)
{
  if (name == "sl2") {
    return fixtures::sl2<K>();
  }
  if (name == "gl11") {
    return fixtures::gl11<K>();
  }
  if (name == "color-gl3") {
    return fixtures::color_gl3<K>();
  }
  throw UsageError("unknown base '" + name + "' (sl2, gl11, color-gl3, or --input descriptor)");
}

template <Field K>
QhlAlgebra<K, std::string> string_algebra(const Config& c)
{
  if (!c.input.empty()) {
    return algebra_from_json<K>(read_json_file(c.input));
  }
  return named_algebra<K>(c.base.empty() ? "sl2" : c.base);
}

/// Adds `count` random single-constant mutations on the basis list.
template <Field K, class Key>
QhlAlgebra<K, Key> mutate_randomly(QhlAlgebra<K, Key> A, int count, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, A.basis.size() - 1);
  for (int i = 0; i < count; ++i) {
    Key x = A.basis[pick(rng)];
    Key y = A.basis[pick(rng)];
    Key z = A.basis[pick(rng)];
    A = mutate(A, x, y, z);
  }
  return A;
}

inline std::int64_t add_exp(std::int64_t a, std::int64_t b) { return a + b; }

inline ExpVec add_exp(const ExpVec& a, const ExpVec& b)
{
  ExpVec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] += b[i];
  }
  return r;
}

/// Adds `count` random mutations <d_n, d_m> += d_{n+m} with n, m in idx.
template <class W>
std::vector<std::string> add_witt_mutations(W& w, const std::vector<typename W::Exp>& idx, int count, std::uint64_t seed)
{
  std::vector<std::string> notes;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, idx.size() - 1);
  for (int i = 0; i < count; ++i) {
    auto n = idx[pick(rng)];
    auto m = idx[pick(rng)];
    auto target = add_exp(n, m);
    w.add_mutation({n, m, target, typename W::K(1)});
    notes.push_back("mutated: <d_" + key_string(n) + ", d_" + key_string(m) + "> += d_" + key_string(target));
  }
  return notes;
}

// ---------------------------------------------------------------- commands

int cmd_table(const Config& c)
{
  return with_field(c, [&]<class K>(K, const K& q) {
    auto W = linear_witt<K>(c, q, 1);
    (void)W.delta();
    Window w = c.window_or(-3, 3);
    auto rows = structure_constants(W, w.lo, w.hi);
    if (c.format == "csv") {
      std::string out = "n,m,bracket\n";
      for (const auto& [n, m, v] : rows) {
        out += std::to_string(n) + "," + std::to_string(m) + "," + csv_field(v.to_string()) + "\n";
      }
      emit(c, out);
    } else if (c.format == "pretty") {
      std::ostringstream out;
      out << "<d_n, d_m> for " << W.params().dump() << "\n";
      for (const auto& [n, m, v] : rows) {
        out << std::setw(4) << n << std::setw(4) << m << "  " << v.to_string() << "\n";
      }
      emit(c, out.str());
    } else {
      json j = {{"command", "table"}, {"params", W.params()}, {"window", {w.lo, w.hi}}, {"rows", json::array()}};
      for (const auto& [n, m, v] : rows) {
        j["rows"].push_back({{"n", n}, {"m", m}, {"bracket", v.to_string()}});
      }
      emit(c, j.dump(2) + "\n");
    }
    return 0;
  });
}

int verify_thm3(const Config& c)
{
  return with_field(c, [&]<class K>(K, const K& q) {
    auto W = linear_witt<K>(c, q, 1);
    Window w = c.window_or(-6, 6);
    Window t = c.triples_or(-4, 4);
    auto notes = add_witt_mutations(W, detail::window_indices(w.lo, w.hi, std::int64_t{}), c.mutate, c.seed);
    auto rep = verify_theorem3(W, w.lo, w.hi, t.lo, t.hi);
    rep.notes.insert(rep.notes.end(), notes.begin(), notes.end());
    return emit_report(c, rep);
  });
}

int verify_thm4(const Config& c)
{
  return with_field(c, [&]<class K>(K, const K& q) {
    auto W = linear_witt<K>(c, q, 2);
    Window w = c.window_or(-4, 4);
    Window t = c.triples_or(-3, 3);
    auto notes = add_witt_mutations(W, detail::window_indices(w.lo, w.hi, std::int64_t{}), c.mutate, c.seed);
    auto rep = verify_theorem4(W, w.lo, w.hi, t.lo, t.hi, c.as_printed ? MixedCaseSign::as_printed : MixedCaseSign::corrected);
    rep.notes.insert(rep.notes.end(), notes.begin(), notes.end());
    return emit_report(c, rep);
  });
}

std::vector<std::int64_t> parse_ints(const std::string& text)
{
  std::vector<std::int64_t> r;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      r.push_back(std::stoll(item, &used));
      if (item.find_first_not_of(" ", used) != std::string::npos) {
        throw std::invalid_argument(item);
      }
    } catch (const std::exception&) {
      throw UsageError("'" + text + "' is not a comma-separated list of integers");
    }
  }
  return r;
}

int verify_thm5(const Config& c)
{
  std::vector<std::vector<std::int64_t>> S;
  std::stringstream ss(c.S);
  std::string row;
  while (std::getline(ss, row, ';')) {
    S.push_back(parse_ints(row));
  }
  ExpVec G = parse_ints(c.G);
  if (S.size() != 2 || G.size() != 2) {
    throw UsageError("thm5 runs with two variables: --S needs two rows and --G two entries");
  }
  Fq1q2 q1 = Fq1q2(Fq1::variable());
  Fq1q2 q2 = Fq1q2::variable();
  MultiWitt<Fq1q2> W(MultiSigmaDerivation<Fq1q2>(MultiSigmaEndo<Fq1q2>({q1, q2}, S), parse_field<Fq1q2>(c.Q), G));
  Window w = c.window_or(-2, 2);
  auto notes = add_witt_mutations(W, detail::window_indices(w.lo, w.hi, ExpVec(2, 0)), c.mutate, c.seed);
  auto rep = verify_theorem5(W, w.lo, w.hi);
  rep.notes.insert(rep.notes.end(), notes.begin(), notes.end());
  return emit_report(c, rep);
}

std::vector<std::int64_t> int_range(Window w)
{
  std::vector<std::int64_t> r;
  for (auto i = w.lo; i <= w.hi; ++i) {
    r.push_back(i);
  }
  return r;
}

int verify_axioms(const Config& c)
{
  return with_field(c, [&]<class K>(K, const K& q) {
    Report rep;
    if (c.base == "qwitt") {
      auto A = as_qhl(linear_witt<K>(c, q, 1), int_range(c.window_or(-4, 4)));
      rep = check_qhl_axioms(mutate_randomly(A, c.mutate, c.seed));
    } else {
      rep = check_qhl_axioms(mutate_randomly(string_algebra<K>(c), c.mutate, c.seed));
    }
    if (c.mutate > 0) {
      rep.notes.push_back(std::to_string(c.mutate) + " random single-constant mutations, seed " + std::to_string(c.seed));
    }
    return emit_report(c, rep);
  });
}

int verify_loop(const Config& c)
{
  return with_field(c, [&]<class K>(K, const K& q) {
    Window w = c.window_or(-3, 3);
    Report rep;
    if (c.base == "qwitt") {
      rep = check_qhl_axioms(build_loop(as_qhl(linear_witt<K>(c, q, 1), int_range(c.triples_or(-2, 2))), w.lo, w.hi));
    } else {
      rep = check_qhl_axioms(build_loop(string_algebra<K>(c), w.lo, w.hi));
    }
    rep.suite = "loop";
    return emit_report(c, rep);
  });
}

// ---------------------------------------------------------------- extensions

template <Field K>
ExtensionDescriptor<K> extension_input(const Config& c)
{
  if (!c.input.empty()) {
    return extension_from_json<K>(read_json_file(c.input));
  }
  ExtensionDescriptor<K> d;
  if (c.base.empty() || c.base == "heisenberg") {
    d.data = heisenberg_data<K>();
  } else if (c.base == "trivial") {
    d.data.L = fixtures::sl2<K>();
    d.data.a = abelian_algebra<K, std::string>("k", {"c"});
    d.data.g = [](const std::string&, const std::string&) { return FreeVec<K, std::string>{}; };
    d.data.f = projection_onto<K, std::string, std::string>(d.data.a.alpha_on_basis);
    d.data.h = projection_onto<K, std::string, std::string>(d.data.a.beta_on_basis);
    d.data.L_window = d.data.L.basis;
    d.data.a_window = d.data.a.basis;
  } else {
    throw UsageError("unknown extension base '" + c.base + "' (heisenberg, trivial, or --input descriptor)");
  }
  return d;
}

/// Data check, construction and the checks on E; nullopt E when the data fails.
template <Field K>
std::pair<Report, std::optional<BuiltExtension<K, std::string, std::string>>> run_extension(const ExtensionDescriptor<K>& in)
{
  const auto& d = in.data;
  json params = {{"L", d.L.name}, {"a", d.a.name}};
  json window = detail::ext_window_json(d.L_window, d.a_window);
  auto data = check_data_abc(d);
  if (!data.passed()) {
    return {combine("extension", params, window, {data}), std::nullopt};
  }
  auto P = build_extension(d, false);
  std::vector<Report> parts = {data, check_qhl_axioms(P.E), check_extension_structure(P), check_necessary_conditions(P)};
  if (in.xi) {
    auto d2 = d;
    d2.g = transform_cocycle<K, std::string, std::string>(d.L, d.g, *in.xi);
    auto Q = build_extension(d2, false);
    parts.push_back(check_equivalence(P, Q, *in.xi, in.strong ? EquivalenceMode::strong : EquivalenceMode::weak));
  }
  return {combine("extension", params, window, parts), P};
}

int verify_extension(const Config& c)
{
  return with_field(c, [&]<class K>(K, const K&) { return emit_report(c, run_extension(extension_input<K>(c)).first); });
}

int cmd_extend(const Config& c)
{
  return with_field(c, [&]<class K>(K, const K&) {
    auto in = extension_input<K>(c);
    auto [rep, P] = run_extension(in);
    if (!P) {
      const auto& f = rep.failures.front();
      std::cerr << "qhl: extension data fails " << f.indices.dump() << ": " << f.lhs << " != " << f.rhs << "\n";
      return emit_report(c, rep);
    }
    if (c.format != "json") {
      return emit_report(c, rep);
    }
    json j = {{"E", algebra_to_json(P->E, extension_labels(in.data.L.basis, in.data.a.basis))},
              {"report", report_json(rep, !c.no_timing)}};
    emit(c, j.dump(2) + "\n");
    return rep.passed() ? 0 : 1;
  });
}

// ---------------------------------------------------------------- loop cocycle

/// Fills unset loop options from a JSON config
/// {"base", "B", "eta", "k", "q", "window"}; flags given on the command line win.
Config with_loop_config(Config c, const CLI::App& app)
{
  if (c.input.empty()) {
    return c;
  }
  json j = read_json_file(c.input);
  if (!j.contains("base")) {
    return c;
  }
  auto unset = [&](const char* flag) { return app.count(flag) == 0; };
  c.input.clear();
  const auto& base = j.at("base");
  if (unset("--base")) {
    if (base.is_object()) {
      c.base = "inline:" + base.dump();
    } else {
      c.base = base.get<std::string>();
    }
  }
  if (j.contains("B") && unset("--B")) {
    c.B = j["B"].is_string() ? j["B"].get<std::string>() : "inline:" + j["B"].dump();
  }
  if (j.contains("eta") && unset("--eta")) {
    c.eta = j["eta"].is_string() ? j["eta"].get<std::string>() : j["eta"].dump();
  }
  if (j.contains("k") && unset("--k")) {
    c.k = j["k"].get<std::int64_t>();
  }
  if (j.contains("q") && unset("--q")) {
    c.q = j["q"].is_string() ? j["q"].get<std::string>() : j["q"].dump();
  }
  if (j.contains("window") && unset("--window")) {
    const auto& w = j["window"];
    c.window = w.is_string() ? w.get<std::string>() : std::to_string(w.at("lo").get<std::int64_t>()) + ".." +
                                                          std::to_string(w.at("hi").get<std::int64_t>());
  }
  return c;
}

template <Field K>
QhlAlgebra<K, std::string> loop_base(const Config& c)
{
  const std::string inline_tag = "inline:";
  if (c.base.starts_with(inline_tag)) {
    return algebra_from_json<K>(json::parse(c.base.substr(inline_tag.size())));
  }
  if (c.base.ends_with(".json")) {
    return algebra_from_json<K>(read_json_file(c.base));
  }
  return string_algebra<K>(c);
}

template <Field K>
BilinearForm<K, std::string> loop_form(const Config& c, const QhlAlgebra<K, std::string>& base)
{
  if (c.B == "killing") {
    return killing_form(base);
  }
  const std::string inline_tag = "inline:";
  json j = c.B.starts_with(inline_tag) ? json::parse(c.B.substr(inline_tag.size())) : read_json_file(c.B);
  auto table = std::make_shared<std::map<std::pair<std::string, std::string>, K>>();
  for (const auto& [key, value] : j.items()) {
    (*table)[detail::parse_pair_key(key)] = coefficient_from_json<K>(value);
  }
  return [table](const std::string& x, const std::string& y) {
    auto it = table->find({x, y});
    return it == table->end() ? K(0) : it->second;
  };
}

int run_loop_cocycle(const Config& c)
{
  return with_field(c, [&]<class K>(K, const K& q) {
    auto base = loop_base<K>(c);
    Window w = c.window_or(-3, 3);
    LoopCocycle<K, std::string> cocycle{loop_form<K>(c, base), parse_field<K>(c.eta), c.k, q};
    auto C = build_central_loop(base, w.lo, w.hi, cocycle);
    return emit_report(c, check_loop_cocycle(C, w.lo, w.hi));
  });
}

int cmd_verify(const Config& c)
{
  if (c.suite == "thm3") {
    return verify_thm3(c);
  }
  if (c.suite == "thm4") {
    return verify_thm4(c);
  }
  if (c.suite == "thm5") {
    return verify_thm5(c);
  }
  if (c.suite == "qhl-axioms") {
    return verify_axioms(c);
  }
  if (c.suite == "extension") {
    return verify_extension(c);
  }
  if (c.suite == "loop") {
    return verify_loop(c);
  }
  if (c.suite == "loop-cocycle") {
    return run_loop_cocycle(c);
  }
  throw UsageError("unknown suite '" + c.suite + "' (thm3, thm4, thm5, qhl-axioms, extension, loop, loop-cocycle)");
}

void add_common(CLI::App* sub, Config& c)
{
  sub->add_option("--s", c.s, "exponent s in sigma(t) = q t^s");
  sub->add_option("--k", c.k, "shift k in D = eta t^-k (...)");
  sub->add_option("--eta", c.eta, "eta, an expression in q and eta");
  sub->add_option("--q", c.q, "formal, or a nonzero rational value");
  sub->add_option("--window", c.window, "index window a..b");
  sub->add_option("--triples", c.triples, "triple window a..b (thm3, thm4) or q-Witt base window (loop)");
  sub->add_option("--mutate", c.mutate, "number of random single-constant mutations");
  sub->add_option("--seed", c.seed, "seed for --mutate");
  sub->add_option("--base", c.base, "built-in algebra");
  sub->add_option("--B", c.B, "killing, or a JSON table {\"(x,y)\": coeff}");
  sub->add_option("--S", c.S, "thm5 exponent matrix, rows separated by ';'");
  sub->add_option("--G", c.G, "thm5 shift vector");
  sub->add_option("--Q", c.Q, "thm5 scalar Q");
  sub->add_flag("--as-printed", c.as_printed, "thm4: use the mixed case as printed");
  sub->add_option("--format", c.format, "json, csv or pretty")->check(CLI::IsMember({"json", "csv", "pretty"}));
  sub->add_option("--output", c.output, "write here instead of stdout");
  sub->add_option("--input", c.input, "JSON descriptor or config");
  sub->add_flag("--no-timing", c.no_timing, "omit elapsed_ms");
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"qhl: quasi-hom-Lie algebra verification"};
  app.require_subcommand(1);
  Config c;
  auto* table = app.add_subcommand("table", "structure constants <d_n, d_m> of the deformed Witt algebra");
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", c.suite, "thm3, thm4, thm5, qhl-axioms, extension, loop, loop-cocycle")->required();
  auto* extend = app.add_subcommand("extend", "build E = L + a from extension data");
  auto* loop = app.add_subcommand("loop", "residuals of the central loop extension cocycle");
  for (auto* sub : {table, verify, extend, loop}) {
    add_common(sub, c);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (*table) {
      return cmd_table(c);
    }
    if (*verify) {
      return cmd_verify(c);
    }
    if (*extend) {
      return cmd_extend(c);
    }
    return run_loop_cocycle(with_loop_config(c, *loop));
  } catch (const UnsupportedParameter& e) {
    std::cerr << "qhl: " << e.what() << "\n";
  } catch (const UsageError& e) {
    std::cerr << "qhl: " << e.what() << "\n";
  } catch (const ExtensionError& e) {
    std::cerr << "qhl: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "qhl: " << e.what() << "\n";
  }
  return 2;
}
