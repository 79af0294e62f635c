#include "infkit/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace infkit {

// ---------------------------------------------------------------------------
// Files and text

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("$", std::string("invalid JSON: ") + e.what());
  }
}

Json load_json(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ParseError("$", "cannot read " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_json_text(ss.str());
  } catch (const ParseError& e) {
    throw ParseError("$", file.string() + ": " + e.what());
  }
}

std::string canonical_text(const Json& j) { return j.dump(2) + "\n"; }

void write_text(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw InfkitError("cannot write " + file.string());
  out << text;
}

// ---------------------------------------------------------------------------
// Shape helpers

namespace {

std::string at(const std::string& path, const std::string& key) { return path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void require_object(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
}

void allow_keys(const Json& j, std::initializer_list<const char*> keys, const std::string& path) {
  require_object(j, path);
  for (const auto& [k, v] : j.items())
    if (std::none_of(keys.begin(), keys.end(), [&](const char* x) { return k == x; }))
      throw ParseError(path, "unexpected key '" + k + "'");
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  require_object(j, path);
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path, std::string("missing key '") + key + "'");
  return *it;
}

const Json* optional_field(const Json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array");
  return j;
}

std::string str(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path, "expected a string");
  return j.get<std::string>();
}

std::vector<std::string> str_list(const Json& j, const std::string& path) {
  std::vector<std::string> out;
  array(j, path);
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(str(j[i], at(path, i)));
  return out;
}

std::size_t index_value(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

template <class Fn>
auto guarded(const std::string& path, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ParseError&) {
    throw;
  } catch (const InfkitError& e) {
    throw ParseError(path, e.what());
  }
}

std::string describe(const Signature& sig) {
  std::string s;
  for (const auto& r : sig.relations()) s += (s.empty() ? "" : ", ") + r.name + "/" + std::to_string(r.arity);
  for (const auto& c : sig.constants()) s += (s.empty() ? "" : ", ") + c;
  return "signature declares {" + s + "}";
}

}  // namespace

// ---------------------------------------------------------------------------
// Terms and formulas

Term parse_term(const Json& j, const std::string& path) {
  require_object(j, path);
  if (j.size() != 1) throw ParseError(path, "term must have exactly one key, 'var' or 'const'");
  if (j.contains("var")) return Term::var(str(j["var"], at(path, "var")));
  if (j.contains("const")) return Term::constant(str(j["const"], at(path, "const")));
  throw ParseError(path, "term must have exactly one key, 'var' or 'const'");
}

Json emit_term(const Term& t) { return t.is_var() ? Json{{"var", t.name}} : Json{{"const", t.name}}; }

namespace {

struct FormulaReader {
  const Signature* sig;
  const std::set<std::string>& extra;

  Term term(const Json& j, const std::string& path) const {
    Term t = parse_term(j, path);
    if (sig && t.is_const() && !sig->has_constant(t.name) && !extra.contains(t.name))
      throw ParseError(path, "unknown constant '" + t.name + "' (" + describe(*sig) + ")");
    return t;
  }

  std::vector<Formula> list(const Json& j, const std::string& path) const {
    array(j, path);
    std::vector<Formula> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read(j[i], at(path, i)));
    return out;
  }

  Formula read(const Json& j, const std::string& path) const {
    require_object(j, path);
    if (j.size() != 1) throw ParseError(path, "formula must have exactly one connective key");
    const auto& [key, v] = *j.items().begin();
    const std::string p = at(path, key);
    if (key == "atom") {
      allow_keys(v, {"rel", "args"}, p);
      std::string rel = str(field(v, "rel", p), at(p, "rel"));
      const Json& args = array(field(v, "args", p), at(p, "args"));
      std::vector<Term> ts;
      for (std::size_t i = 0; i < args.size(); ++i) ts.push_back(term(args[i], at(at(p, "args"), i)));
      if (sig) {
        auto ar = sig->arity(rel);
        if (!ar) throw ParseError(at(p, "rel"), "unknown relation '" + rel + "' (" + describe(*sig) + ")");
        if (static_cast<std::size_t>(*ar) != ts.size())
          throw ParseError(at(p, "args"), "relation '" + rel + "' has arity " + std::to_string(*ar) + ", got " +
                                              std::to_string(ts.size()) + " argument(s)");
      }
      return guarded(path, [&] { return Formula::atom(rel, ts); });
    }
    if (key == "eq") {
      array(v, p);
      if (v.size() != 2) throw ParseError(p, "equality needs exactly two terms");
      return Formula::eq(term(v[0], at(p, 0)), term(v[1], at(p, 1)));
    }
    if (key == "not") return Formula::negation(read(v, p));
    if (key == "and") return Formula::conj(list(v, p));
    if (key == "or") return Formula::disj(list(v, p));
    if (key == "forall" || key == "exists") {
      allow_keys(v, {"vars", "body"}, p);
      auto vars = str_list(field(v, "vars", p), at(p, "vars"));
      Formula body = read(field(v, "body", p), at(p, "body"));
      return guarded(path, [&] { return key == "forall" ? Formula::forall(vars, body) : Formula::exists(vars, body); });
    }
    throw ParseError(path, "unknown connective '" + key + "'");
  }
};

}  // namespace

Formula parse_formula(const Json& j, const std::string& path, const Signature* sig,
                      const std::set<std::string>& extra_constants) {
  return FormulaReader{sig, extra_constants}.read(j, path);
}

std::vector<Formula> parse_formula_list(const Json& j, const std::string& path, const Signature* sig,
                                        const std::set<std::string>& extra_constants) {
  return FormulaReader{sig, extra_constants}.list(j, path);
}

Json emit_formula(const Formula& f) {
  auto terms = [&] {
    Json a = Json::array();
    for (const auto& t : f.terms()) a.push_back(emit_term(t));
    return a;
  };
  auto kids = [&] {
    Json a = Json::array();
    for (const auto& c : f.children()) a.push_back(emit_formula(c));
    return a;
  };
  auto quant = [&] {
    return Json{{"vars", std::vector<std::string>(f.bound_vars().begin(), f.bound_vars().end())},
                {"body", emit_formula(f.body())}};
  };
  switch (f.kind()) {
    case Connective::Atom:
      return {{"atom", {{"rel", f.relation()}, {"args", terms()}}}};
    case Connective::Eq:
      return {{"eq", terms()}};
    case Connective::Not:
      return {{"not", emit_formula(f.body())}};
    case Connective::And:
      return {{"and", kids()}};
    case Connective::Or:
      return {{"or", kids()}};
    case Connective::Forall:
      return {{"forall", quant()}};
    case Connective::Exists:
      return {{"exists", quant()}};
  }
  return nullptr;
}

Json emit_formula_list(const std::vector<Formula>& fs) {
  Json a = Json::array();
  for (const auto& f : fs) a.push_back(emit_formula(f));
  return a;
}

// ---------------------------------------------------------------------------
// Signatures, posets, algebras

Signature parse_signature(const Json& j, const std::string& path) {
  allow_keys(j, {"relations", "constants"}, path);
  std::vector<RelationSymbol> rels;
  if (const Json* r = optional_field(j, "relations")) {
    const std::string rp = at(path, "relations");
    array(*r, rp);
    for (std::size_t i = 0; i < r->size(); ++i) {
      const std::string ep = at(rp, i);
      allow_keys((*r)[i], {"name", "arity"}, ep);
      std::string name = str(field((*r)[i], "name", ep), at(ep, "name"));
      const Json& ar = field((*r)[i], "arity", ep);
      if (!ar.is_number_integer() || ar.get<long long>() < 1)
        throw ParseError(at(ep, "arity"), "arity of '" + name + "' must be an integer >= 1");
      rels.push_back({name, ar.get<int>()});
    }
  }
  std::vector<std::string> consts;
  if (const Json* c = optional_field(j, "constants")) consts = str_list(*c, at(path, "constants"));
  return guarded(path, [&] { return Signature(rels, consts); });
}

Json emit_signature(const Signature& s) {
  Json rels = Json::array();
  for (const auto& r : s.relations()) rels.push_back({{"name", r.name}, {"arity", r.arity}});
  return {{"relations", rels}, {"constants", s.constants()}};
}

FinPoset parse_poset(const Json& j, const std::string& path) {
  allow_keys(j, {"elements", "leq"}, path);
  auto els = str_list(field(j, "elements", path), at(path, "elements"));
  std::vector<std::pair<std::string, std::string>> leq;
  if (const Json* l = optional_field(j, "leq")) {
    const std::string lp = at(path, "leq");
    array(*l, lp);
    for (std::size_t i = 0; i < l->size(); ++i) {
      auto pair = str_list((*l)[i], at(lp, i));
      if (pair.size() != 2) throw ParseError(at(lp, i), "expected a pair [lower, upper]");
      leq.emplace_back(pair[0], pair[1]);
    }
  }
  return guarded(path, [&] { return FinPoset(els, leq); });
}

Json emit_poset(const FinPoset& p) {
  Json leq = Json::array();
  for (const auto& [q, r] : p.strict_pairs()) leq.push_back({q, r});
  return {{"elements", p.names()}, {"leq", leq}};
}

FinBooleanAlgebra parse_algebra(const Json& j, const std::string& path) {
  std::string type = str(field(j, "type", path), at(path, "type"));
  if (type == "powerset") {
    allow_keys(j, {"type", "atoms"}, path);
    auto atoms = str_list(field(j, "atoms", path), at(path, "atoms"));
    return guarded(path, [&] { return FinBooleanAlgebra::powerset(atoms); });
  }
  if (type == "ro") {
    allow_keys(j, {"type", "poset"}, path);
    auto p = std::make_shared<const FinPoset>(parse_poset(field(j, "poset", path), at(path, "poset")));
    return guarded(path, [&] { return FinBooleanAlgebra::regular_open(p); });
  }
  if (type == "table") {
    allow_keys(j, {"type", "elements", "meet", "join", "comp"}, path);
    AlgebraTable t;
    t.names = str_list(field(j, "elements", path), at(path, "elements"));
    const std::size_t n = t.names.size();
    auto idx = [&](const Json& v, const std::string& p) {
      std::string s = str(v, p);
      auto it = std::find(t.names.begin(), t.names.end(), s);
      if (it == t.names.end()) throw ParseError(p, "unknown element '" + s + "'");
      return static_cast<int>(it - t.names.begin());
    };
    auto square = [&](const char* key) {
      const std::string p = at(path, key);
      const Json& rows = array(field(j, key, path), p);
      if (rows.size() != n) throw ParseError(p, "expected " + std::to_string(n) + " rows");
      std::vector<std::vector<int>> out(n);
      for (std::size_t i = 0; i < n; ++i) {
        const Json& row = array(rows[i], at(p, i));
        if (row.size() != n) throw ParseError(at(p, i), "expected " + std::to_string(n) + " entries");
        for (std::size_t k = 0; k < n; ++k) out[i].push_back(idx(row[k], at(at(p, i), k)));
      }
      return out;
    };
    t.meet = square("meet");
    t.join = square("join");
    const std::string cp = at(path, "comp");
    const Json& comp = array(field(j, "comp", path), cp);
    if (comp.size() != n) throw ParseError(cp, "expected " + std::to_string(n) + " entries");
    for (std::size_t i = 0; i < n; ++i) t.comp.push_back(idx(comp[i], at(cp, i)));
    return guarded(path, [&] { return FinBooleanAlgebra::from_table(t); });
  }
  throw ParseError(at(path, "type"), "unknown algebra type '" + type + "' (expected powerset, ro or table)");
}

Json emit_algebra(const FinBooleanAlgebra& b) {
  switch (b.kind()) {
    case AlgebraKind::Powerset:
      return {{"type", "powerset"}, {"atoms", b.atom_names()}};
    case AlgebraKind::RegularOpen:
      return {{"type", "ro"}, {"poset", emit_poset(*b.poset())}};
    case AlgebraKind::Table: {
      const auto& names = b.table_names();
      const auto& els = b.table_elements();
      auto name_of = [&](Element e) { return names[std::find(els.begin(), els.end(), e) - els.begin()]; };
      Json meet = Json::array(), join = Json::array(), comp = Json::array();
      for (auto x : els) {
        Json mr = Json::array(), jr = Json::array();
        for (auto y : els) {
          mr.push_back(name_of(b.meet(x, y)));
          jr.push_back(name_of(b.join(x, y)));
        }
        meet.push_back(mr);
        join.push_back(jr);
        comp.push_back(name_of(b.complement(x)));
      }
      return {{"type", "table"}, {"elements", names}, {"meet", meet}, {"join", join}, {"comp", comp}};
    }
  }
  return nullptr;
}

Element parse_element(const FinBooleanAlgebra& b, const Json& j, const std::string& path) {
  std::vector<std::string> names;
  if (j.is_string())
    names = {j.get<std::string>()};
  else
    names = str_list(j, path);
  return guarded(path, [&] { return b.parse_literal(names); });
}

Json emit_element(const FinBooleanAlgebra& b, Element e) { return b.literal(e); }

// ---------------------------------------------------------------------------
// Models

BValuedModel parse_model(const Json& j, const std::string& path) {
  allow_keys(j, {"signature", "algebra", "domain", "eq", "relations", "constants"}, path);
  Signature sig = parse_signature(field(j, "signature", path), at(path, "signature"));
  FinBooleanAlgebra alg = parse_algebra(field(j, "algebra", path), at(path, "algebra"));
  auto dom = str_list(field(j, "domain", path), at(path, "domain"));
  BValuedModel m = guarded(path, [&] { return BValuedModel(sig, alg, dom); });
  auto elt = [&](const Json& v, const std::string& p) {
    auto i = m.index(str(v, p));
    if (!i) throw ParseError(p, "unknown domain element '" + v.get<std::string>() + "'");
    return *i;
  };
  if (const Json* eq = optional_field(j, "eq")) {
    const std::string ep = at(path, "eq");
    array(*eq, ep);
    std::set<std::pair<std::size_t, std::size_t>> listed;
    std::vector<std::tuple<std::size_t, std::size_t, Element>> entries;
    for (std::size_t i = 0; i < eq->size(); ++i) {
      const std::string p = at(ep, i);
      allow_keys((*eq)[i], {"pair", "value"}, p);
      const Json& pair = array(field((*eq)[i], "pair", p), at(p, "pair"));
      if (pair.size() != 2) throw ParseError(at(p, "pair"), "expected two domain elements");
      std::size_t a = elt(pair[0], at(at(p, "pair"), 0)), c = elt(pair[1], at(at(p, "pair"), 1));
      if (!listed.emplace(a, c).second) throw ParseError(p, "duplicate equality entry");
      entries.emplace_back(a, c, parse_element(alg, field((*eq)[i], "value", p), at(p, "value")));
    }
    // An entry also fixes the mirrored pair unless that pair is listed too.
    for (const auto& [a, c, v] : entries) {
      m.set_eq_directed(a, c, v);
      if (!listed.contains({c, a})) m.set_eq_directed(c, a, v);
    }
  }
  if (const Json* rels = optional_field(j, "relations")) {
    const std::string rp = at(path, "relations");
    require_object(*rels, rp);
    for (const auto& [name, list] : rels->items()) {
      const std::string p = at(rp, name);
      auto ar = sig.arity(name);
      if (!ar) throw ParseError(p, "unknown relation '" + name + "' (" + describe(sig) + ")");
      array(list, p);
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string ip = at(p, i);
        allow_keys(list[i], {"args", "value"}, ip);
        const Json& args = array(field(list[i], "args", ip), at(ip, "args"));
        if (args.size() != static_cast<std::size_t>(*ar))
          throw ParseError(at(ip, "args"), "relation '" + name + "' has arity " + std::to_string(*ar) + ", got " +
                                               std::to_string(args.size()) + " argument(s)");
        Tuple t;
        for (std::size_t k = 0; k < args.size(); ++k) t.push_back(elt(args[k], at(at(ip, "args"), k)));
        m.set_rel(name, t, parse_element(alg, field(list[i], "value", ip), at(ip, "value")));
      }
    }
  }
  if (const Json* cs = optional_field(j, "constants")) {
    const std::string cp = at(path, "constants");
    require_object(*cs, cp);
    for (const auto& [c, v] : cs->items()) {
      if (!sig.has_constant(c)) throw ParseError(at(cp, c), "unknown constant '" + c + "' (" + describe(sig) + ")");
      m.set_constant(c, elt(v, at(cp, c)));
    }
  }
  guarded(at(path, "constants"), [&] {
    m.require_complete();
    return 0;
  });
  return m;
}

Json emit_model(const BValuedModel& m) {
  const auto& b = m.algebra();
  const auto& dom = m.domain();
  Json eq = Json::array();
  auto entry = [&](std::size_t a, std::size_t c) {
    eq.push_back({{"pair", {dom[a], dom[c]}}, {"value", emit_element(b, m.eq(a, c))}});
  };
  for (std::size_t a = 0; a < m.size(); ++a) {
    if (m.eq(a, a) != b.top()) entry(a, a);
    for (std::size_t c = a + 1; c < m.size(); ++c) {
      if (m.eq(a, c) != m.eq(c, a)) {
        entry(a, c);
        entry(c, a);
      } else if (!b.is_zero(m.eq(a, c))) {
        entry(a, c);
      }
    }
  }
  Json rels = Json::object();
  for (const auto& r : m.signature().relations()) {
    Json list = Json::array();
    for_each_tuple(m.size(), static_cast<std::size_t>(r.arity), [&](const Tuple& t) {
      Element v = m.rel(r.name, t);
      if (!b.is_zero(v)) {
        Json args = Json::array();
        for (auto i : t) args.push_back(dom[i]);
        list.push_back({{"args", args}, {"value", emit_element(b, v)}});
      }
      return true;
    });
    rels[r.name] = list;
  }
  Json consts = Json::object();
  for (const auto& [c, x] : m.constants()) consts[c] = dom[x];
  return {{"signature", emit_signature(m.signature())},
          {"algebra", emit_algebra(b)},
          {"domain", dom},
          {"eq", eq},
          {"relations", rels},
          {"constants", consts}};
}

// ---------------------------------------------------------------------------
// Consistency properties and filters

ConsistencyProperty parse_cp(const Json& j, const std::string& path) {
  allow_keys(j, {"signature", "fresh_constants", "family", "pool"}, path);
  Signature sig = parse_signature(field(j, "signature", path), at(path, "signature"));
  auto fresh = str_list(field(j, "fresh_constants", path), at(path, "fresh_constants"));
  std::set<std::string> extra(fresh.begin(), fresh.end());
  const std::string fp = at(path, "family");
  const Json& fam = array(field(j, "family", path), fp);
  std::vector<SentenceSet> family;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    auto s = parse_formula_list(fam[i], at(fp, i), &sig, extra);
    for (std::size_t k = 0; k < s.size(); ++k)
      if (!is_sentence(s[k])) throw ParseError(at(at(fp, i), k), "member formula has free variables");
    family.push_back(normalize_set(std::move(s)));
  }
  std::vector<Formula> pool;
  bool given = false;
  if (const Json* p = optional_field(j, "pool")) {
    pool = parse_pool(*p, at(path, "pool"), &sig, extra);
    given = true;
  }
  return guarded(path, [&] { return ConsistencyProperty::explicit_family(sig, fresh, family, pool, given); });
}

Json emit_cp(const ConsistencyProperty& s) {
  if (!s.is_explicit()) throw InfkitError("only explicit families can be serialized; convert with to_explicit");
  Json fam = Json::array();
  for (const auto& m : s.family()) fam.push_back(emit_formula_list(m));
  Json out = {{"signature", emit_signature(s.signature())}, {"fresh_constants", s.fresh()}, {"family", fam}};
  if (s.pool_given()) out["pool"] = emit_pool(s.pool());
  return out;
}

AlgFilter parse_ultrafilter(const FinBooleanAlgebra& b, const Json& j, const std::string& path) {
  allow_keys(j, {"generator"}, path);
  const std::string gp = at(path, "generator");
  Element g = parse_element(b, field(j, "generator", path), gp);
  return guarded(gp, [&] { return principal_filter(b, g); });
}

Json emit_ultrafilter(const FinBooleanAlgebra& b, const AlgFilter& f) {
  return {{"generator", emit_element(b, f.generator)}};
}

// ---------------------------------------------------------------------------
// Proofs, theories, pools

Sequent parse_sequent(const Json& j, const std::string& path) {
  allow_keys(j, {"ante", "succ"}, path);
  return Sequent::make(parse_formula_list(field(j, "ante", path), at(path, "ante")),
                       parse_formula_list(field(j, "succ", path), at(path, "succ")));
}

Json emit_sequent(const Sequent& s) { return {{"ante", emit_formula_list(s.ante)}, {"succ", emit_formula_list(s.succ)}}; }

namespace {

std::vector<Term> parse_terms(const Json& j, const std::string& path) {
  array(j, path);
  std::vector<Term> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_term(j[i], at(path, i)));
  return out;
}

Json emit_terms(const std::vector<Term>& ts) {
  Json a = Json::array();
  for (const auto& t : ts) a.push_back(emit_term(t));
  return a;
}

Rule parse_rule(const Json& j, const std::string& path) {
  allow_keys(j, {"name", "premises", "formula", "map", "terms", "vars", "from", "to"}, path);
  Rule r;
  r.name = str(field(j, "name", path), at(path, "name"));
  const auto& names = rule_names();
  if (std::find(names.begin(), names.end(), r.name) == names.end())
    throw ParseError(at(path, "name"), "unknown rule '" + r.name + "'");
  if (const Json* p = optional_field(j, "premises")) {
    array(*p, at(path, "premises"));
    for (std::size_t i = 0; i < p->size(); ++i) r.premises.push_back(index_value((*p)[i], at(at(path, "premises"), i)));
  }
  if (const Json* f = optional_field(j, "formula")) r.formula = parse_formula(*f, at(path, "formula"));
  if (const Json* m = optional_field(j, "map")) {
    require_object(*m, at(path, "map"));
    for (const auto& [v, t] : m->items()) r.map[v] = parse_term(t, at(at(path, "map"), v));
  }
  if (const Json* t = optional_field(j, "terms")) r.terms = parse_terms(*t, at(path, "terms"));
  if (const Json* v = optional_field(j, "vars")) r.vars = str_list(*v, at(path, "vars"));
  if (const Json* t = optional_field(j, "from")) r.from = parse_terms(*t, at(path, "from"));
  if (const Json* t = optional_field(j, "to")) r.to = parse_terms(*t, at(path, "to"));
  return r;
}

Json emit_rule(const Rule& r) {
  Json j = {{"name", r.name}};
  if (!r.premises.empty()) j["premises"] = r.premises;
  if (r.formula) j["formula"] = emit_formula(*r.formula);
  if (!r.map.empty()) {
    Json m = Json::object();
    for (const auto& [v, t] : r.map) m[v] = emit_term(t);
    j["map"] = m;
  }
  if (!r.terms.empty()) j["terms"] = emit_terms(r.terms);
  if (!r.vars.empty()) j["vars"] = r.vars;
  if (!r.from.empty()) j["from"] = emit_terms(r.from);
  if (!r.to.empty()) j["to"] = emit_terms(r.to);
  return j;
}

}  // namespace

Proof parse_proof(const Json& j, const std::string& path) {
  allow_keys(j, {"steps"}, path);
  const std::string sp = at(path, "steps");
  const Json& steps = array(field(j, "steps", path), sp);
  Proof p;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string ip = at(sp, i);
    allow_keys(steps[i], {"sequent", "rule"}, ip);
    p.steps.push_back({parse_sequent(field(steps[i], "sequent", ip), at(ip, "sequent")),
                       parse_rule(field(steps[i], "rule", ip), at(ip, "rule"))});
  }
  if (p.steps.empty()) throw ParseError(sp, "a proof needs at least one step");
  return p;
}

Json emit_proof(const Proof& p) {
  Json steps = Json::array();
  for (const auto& s : p.steps) steps.push_back({{"sequent", emit_sequent(s.sequent)}, {"rule", emit_rule(s.rule)}});
  return {{"steps", steps}};
}

Theory parse_theory(const Json& j, const std::string& path) {
  allow_keys(j, {"signature", "sentences"}, path);
  Theory t;
  t.signature = parse_signature(field(j, "signature", path), at(path, "signature"));
  const std::string sp = at(path, "sentences");
  t.sentences = parse_formula_list(field(j, "sentences", path), sp, &t.signature);
  for (std::size_t i = 0; i < t.sentences.size(); ++i)
    if (!is_sentence(t.sentences[i])) throw ParseError(at(sp, i), "theory member has free variables");
  return t;
}

Json emit_theory(const Theory& t) {
  return {{"signature", emit_signature(t.signature)}, {"sentences", emit_formula_list(t.sentences)}};
}

std::vector<Formula> parse_pool(const Json& j, const std::string& path, const Signature* sig,
                                const std::set<std::string>& extra_constants) {
  return normalize_set(parse_formula_list(j, path, sig, extra_constants));
}

Json emit_pool(const std::vector<Formula>& pool) { return emit_formula_list(normalize_set(pool)); }

// ---------------------------------------------------------------------------
// Kinds

namespace {

const std::vector<std::pair<FileKind, std::string>>& kind_table() {
  static const std::vector<std::pair<FileKind, std::string>> t = {
      {FileKind::Signature, "signature"}, {FileKind::Formula, "formula"},
      {FileKind::Algebra, "algebra"},     {FileKind::Poset, "poset"},
      {FileKind::Model, "model"},         {FileKind::Cp, "cp"},
      {FileKind::Ultrafilter, "ultrafilter"}, {FileKind::Proof, "proof"},
      {FileKind::Theory, "theory"},       {FileKind::Pool, "pool"},
      {FileKind::Manifest, "manifest"}};
  return t;
}

}  // namespace

std::string kind_name(FileKind k) {
  for (const auto& [kk, n] : kind_table())
    if (kk == k) return n;
  return "?";
}

std::optional<FileKind> kind_from_name(std::string_view name) {
  for (const auto& [k, n] : kind_table())
    if (n == name) return k;
  return std::nullopt;
}

FileKind detect_kind(const Json& j) {
  if (j.is_array()) return FileKind::Pool;
  if (!j.is_object()) throw ParseError("$", "expected an object or an array");
  if (j.contains("entries")) return FileKind::Manifest;
  if (j.contains("steps")) return FileKind::Proof;
  if (j.contains("generator")) return FileKind::Ultrafilter;
  if (j.contains("fresh_constants")) return FileKind::Cp;
  if (j.contains("domain")) return FileKind::Model;
  if (j.contains("sentences")) return FileKind::Theory;
  if (j.contains("type")) return FileKind::Algebra;
  if (j.contains("elements") && j.contains("leq")) return FileKind::Poset;
  if (j.size() == 1) return FileKind::Formula;
  if (j.contains("relations") || j.contains("constants")) return FileKind::Signature;
  throw ParseError("$", "cannot determine the file format");
}

Json reemit(const Json& j, FileKind kind) {
  switch (kind) {
    case FileKind::Signature:
      return emit_signature(parse_signature(j));
    case FileKind::Formula:
      return emit_formula(parse_formula(j));
    case FileKind::Algebra:
      return emit_algebra(parse_algebra(j));
    case FileKind::Poset:
      return emit_poset(parse_poset(j));
    case FileKind::Model:
      return emit_model(parse_model(j));
    case FileKind::Cp:
      return emit_cp(parse_cp(j));
    case FileKind::Ultrafilter: {
      allow_keys(j, {"generator"}, "$");
      const Json& g = field(j, "generator", "$");
      if (g.is_string()) return {{"generator", std::vector<std::string>{g.get<std::string>()}}};
      auto names = str_list(g, "$.generator");
      std::sort(names.begin(), names.end());
      return {{"generator", names}};
    }
    case FileKind::Proof:
      return emit_proof(parse_proof(j));
    case FileKind::Theory:
      return emit_theory(parse_theory(j));
    case FileKind::Pool:
      return emit_pool(parse_pool(j));
    case FileKind::Manifest:
      return j;
  }
  return j;
}

}  // namespace infkit
