#include "infkit/syntax.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <utility>

namespace infkit {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(s[0]) && !digit(s[0])) return false;
  return std::all_of(s.begin(), s.end(), [&](char c) { return alpha(c) || digit(c); });
}

// ---------------------------------------------------------------------------
// Signature

Signature::Signature(std::vector<RelationSymbol> relations, std::vector<std::string> constants)
    : relations_(std::move(relations)), constants_(std::move(constants)) {
  std::set<std::string> seen;
  for (const auto& r : relations_) {
    if (!is_identifier(r.name)) throw SignatureError("bad relation name '" + r.name + "'");
    if (r.arity < 1) throw SignatureError("relation '" + r.name + "' has arity < 1");
    if (!seen.insert(r.name).second) throw SignatureError("duplicate symbol '" + r.name + "'");
  }
  for (const auto& c : constants_) {
    if (!is_identifier(c)) throw SignatureError("bad constant name '" + c + "'");
    if (!seen.insert(c).second) throw SignatureError("duplicate symbol '" + c + "'");
  }
}

std::optional<int> Signature::arity(std::string_view relation) const {
  for (const auto& r : relations_)
    if (r.name == relation) return r.arity;
  return std::nullopt;
}

bool Signature::has_constant(std::string_view name) const {
  return std::find(constants_.begin(), constants_.end(), name) != constants_.end();
}

Signature Signature::with_constants(const std::vector<std::string>& extra) const {
  auto cs = constants_;
  cs.insert(cs.end(), extra.begin(), extra.end());
  return Signature(relations_, std::move(cs));
}

// ---------------------------------------------------------------------------
// Formula nodes

struct Formula::Node {
  Connective kind = Connective::Atom;
  std::string relation;
  std::vector<Term> terms;
  std::vector<Formula> children;
  std::vector<std::string> vars;
  std::string canonical;
  int depth = 0;
};

namespace {

void append_term(std::string& out, const Term& t) {
  if (t.is_var()) out += '?';
  out += t.name;
}

}  // namespace

Formula Formula::make(Node node) {
  std::string& c = node.canonical;
  switch (node.kind) {
    case Connective::Atom:
    case Connective::Eq: {
      c = node.kind == Connective::Atom ? node.relation : std::string("=");
      c += '(';
      for (std::size_t i = 0; i < node.terms.size(); ++i) {
        if (i) c += ',';
        append_term(c, node.terms[i]);
      }
      c += ')';
      node.depth = 0;
      break;
    }
    case Connective::Not:
      c = "~" + node.children[0].canonical();
      node.depth = node.children[0].depth() + 1;
      break;
    case Connective::And:
    case Connective::Or: {
      std::sort(node.children.begin(), node.children.end());
      node.children.erase(std::unique(node.children.begin(), node.children.end()), node.children.end());
      c = node.kind == Connective::And ? "&[" : "|[";
      int d = 0;
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        if (i) c += ',';
        c += node.children[i].canonical();
        d = std::max(d, node.children[i].depth());
      }
      c += ']';
      node.depth = d + 1;
      break;
    }
    case Connective::Forall:
    case Connective::Exists: {
      c = node.kind == Connective::Forall ? "A{" : "E{";
      for (std::size_t i = 0; i < node.vars.size(); ++i) {
        if (i) c += ',';
        c += node.vars[i];
      }
      c += '}';
      c += node.children[0].canonical();
      node.depth = node.children[0].depth() + 1;
      break;
    }
  }
  return Formula(std::make_shared<const Node>(std::move(node)));
}

Formula Formula::atom(std::string relation, std::vector<Term> args) {
  if (!is_identifier(relation)) throw SignatureError("bad relation name '" + relation + "'");
  if (args.empty()) throw SignatureError("atom '" + relation + "' needs at least one argument");
  for (const auto& t : args)
    if (!is_identifier(t.name)) throw SignatureError("bad term name '" + t.name + "'");
  Node n;
  n.kind = Connective::Atom;
  n.relation = std::move(relation);
  n.terms = std::move(args);
  return make(std::move(n));
}

Formula Formula::eq(Term left, Term right) {
  for (const auto* t : {&left, &right})
    if (!is_identifier(t->name)) throw SignatureError("bad term name '" + t->name + "'");
  Node n;
  n.kind = Connective::Eq;
  n.terms = {std::move(left), std::move(right)};
  return make(std::move(n));
}

Formula Formula::negation(Formula body) {
  Node n;
  n.kind = Connective::Not;
  n.children = {std::move(body)};
  return make(std::move(n));
}

Formula Formula::conj(std::vector<Formula> children) {
  Node n;
  n.kind = Connective::And;
  n.children = std::move(children);
  return make(std::move(n));
}

Formula Formula::disj(std::vector<Formula> children) {
  Node n;
  n.kind = Connective::Or;
  n.children = std::move(children);
  return make(std::move(n));
}

namespace {

void check_binder(const std::vector<std::string>& vars) {
  if (vars.empty()) throw SignatureError("quantifier with empty variable list");
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (!is_identifier(v)) throw SignatureError("bad variable name '" + v + "'");
    if (!seen.insert(v).second) throw SignatureError("duplicate bound variable '" + v + "'");
  }
}

}  // namespace

Formula Formula::forall(std::vector<std::string> vars, Formula body) {
  check_binder(vars);
  Node n;
  n.kind = Connective::Forall;
  n.vars = std::move(vars);
  n.children = {std::move(body)};
  return make(std::move(n));
}

Formula Formula::exists(std::vector<std::string> vars, Formula body) {
  check_binder(vars);
  Node n;
  n.kind = Connective::Exists;
  n.vars = std::move(vars);
  n.children = {std::move(body)};
  return make(std::move(n));
}

Connective Formula::kind() const { return node_->kind; }
bool Formula::is_atomic() const { return kind() == Connective::Atom || kind() == Connective::Eq; }
bool Formula::is_quantifier() const { return kind() == Connective::Forall || kind() == Connective::Exists; }
const std::string& Formula::relation() const { return node_->relation; }
std::span<const Term> Formula::terms() const { return node_->terms; }
std::span<const Formula> Formula::children() const { return node_->children; }
const Formula& Formula::body() const {
  assert(!node_->children.empty());
  return node_->children.front();
}
std::span<const std::string> Formula::bound_vars() const { return node_->vars; }
const std::string& Formula::canonical() const { return node_->canonical; }
int Formula::depth() const { return node_->depth; }

bool Formula::operator==(const Formula& other) const {
  return node_ == other.node_ || node_->canonical == other.node_->canonical;
}

std::strong_ordering Formula::operator<=>(const Formula& other) const {
  if (node_ == other.node_) return std::strong_ordering::equal;
  return node_->canonical <=> other.node_->canonical;
}

// ---------------------------------------------------------------------------
// Free variables and substitution

namespace {

void collect_free(const Formula& f, VarSet& bound, VarSet& out) {
  switch (f.kind()) {
    case Connective::Atom:
    case Connective::Eq:
      for (const auto& t : f.terms())
        if (t.is_var() && !bound.contains(t.name)) out.insert(t.name);
      break;
    case Connective::Not:
    case Connective::And:
    case Connective::Or:
      for (const auto& c : f.children()) collect_free(c, bound, out);
      break;
    case Connective::Forall:
    case Connective::Exists: {
      std::vector<std::string> added;
      for (const auto& v : f.bound_vars())
        if (bound.insert(v).second) added.push_back(v);
      collect_free(f.body(), bound, out);
      for (const auto& v : added) bound.erase(v);
      break;
    }
  }
}

Formula rebuild(const Formula& f, std::vector<Formula> children) {
  switch (f.kind()) {
    case Connective::Not:
      return Formula::negation(std::move(children.front()));
    case Connective::And:
      return Formula::conj(std::move(children));
    case Connective::Or:
      return Formula::disj(std::move(children));
    case Connective::Forall:
      return Formula::forall({f.bound_vars().begin(), f.bound_vars().end()}, std::move(children.front()));
    case Connective::Exists:
      return Formula::exists({f.bound_vars().begin(), f.bound_vars().end()}, std::move(children.front()));
    default:
      return f;
  }
}

// `active` holds the mapped variables that are still free at this point.
Formula subst_rec(const Formula& f, const Substitution& map, const VarSet& active, const VarSet& binders) {
  if (active.empty()) return f;
  switch (f.kind()) {
    case Connective::Atom:
    case Connective::Eq: {
      bool changed = false;
      std::vector<Term> ts(f.terms().begin(), f.terms().end());
      for (auto& t : ts) {
        if (!t.is_var() || !active.contains(t.name)) continue;
        const Term& target = map.at(t.name);
        if (target.is_var() && binders.contains(target.name))
          throw CaptureError("substituting " + target.name + " for " + t.name + " is captured by a binder");
        t = target;
        changed = true;
      }
      if (!changed) return f;
      return f.kind() == Connective::Atom ? Formula::atom(f.relation(), std::move(ts))
                                          : Formula::eq(std::move(ts[0]), std::move(ts[1]));
    }
    case Connective::Not:
    case Connective::And:
    case Connective::Or: {
      std::vector<Formula> cs;
      for (const auto& c : f.children()) cs.push_back(subst_rec(c, map, active, binders));
      return rebuild(f, std::move(cs));
    }
    case Connective::Forall:
    case Connective::Exists: {
      VarSet act = active;
      VarSet bnd = binders;
      for (const auto& v : f.bound_vars()) {
        act.erase(v);
        bnd.insert(v);
      }
      return rebuild(f, {subst_rec(f.body(), map, act, bnd)});
    }
  }
  return f;
}

}  // namespace

VarSet free_vars(const Formula& f) {
  VarSet bound, out;
  collect_free(f, bound, out);
  return out;
}

bool is_sentence(const Formula& f) { return free_vars(f).empty(); }

Formula substitute(const Formula& f, const Substitution& map) {
  VarSet active;
  for (const auto& [v, t] : map)
    if (!(t.is_var() && t.name == v)) active.insert(v);
  return subst_rec(f, map, active, {});
}

namespace {

Formula replace_const_rec(const Formula& f, const std::string& from, const Term& to,
                          const std::set<int>& which, int& counter, const VarSet& binders) {
  switch (f.kind()) {
    case Connective::Atom:
    case Connective::Eq: {
      std::vector<Term> ts(f.terms().begin(), f.terms().end());
      bool changed = false;
      for (auto& t : ts) {
        if (!t.is_const() || t.name != from) continue;
        if (which.contains(counter)) {
          if (to.is_var() && binders.contains(to.name))
            throw CaptureError("replacing " + from + " by " + to.name + " is captured by a binder");
          t = to;
          changed = true;
        }
        ++counter;
      }
      if (!changed) return f;
      return f.kind() == Connective::Atom ? Formula::atom(f.relation(), std::move(ts))
                                          : Formula::eq(std::move(ts[0]), std::move(ts[1]));
    }
    case Connective::Not:
    case Connective::And:
    case Connective::Or: {
      std::vector<Formula> cs;
      for (const auto& c : f.children()) cs.push_back(replace_const_rec(c, from, to, which, counter, binders));
      return rebuild(f, std::move(cs));
    }
    case Connective::Forall:
    case Connective::Exists: {
      VarSet bnd = binders;
      bnd.insert(f.bound_vars().begin(), f.bound_vars().end());
      return rebuild(f, {replace_const_rec(f.body(), from, to, which, counter, bnd)});
    }
  }
  return f;
}

}  // namespace

int count_constant_occurrences(const Formula& f, const std::string& name) {
  if (f.is_atomic()) {
    int n = 0;
    for (const auto& t : f.terms()) n += (t.is_const() && t.name == name) ? 1 : 0;
    return n;
  }
  int n = 0;
  for (const auto& c : f.children()) n += count_constant_occurrences(c, name);
  return n;
}

Formula replace_constant_occurrences(const Formula& f, const std::string& from, const Term& to,
                                     const std::vector<int>& occurrences) {
  // Occurrence order follows the stored (canonical) child order.
  std::set<int> which(occurrences.begin(), occurrences.end());
  int counter = 0;
  return replace_const_rec(f, from, to, which, counter, {});
}

// ---------------------------------------------------------------------------
// Negation handling

Formula move_neg_inside(const Formula& f) {
  auto negate_all = [](std::span<const Formula> cs) {
    std::vector<Formula> out;
    out.reserve(cs.size());
    for (const auto& c : cs) out.push_back(Formula::negation(c));
    return out;
  };
  switch (f.kind()) {
    case Connective::Atom:
    case Connective::Eq:
      return Formula::negation(f);
    case Connective::Not:
      return f.body();
    case Connective::And:
      return Formula::disj(negate_all(f.children()));
    case Connective::Or:
      return Formula::conj(negate_all(f.children()));
    case Connective::Forall:
      return Formula::exists({f.bound_vars().begin(), f.bound_vars().end()}, Formula::negation(f.body()));
    case Connective::Exists:
      return Formula::forall({f.bound_vars().begin(), f.bound_vars().end()}, Formula::negation(f.body()));
  }
  return f;
}

Formula nnf(const Formula& f) {
  switch (f.kind()) {
    case Connective::Atom:
    case Connective::Eq:
      return f;
    case Connective::Not: {
      const Formula& g = f.body();
      if (g.is_atomic()) return f;
      // ¬g for compound g: g¬ has its negations one level further down.
      return nnf(move_neg_inside(g));
    }
    default: {
      std::vector<Formula> cs;
      for (const auto& c : f.children()) cs.push_back(nnf(c));
      return rebuild(f, std::move(cs));
    }
  }
}

// ---------------------------------------------------------------------------
// Subformulas and symbol inventories

std::vector<Formula> normalize_set(std::vector<Formula> fs) {
  std::sort(fs.begin(), fs.end());
  fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
  return fs;
}

std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    out.push_back(g);
    for (const auto& c : g.children()) walk(c);
  };
  walk(f);
  return normalize_set(std::move(out));
}

std::string canonical_form(const Formula& f) { return f.canonical(); }

std::set<std::string> constants_of(const Formula& f) {
  std::set<std::string> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    for (const auto& t : g.terms())
      if (t.is_const()) out.insert(t.name);
    for (const auto& c : g.children()) walk(c);
  };
  walk(f);
  return out;
}

std::set<std::string> variables_of(const Formula& f) {
  std::set<std::string> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    for (const auto& t : g.terms())
      if (t.is_var()) out.insert(t.name);
    out.insert(g.bound_vars().begin(), g.bound_vars().end());
    for (const auto& c : g.children()) walk(c);
  };
  walk(f);
  return out;
}

std::map<std::string, int> relations_of(const Formula& f) {
  std::map<std::string, int> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.kind() == Connective::Atom) {
      int n = static_cast<int>(g.terms().size());
      auto [it, fresh] = out.emplace(g.relation(), n);
      if (!fresh && it->second != n)
        throw SignatureError("relation '" + g.relation() + "' used with arities " + std::to_string(it->second) +
                             " and " + std::to_string(n));
    }
    for (const auto& c : g.children()) walk(c);
  };
  walk(f);
  return out;
}

void check_well_formed(const Formula& f, const Signature& sig, const std::set<std::string>& extra_constants) {
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.kind() == Connective::Atom) {
      auto a = sig.arity(g.relation());
      if (!a) throw SignatureError("unknown relation '" + g.relation() + "' (not in signature)");
      if (*a != static_cast<int>(g.terms().size()))
        throw SignatureError("relation '" + g.relation() + "' has arity " + std::to_string(*a) + " but got " +
                             std::to_string(g.terms().size()) + " arguments");
    }
    for (const auto& t : g.terms())
      if (t.is_const() && !sig.has_constant(t.name) && !extra_constants.contains(t.name))
        throw SignatureError("unknown constant '" + t.name + "' (not in signature)");
    for (const auto& c : g.children()) walk(c);
  };
  walk(f);
}

Signature infer_signature(std::span<const Formula> formulas) {
  std::map<std::string, int> rels;
  std::set<std::string> consts;
  for (const auto& f : formulas) {
    for (const auto& [name, arity] : relations_of(f)) {
      auto [it, fresh] = rels.emplace(name, arity);
      if (!fresh && it->second != arity)
        throw SignatureError("relation '" + name + "' used with two arities");
    }
    auto cs = constants_of(f);
    consts.insert(cs.begin(), cs.end());
  }
  std::vector<RelationSymbol> rs;
  for (const auto& [n, a] : rels) rs.push_back({n, a});
  return Signature(std::move(rs), {consts.begin(), consts.end()});
}

// ---------------------------------------------------------------------------
// Fragments

bool Fragment::contains(const Formula& f) const { return std::binary_search(formulas.begin(), formulas.end(), f); }

namespace {

// Every formula obtained from f by replacing all free occurrences of one term
// (free variable or constant) by one pool term.
void term_replacements(const Formula& f, const std::vector<Term>& pool_terms, std::vector<Formula>& out) {
  std::vector<Term> present;
  for (const auto& v : free_vars(f)) present.push_back(Term::var(v));
  for (const auto& c : constants_of(f)) present.push_back(Term::constant(c));
  for (const auto& from : present) {
    for (const auto& to : pool_terms) {
      if (to == from) continue;
      try {
        if (from.is_var()) {
          out.push_back(substitute(f, {{from.name, to}}));
        } else {
          int n = count_constant_occurrences(f, from.name);
          std::vector<int> all(n);
          for (int i = 0; i < n; ++i) all[i] = i;
          out.push_back(replace_constant_occurrences(f, from.name, to, all));
        }
      } catch (const CaptureError&) {
        // not an instance of the clause
      }
    }
  }
}

}  // namespace

Fragment build_fragment(const std::vector<Formula>& seed, const std::vector<std::string>& var_pool,
                        const std::vector<std::string>& const_pool, int generation_bound) {
  Fragment frag;
  frag.var_pool = var_pool;
  frag.const_pool = const_pool;
  if (seed.empty()) {
    frag.fixpoint_reached = true;
    return frag;
  }

  std::set<std::string> universe(var_pool.begin(), var_pool.end());
  for (const auto& f : seed) {
    auto vs = variables_of(f);
    universe.insert(vs.begin(), vs.end());
  }
  for (const auto& f : seed) {
    auto used = variables_of(f);
    bool spare = std::any_of(universe.begin(), universe.end(), [&](const auto& v) { return !used.contains(v); });
    if (!spare)
      throw PoolExhausted("no variable outside of " + f.canonical() + " is available; enlarge the variable pool");
  }

  std::vector<Term> pool_terms;
  for (const auto& v : universe) pool_terms.push_back(Term::var(v));
  for (const auto& c : const_pool) pool_terms.push_back(Term::constant(c));

  std::set<Formula> current(seed.begin(), seed.end());
  frag.fixpoint_reached = false;
  for (int gen = 0; gen < generation_bound; ++gen) {
    std::vector<Formula> fresh;
    std::vector<Formula> items(current.begin(), current.end());
    for (const auto& f : items) {
      fresh.push_back(Formula::negation(f));
      fresh.push_back(move_neg_inside(f));
      for (const auto& s : subformulas(f)) fresh.push_back(s);
      for (const auto& v : universe) {
        fresh.push_back(Formula::forall({v}, f));
        fresh.push_back(Formula::exists({v}, f));
      }
      term_replacements(f, pool_terms, fresh);
    }
    for (std::size_t i = 0; i < items.size(); ++i)
      for (std::size_t j = i; j < items.size(); ++j) {
        fresh.push_back(Formula::conj({items[i], items[j]}));
        fresh.push_back(Formula::disj({items[i], items[j]}));
      }
    std::size_t before = current.size();
    current.insert(fresh.begin(), fresh.end());
    frag.generations = gen + 1;
    if (current.size() == before) {
      frag.fixpoint_reached = true;
      break;
    }
  }
  frag.formulas.assign(current.begin(), current.end());
  std::vector<Formula> fs(frag.formulas);
  frag.signature = infer_signature(fs);
  return frag;
}

}  // namespace infkit
