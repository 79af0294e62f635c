#include "infkit/bvmodel.hpp"

#include <algorithm>

namespace infkit {

BValuedModel::BValuedModel(Signature sig, FinBooleanAlgebra algebra, std::vector<std::string> domain)
    : sig_(std::move(sig)), alg_(std::move(algebra)), domain_(std::move(domain)) {
  std::set<std::string> seen;
  for (const auto& d : domain_)
    if (!seen.insert(d).second) throw ModelError("duplicate domain element '" + d + "'");
  const std::size_t n = domain_.size();
  eq_.assign(n * n, alg_.bottom());
  for (std::size_t i = 0; i < n; ++i) eq_[i * n + i] = alg_.top();
  for (const auto& r : sig_.relations()) {
    std::size_t cells = 1;
    for (int i = 0; i < r.arity; ++i) cells *= n;
    rels_[r.name].assign(cells, alg_.bottom());
  }
}

std::optional<std::size_t> BValuedModel::index(const std::string& element) const {
  auto it = std::find(domain_.begin(), domain_.end(), element);
  if (it == domain_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - domain_.begin());
}

void BValuedModel::set_eq(std::size_t a, std::size_t b, Element v) {
  eq_[a * size() + b] = v;
  eq_[b * size() + a] = v;
}

std::size_t BValuedModel::rel_offset(const std::string& r, const Tuple& args) const {
  auto ar = sig_.arity(r);
  if (!ar) throw SignatureError("unknown relation '" + r + "'");
  if (static_cast<int>(args.size()) != *ar) throw SignatureError("wrong arity for '" + r + "'");
  std::size_t off = 0;
  for (auto x : args) {
    if (x >= size()) throw ModelError("domain index out of range");
    off = off * size() + x;
  }
  return off;
}

Element BValuedModel::rel(const std::string& r, const Tuple& args) const {
  return rels_.at(r)[rel_offset(r, args)];
}

void BValuedModel::set_rel(const std::string& r, const Tuple& args, Element v) {
  auto off = rel_offset(r, args);
  rels_.at(r)[off] = v;
}

void BValuedModel::set_constant(const std::string& c, std::size_t element) {
  if (!sig_.has_constant(c)) throw SignatureError("unknown constant '" + c + "'");
  if (element >= size()) throw ModelError("constant '" + c + "' interpreted outside the domain");
  constants_[c] = element;
}

std::size_t BValuedModel::constant(const std::string& c) const {
  auto it = constants_.find(c);
  if (it == constants_.end()) throw SignatureError("constant '" + c + "' has no interpretation");
  return it->second;
}

void BValuedModel::require_complete() const {
  for (const auto& c : sig_.constants())
    if (!constants_.contains(c)) throw ModelError("constant '" + c + "' has no interpretation");
  if (domain_.empty()) throw ModelError("domain is empty");
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::size_t kMaxReported = 64;

void report(ModelReport& r, ModelViolation v) {
  if (r.violations.size() < kMaxReported) r.violations.push_back(std::move(v));
}

}  // namespace

ModelReport check_model(const BValuedModel& m) {
  ModelReport r;
  const auto& b = m.algebra();
  const auto& names = m.domain();
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    ++r.instances_checked;
    if (!b.is_top(m.eq(i, i))) report(r, {"reflexivity", "", {names[i]}});
    for (std::size_t j = 0; j < n; ++j) {
      ++r.instances_checked;
      if (m.eq(i, j) != m.eq(j, i)) report(r, {"symmetry", "", {names[i], names[j]}});
      for (std::size_t k = 0; k < n; ++k) {
        ++r.instances_checked;
        if (!b.leq(b.meet(m.eq(i, j), m.eq(j, k)), m.eq(i, k)))
          report(r, {"transitivity", "", {names[i], names[j], names[k]}});
      }
    }
  }
  for (const auto& rel : m.signature().relations()) {
    const std::size_t k = static_cast<std::size_t>(rel.arity);
    for_each_tuple(n, k, [&](const Tuple& tau) {
      Element rt = m.rel(rel.name, tau);
      for_each_tuple(n, k, [&](const Tuple& sigma) {
        ++r.instances_checked;
        Element lhs = rt;
        for (std::size_t i = 0; i < k; ++i) lhs = b.meet(lhs, m.eq(tau[i], sigma[i]));
        if (!b.leq(lhs, m.rel(rel.name, sigma))) {
          std::vector<std::string> w;
          for (auto x : tau) w.push_back(names[x]);
          for (auto x : sigma) w.push_back(names[x]);
          report(r, {"congruence", rel.name, std::move(w)});
        }
        return true;
      });
      return true;
    });
  }
  return r;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

class Evaluator {
 public:
  explicit Evaluator(const BValuedModel& m) : m_(m), b_(m.algebra()) {}

  Element run(const Formula& f, Assignment& a) const {
    switch (f.kind()) {
      case Connective::Atom: {
        Tuple args;
        for (const auto& t : f.terms()) args.push_back(value(t, a));
        return m_.rel(f.relation(), args);
      }
      case Connective::Eq:
        return m_.eq(value(f.terms()[0], a), value(f.terms()[1], a));
      case Connective::Not:
        return b_.complement(run(f.body(), a));
      case Connective::And: {
        Element r = b_.top();
        for (const auto& c : f.children()) {
          r = b_.meet(r, run(c, a));
          if (b_.is_zero(r)) break;
        }
        return r;
      }
      case Connective::Or: {
        Element r = b_.bottom();
        for (const auto& c : f.children()) {
          r = b_.join(r, run(c, a));
          if (b_.is_top(r)) break;
        }
        return r;
      }
      case Connective::Forall:
      case Connective::Exists: {
        const bool all = f.kind() == Connective::Forall;
        auto vars = f.bound_vars();
        std::vector<std::optional<std::size_t>> saved;
        for (const auto& v : vars) {
          auto it = a.find(v);
          saved.push_back(it == a.end() ? std::nullopt : std::optional<std::size_t>(it->second));
        }
        Element r = all ? b_.top() : b_.bottom();
        for_each_tuple(m_.size(), vars.size(), [&](const Tuple& t) {
          for (std::size_t i = 0; i < vars.size(); ++i) a[vars[i]] = t[i];
          Element v = run(f.body(), a);
          r = all ? b_.meet(r, v) : b_.join(r, v);
          return all ? !b_.is_zero(r) : !b_.is_top(r);
        });
        for (std::size_t i = 0; i < vars.size(); ++i) {
          if (saved[i]) a[vars[i]] = *saved[i];
          else a.erase(vars[i]);
        }
        return r;
      }
    }
    return b_.bottom();
  }

 private:
  std::size_t value(const Term& t, const Assignment& a) const {
    if (t.is_const()) return m_.constant(t.name);
    auto it = a.find(t.name);
    if (it == a.end()) throw UnboundVariable("variable '" + t.name + "' is not assigned");
    if (it->second >= m_.size()) throw ModelError("assignment of '" + t.name + "' is outside the domain");
    return it->second;
  }

  const BValuedModel& m_;
  const FinBooleanAlgebra& b_;
};

}  // namespace

Element eval(const BValuedModel& m, const Formula& f, const Assignment& a) {
  Assignment work = a;
  return Evaluator(m).run(f, work);
}

// ---------------------------------------------------------------------------
// Mixing and fullness

namespace {

// Some tau with part <= [[tau = targets[i]]] for every part i.
bool has_mix(const BValuedModel& m, const std::vector<Element>& parts, const Tuple& targets) {
  const auto& b = m.algebra();
  for (std::size_t tau = 0; tau < m.size(); ++tau) {
    bool ok = true;
    for (std::size_t i = 0; i < parts.size() && ok; ++i) ok = b.leq(parts[i], m.eq(tau, targets[i]));
    if (ok) return true;
  }
  return false;
}

}  // namespace

MixingResult check_mixing(const BValuedModel& m) {
  MixingResult r;
  auto atoms = m.algebra().atoms();
  for_each_tuple(m.size(), atoms.size(), [&](const Tuple& t) {
    if (has_mix(m, atoms, t)) return true;
    r.mixing = false;
    r.antichain = atoms;
    r.targets = t;
    return false;
  });
  return r;
}

MixingResult check_mixing_by_antichains(const BValuedModel& m) {
  MixingResult r;
  for (const auto& a : enumerate_antichains(m.algebra())) {
    bool ok = for_each_tuple(m.size(), a.size(), [&](const Tuple& t) {
      if (has_mix(m, a, t)) return true;
      r.mixing = false;
      r.antichain = a;
      r.targets = t;
      return false;
    });
    if (!ok) return r;
  }
  return r;
}

FullResult check_full(const BValuedModel& m, const Formula& f, const Assignment& a) {
  if (f.kind() != Connective::Exists) throw ShapeError("fullness is checked on existential formulas only");
  FullResult r;
  r.value = eval(m, f, a);
  auto vars = f.bound_vars();
  Assignment work = a;
  for_each_tuple(m.size(), vars.size(), [&](const Tuple& t) {
    for (std::size_t i = 0; i < vars.size(); ++i) work[vars[i]] = t[i];
    if (eval(m, f.body(), work) == r.value) {
      r.attained = true;
      r.witness = t;
      return false;
    }
    return true;
  });
  return r;
}

bool check_subst_inequality(const BValuedModel& m, const Formula& f, const std::vector<std::string>& vars,
                            const Tuple& tau, const Tuple& sigma, const Assignment& base) {
  if (vars.size() != tau.size() || vars.size() != sigma.size())
    throw ShapeError("substitution tuples must match the variable list");
  const auto& b = m.algebra();
  Assignment at = base, as = base;
  Element lhs = b.top();
  for (std::size_t i = 0; i < vars.size(); ++i) {
    at[vars[i]] = tau[i];
    as[vars[i]] = sigma[i];
    lhs = b.meet(lhs, m.eq(tau[i], sigma[i]));
  }
  lhs = b.meet(lhs, eval(m, f, at));
  return b.leq(lhs, eval(m, f, as));
}

// ---------------------------------------------------------------------------
// Bounded satisfiability

namespace {

// Odometer over `slots` digits each in [0, base).
bool next_digits(std::vector<std::uint64_t>& d, std::uint64_t base) {
  for (std::size_t i = d.size(); i > 0; --i) {
    if (++d[i - 1] < base) return true;
    d[i - 1] = 0;
  }
  return false;
}

class SatSearch {
 public:
  SatSearch(const std::vector<Formula>& theory, SatMode mode) : theory_(theory), mode_(mode) {
    sig_ = infer_signature(theory);
    for (const auto& f : theory)
      if (!is_sentence(f)) throw InfkitError("theory contains a formula with free variables: " + f.canonical());
  }

  SatResult run(int max_atoms, int max_domain) {
    for (int k = 1; k <= max_atoms; ++k) {
      std::vector<std::string> atoms;
      for (int i = 0; i < k; ++i) atoms.push_back("a" + std::to_string(i));
      auto alg = FinBooleanAlgebra::powerset(atoms);
      for (int n = 1; n <= max_domain; ++n)
        if (search(alg, static_cast<std::size_t>(n))) return std::move(result_);
    }
    return std::move(result_);
  }

 private:
  bool search(const FinBooleanAlgebra& alg, std::size_t n) {
    std::vector<std::string> dom;
    for (std::size_t i = 0; i < n; ++i) dom.push_back("m" + std::to_string(i));
    BValuedModel base(sig_, alg, dom);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::vector<std::uint64_t> eqd(pairs.size(), 0);
    do {
      BValuedModel m = base;
      for (std::size_t p = 0; p < pairs.size(); ++p) m.set_eq(pairs[p].first, pairs[p].second, {eqd[p]});
      if (!transitive(m)) continue;
      if (relations(m, 0)) return true;
    } while (next_digits(eqd, alg.size()));
    return false;
  }

  static bool transitive(const BValuedModel& m) {
    const auto& b = m.algebra();
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j)
        for (std::size_t k = 0; k < m.size(); ++k)
          if (!b.leq(b.meet(m.eq(i, j), m.eq(j, k)), m.eq(i, k))) return false;
    return true;
  }

  // Enumerates relation tables one relation at a time, pruning by congruence.
  bool relations(BValuedModel& m, std::size_t r) {
    const auto& rels = sig_.relations();
    if (r == rels.size()) return constants(m);
    const auto& rel = rels[r];
    std::vector<Tuple> cells;
    for_each_tuple(m.size(), static_cast<std::size_t>(rel.arity), [&](const Tuple& t) {
      cells.push_back(t);
      return true;
    });
    std::vector<std::uint64_t> d(cells.size(), 0);
    do {
      for (std::size_t i = 0; i < cells.size(); ++i) m.set_rel(rel.name, cells[i], {d[i]});
      if (!congruent(m, rel, cells)) continue;
      if (relations(m, r + 1)) return true;
    } while (next_digits(d, m.algebra().size()));
    return false;
  }

  static bool congruent(const BValuedModel& m, const RelationSymbol& rel, const std::vector<Tuple>& cells) {
    const auto& b = m.algebra();
    for (const auto& tau : cells)
      for (const auto& sigma : cells) {
        Element lhs = m.rel(rel.name, tau);
        for (std::size_t i = 0; i < tau.size(); ++i) lhs = b.meet(lhs, m.eq(tau[i], sigma[i]));
        if (!b.leq(lhs, m.rel(rel.name, sigma))) return false;
      }
    return true;
  }

  // Constant images form a restricted growth string: every model is
  // isomorphic to one of this shape, since tables range over all labelings.
  bool constants(BValuedModel& m) {
    const auto& cs = sig_.constants();
    Tuple img(cs.size(), 0);
    auto rec = [&](auto&& self, std::size_t i, std::size_t used) -> bool {
      if (i == cs.size()) {
        ++result_.models_examined;
        for (std::size_t k = 0; k < cs.size(); ++k) m.set_constant(cs[k], img[k]);
        if (!satisfied(m)) return false;
        result_.found = true;
        result_.model = m;
        return true;
      }
      for (std::size_t x = 0; x < std::min(used + 1, m.size()); ++x) {
        img[i] = x;
        if (self(self, i + 1, std::max(used, x + 1))) return true;
      }
      return false;
    };
    return rec(rec, 0, 0);
  }

  bool satisfied(const BValuedModel& m) const {
    const auto& b = m.algebra();
    for (const auto& f : theory_) {
      Element v = eval(m, f);
      if (mode_ == SatMode::Strong ? !b.is_top(v) : b.is_zero(v)) return false;
    }
    return true;
  }

  const std::vector<Formula>& theory_;
  SatMode mode_;
  Signature sig_;
  SatResult result_;
};

}  // namespace

SatResult bounded_boolean_sat(const std::vector<Formula>& theory, int max_atoms, int max_domain, SatMode mode) {
  if (max_atoms < 1 || max_domain < 1) throw InfkitError("search bounds must be positive");
  if (max_atoms > 6) throw InfkitError("at most 6 atoms are supported by the exhaustive search");
  return SatSearch(theory, mode).run(max_atoms, max_domain);
}

// ---------------------------------------------------------------------------
// Two-valued evaluation

namespace {

std::size_t tarski_term(const TarskiStructure& s, const Term& t, const Assignment& a) {
  if (t.is_const()) {
    auto it = s.constants.find(t.name);
    if (it == s.constants.end()) throw SignatureError("constant '" + t.name + "' has no interpretation");
    return it->second;
  }
  auto it = a.find(t.name);
  if (it == a.end()) throw UnboundVariable("variable '" + t.name + "' is not assigned");
  return it->second;
}

}  // namespace

bool tarski_eval(const TarskiStructure& s, const Formula& f, const Assignment& a) {
  switch (f.kind()) {
    case Connective::Atom: {
      Tuple args;
      for (const auto& t : f.terms()) args.push_back(tarski_term(s, t, a));
      auto it = s.relations.find(f.relation());
      return it != s.relations.end() && it->second.contains(args);
    }
    case Connective::Eq:
      return tarski_term(s, f.terms()[0], a) == tarski_term(s, f.terms()[1], a);
    case Connective::Not:
      return !tarski_eval(s, f.body(), a);
    case Connective::And:
      for (const auto& c : f.children())
        if (!tarski_eval(s, c, a)) return false;
      return true;
    case Connective::Or:
      for (const auto& c : f.children())
        if (tarski_eval(s, c, a)) return true;
      return false;
    case Connective::Forall:
    case Connective::Exists: {
      const bool all = f.kind() == Connective::Forall;
      auto vars = f.bound_vars();
      Assignment work = a;
      bool found_counter = false;
      for_each_tuple(s.size, vars.size(), [&](const Tuple& t) {
        for (std::size_t i = 0; i < vars.size(); ++i) work[vars[i]] = t[i];
        if (tarski_eval(s, f.body(), work) != all) {
          found_counter = true;
          return false;
        }
        return true;
      });
      return all ? !found_counter : found_counter;
    }
  }
  return false;
}

}  // namespace infkit
