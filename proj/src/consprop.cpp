#include "infkit/consprop.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace infkit {

// ---------------------------------------------------------------------------
// Sentence-set helpers

std::string set_string(const SentenceSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += s[i].canonical();
  }
  return out + "}";
}

SentenceSet set_union(const SentenceSet& a, const SentenceSet& b) {
  SentenceSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool set_contains(const SentenceSet& s, const Formula& f) { return std::binary_search(s.begin(), s.end(), f); }

bool set_subset(const SentenceSet& a, const SentenceSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

namespace {

SentenceSet with(const SentenceSet& s, const Formula& f) {
  if (set_contains(s, f)) return s;
  SentenceSet out = s;
  out.insert(std::upper_bound(out.begin(), out.end(), f), f);
  return out;
}

bool const_eq(const Formula& f) {
  return f.kind() == Connective::Eq && f.terms()[0].is_const() && f.terms()[1].is_const();
}

// Every k-tuple over `pool`, in lexicographic order.
std::vector<std::vector<std::string>> tuples_over(const std::vector<std::string>& pool, std::size_t k) {
  std::vector<std::vector<std::string>> out;
  for_each_tuple(pool.size(), k, [&](const Tuple& t) {
    std::vector<std::string> v;
    for (auto i : t) v.push_back(pool[i]);
    out.push_back(std::move(v));
    return true;
  });
  return out;
}

std::size_t max_width(const Formula& f) {
  std::size_t w = 0;
  if (f.kind() == Connective::And || f.kind() == Connective::Or) w = f.children().size();
  for (const auto& c : f.children()) w = std::max(w, max_width(c));
  return w;
}

}  // namespace

Formula instantiate(const Formula& quantified, const std::vector<std::string>& constants) {
  auto vars = quantified.bound_vars();
  if (vars.size() != constants.size()) throw InfkitError("instance needs one constant per bound variable");
  Substitution map;
  for (std::size_t i = 0; i < vars.size(); ++i) map[vars[i]] = Term::constant(constants[i]);
  return substitute(quantified.body(), map);
}

std::vector<Formula> replacement_variants(const Formula& f, const std::string& d, const std::string& c) {
  std::vector<Formula> out;
  if (c == d) return out;
  const int n = count_constant_occurrences(f, d);
  if (n > 12) throw InfkitError("too many occurrences of '" + d + "' for replacement variants");
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<int> occ;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) occ.push_back(i);
    out.push_back(replace_constant_occurrences(f, d, Term::constant(c), occ));
  }
  return normalize_set(std::move(out));
}

std::vector<Formula> close_pool(const std::vector<Formula>& seed, const std::vector<std::string>& constants,
                                std::size_t limit) {
  std::set<Formula> pool;
  std::deque<Formula> work;
  auto add = [&](const Formula& f) {
    if (!is_sentence(f)) return;
    if (pool.insert(f).second) {
      work.push_back(f);
      if (pool.size() > limit) throw InfkitError("sentence pool closure exceeds " + std::to_string(limit));
    }
  };
  for (const auto& f : seed) {
    if (!is_sentence(f)) throw InfkitError("pool sentence has free variables: " + f.canonical());
    add(f);
  }
  bool changed = true;
  while (changed) {
    while (!work.empty()) {
      Formula f = work.front();
      work.pop_front();
      switch (f.kind()) {
        case Connective::Atom:
          break;
        case Connective::Eq:
          if (const_eq(f)) add(Formula::eq(f.terms()[1], f.terms()[0]));
          break;
        case Connective::Not:
          add(f.body());
          add(move_neg_inside(f.body()));
          break;
        case Connective::And:
        case Connective::Or:
          for (const auto& c : f.children()) add(c);
          break;
        case Connective::Forall:
        case Connective::Exists:
          for (const auto& t : tuples_over(constants, f.bound_vars().size())) add(instantiate(f, t));
          break;
      }
    }
    // Replacement along equalities, for atomic sentences.
    changed = false;
    std::vector<std::pair<std::string, std::string>> eqs;
    for (const auto& f : pool)
      if (const_eq(f)) eqs.emplace_back(f.terms()[0].name, f.terms()[1].name);
    std::vector<Formula> atoms;
    for (const auto& f : pool)
      if (f.is_atomic()) atoms.push_back(f);
    for (const auto& [c, d] : eqs)
      for (const auto& a : atoms)
        for (const auto& v : replacement_variants(a, d, c))
          if (!pool.contains(v)) {
            add(v);
            changed = true;
          }
  }
  return {pool.begin(), pool.end()};
}

// ---------------------------------------------------------------------------
// ConsistencyProperty

void ConsistencyProperty::index_pool() {
  pool_ = normalize_set(pool_);
  pool_index_.clear();
  for (std::size_t i = 0; i < pool_.size(); ++i) pool_index_[pool_[i].canonical()] = i;
}

std::vector<std::string> ConsistencyProperty::all_constants() const {
  std::vector<std::string> out = sig_.constants();
  out.insert(out.end(), fresh_.begin(), fresh_.end());
  return out;
}

bool ConsistencyProperty::in_pool(const Formula& f) const { return pool_index_.contains(f.canonical()); }

std::optional<std::size_t> ConsistencyProperty::pool_index(const Formula& f) const {
  auto it = pool_index_.find(f.canonical());
  if (it == pool_index_.end()) return std::nullopt;
  return it->second;
}

namespace {

void check_constants_disjoint(const Signature& sig, const std::vector<std::string>& fresh) {
  std::set<std::string> seen;
  for (const auto& c : fresh) {
    if (!is_identifier(c)) throw SignatureError("fresh constant '" + c + "' is not an identifier");
    if (sig.has_constant(c)) throw SignatureError("fresh constant '" + c + "' is also a base constant");
    if (!seen.insert(c).second) throw SignatureError("duplicate fresh constant '" + c + "'");
  }
}

}  // namespace

ConsistencyProperty ConsistencyProperty::explicit_family(Signature sig, std::vector<std::string> fresh,
                                                         std::vector<SentenceSet> family, std::vector<Formula> pool,
                                                         bool pool_given) {
  check_constants_disjoint(sig, fresh);
  ConsistencyProperty s;
  s.kind_ = Kind::Explicit;
  s.sig_ = std::move(sig);
  s.fresh_ = std::move(fresh);
  auto full = s.full_signature();
  std::vector<Formula> seed;
  for (auto& m : family) {
    m = normalize_set(m);
    for (const auto& f : m) {
      if (!is_sentence(f)) throw InfkitError("family member contains a formula with free variables: " + f.canonical());
      check_well_formed(f, full);
      seed.push_back(f);
    }
  }
  for (const auto& f : pool) check_well_formed(f, full);
  s.pool_given_ = pool_given;
  s.pool_ = pool_given ? std::move(pool) : close_pool(seed, s.all_constants());
  s.index_pool();
  for (const auto& m : family)
    for (const auto& f : m)
      if (!s.in_pool(f)) throw PoolIncomplete("family member sentence is not in the pool: " + f.canonical());
  s.family_ = std::move(family);
  s.family_set_ = {s.family_.begin(), s.family_.end()};
  return s;
}

ConsistencyProperty ConsistencyProperty::from_model(const BValuedModel& model, const std::vector<Formula>& pool) {
  model.require_complete();
  const auto& base = model.signature();
  for (const auto& d : model.domain())
    if (base.has_constant(d)) throw SignatureError("domain element '" + d + "' clashes with a constant name");
  auto full = base.with_constants(model.domain());
  auto m = std::make_shared<BValuedModel>(full, model.algebra(), model.domain());
  for (std::size_t i = 0; i < model.size(); ++i)
    for (std::size_t j = 0; j < model.size(); ++j) m->set_eq_directed(i, j, model.eq(i, j));
  for (const auto& r : base.relations())
    for_each_tuple(model.size(), static_cast<std::size_t>(r.arity), [&](const Tuple& t) {
      m->set_rel(r.name, t, model.rel(r.name, t));
      return true;
    });
  for (const auto& [c, x] : model.constants()) m->set_constant(c, x);
  for (std::size_t i = 0; i < model.size(); ++i) m->set_constant(model.domain()[i], i);

  return oracle(std::move(m), base, model.domain(), pool);
}

ConsistencyProperty ConsistencyProperty::oracle(std::shared_ptr<const BValuedModel> model, Signature base,
                                                std::vector<std::string> fresh, const std::vector<Formula>& pool,
                                                bool close) {
  check_constants_disjoint(base, fresh);
  ConsistencyProperty s;
  s.kind_ = Kind::ModelOracle;
  s.sig_ = std::move(base);
  s.fresh_ = std::move(fresh);
  auto full = s.full_signature();
  for (const auto& c : full.constants()) model->constant(c);
  for (const auto& f : pool) check_well_formed(f, full);
  s.pool_ = close ? close_pool(pool, s.all_constants()) : pool;
  s.pool_given_ = true;
  s.index_pool();
  for (const auto& f : s.pool_) s.pool_values_.push_back(eval(*model, f));
  s.model_ = std::move(model);
  return s;
}

ConsistencyProperty cp_from_model(const BValuedModel& m, const std::vector<Formula>& pool) {
  return ConsistencyProperty::from_model(m, pool);
}

bool ConsistencyProperty::member(const SentenceSet& s) const {
  if (kind_ == Kind::Explicit) return family_set_.contains(s);
  const auto& b = model_->algebra();
  Element v = b.top();
  for (const auto& f : s) {
    auto i = pool_index(f);
    v = b.meet(v, i ? pool_values_[*i] : eval(*model_, f));
    if (b.is_zero(v)) return false;
  }
  return true;
}

std::vector<SentenceSet> ConsistencyProperty::clause_members() const {
  if (kind_ == Kind::Explicit) return family_;
  const auto& b = model_->algebra();
  const auto& values = pool_values_;
  std::vector<SentenceSet> per_atom;
  for (auto x : b.atoms()) {
    SentenceSet t;
    for (std::size_t i = 0; i < pool_.size(); ++i)
      if (b.leq(x, values[i])) t.push_back(pool_[i]);
    per_atom.push_back(std::move(t));
  }
  std::sort(per_atom.begin(), per_atom.end());
  per_atom.erase(std::unique(per_atom.begin(), per_atom.end()), per_atom.end());
  std::vector<SentenceSet> out;
  for (const auto& t : per_atom) {
    bool dominated = std::any_of(per_atom.begin(), per_atom.end(),
                                 [&](const SentenceSet& u) { return u.size() > t.size() && set_subset(t, u); });
    if (!dominated) out.push_back(t);
  }
  return out;
}

std::vector<SentenceSet> ConsistencyProperty::enumerate_members(std::size_t max_pool) const {
  if (kind_ == Kind::Explicit) return family_;
  if (pool_.size() > max_pool)
    throw InfkitError("pool has " + std::to_string(pool_.size()) + " sentences; enumeration limit is " +
                      std::to_string(max_pool));
  std::vector<SentenceSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pool_.size()); ++mask) {
    SentenceSet s;
    for (std::size_t i = 0; i < pool_.size(); ++i)
      if (mask >> i & 1) s.push_back(pool_[i]);
    if (member(s)) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

ConsistencyProperty to_explicit(const ConsistencyProperty& s, bool maximal_only) {
  auto family = maximal_only ? s.clause_members() : s.enumerate_members();
  return ConsistencyProperty::explicit_family(s.signature(), s.fresh(), std::move(family), s.pool(), true);
}

// ---------------------------------------------------------------------------
// Clause checking

namespace {

class ClauseChecker {
 public:
  ClauseChecker(const ConsistencyProperty& s, const CpOptions& opt) : s_(s), opt_(opt) {
    all_ = s.all_constants();
    for (const auto& c : s.fresh()) fresh_.push_back(c);
  }

  CpReport run() {
    r_.members = s_.clause_members();
    for (std::size_t i = 0; i < r_.members.size(); ++i) check_member(i);
    return std::move(r_);
  }

 private:
  bool extends(const SentenceSet& m, const Formula& f, const char* clause, bool universal) {
    if (universal && !s_.in_pool(f))
      throw PoolIncomplete(std::string(clause) + " requires " + f.canonical() + ", which is not in the pool");
    return s_.member(with(m, f));
  }

  void fail(const char* clause, std::size_t i, const Formula& f, std::string detail) {
    r_.violations.push_back({clause, i, f.canonical(), std::move(detail)});
  }

  void check_member(std::size_t i) {
    const SentenceSet& m = r_.members[i];
    for (const auto& f : m) {
      switch (f.kind()) {
        case Connective::Not: {
          ++r_.instances["Con"];
          if (set_contains(m, f.body())) fail("Con", i, f, "both the sentence and its negation are present");
          ++r_.instances["Ind.1"];
          Formula t = move_neg_inside(f.body());
          if (!extends(m, t, "Ind.1", true)) fail("Ind.1", i, f, "cannot add " + t.canonical());
          break;
        }
        case Connective::And:
          for (const auto& c : f.children()) {
            ++r_.instances["Ind.2"];
            if (!extends(m, c, "Ind.2", true)) fail("Ind.2", i, f, "cannot add " + c.canonical());
          }
          break;
        case Connective::Forall:
          for (const auto& t : tuples_over(all_, f.bound_vars().size())) {
            ++r_.instances["Ind.3"];
            Formula inst = instantiate(f, t);
            if (!extends(m, inst, "Ind.3", true)) fail("Ind.3", i, f, "cannot add " + inst.canonical());
          }
          break;
        case Connective::Or: {
          ++r_.instances["Ind.4"];
          bool ok = std::any_of(f.children().begin(), f.children().end(),
                                [&](const Formula& c) { return extends(m, c, "Ind.4", false); });
          if (!ok) fail("Ind.4", i, f, "no disjunct can be added");
          break;
        }
        case Connective::Exists: {
          ++r_.instances["Ind.5"];
          bool ok = false;
          for (const auto& t : tuples_over(fresh_, f.bound_vars().size()))
            if (extends(m, instantiate(f, t), "Ind.5", false)) {
              ok = true;
              break;
            }
          if (!ok) fail("Ind.5", i, f, "no witness among the fresh constants");
          break;
        }
        case Connective::Eq:
          if (const_eq(f)) equality_clauses(i, f);
          break;
        case Connective::Atom:
          break;
      }
    }
    for (const auto& d : all_) {
      ++r_.instances["Str.3"];
      bool ok = std::any_of(fresh_.begin(), fresh_.end(), [&](const std::string& c) {
        return extends(m, Formula::eq(Term::constant(c), Term::constant(d)), "Str.3", false);
      });
      if (!ok)
        r_.violations.push_back({"Str.3", i, d, "no fresh constant c with c=" + d + " can be added"});
    }
  }

  void equality_clauses(std::size_t i, const Formula& eqf) {
    const SentenceSet& m = r_.members[i];
    const std::string& c = eqf.terms()[0].name;
    const std::string& d = eqf.terms()[1].name;
    ++r_.instances["Str.1"];
    Formula sym = Formula::eq(eqf.terms()[1], eqf.terms()[0]);
    if (!extends(m, sym, "Str.1", true)) fail("Str.1", i, eqf, "cannot add " + sym.canonical());
    if (c == d) return;
    for (const auto& phi : m) {
      if (opt_.str2_atomic_only && !phi.is_atomic()) continue;
      for (const auto& v : replacement_variants(phi, d, c)) {
        if (!phi.is_atomic() && !s_.in_pool(v)) {
          ++r_.str2_out_of_pool;
          continue;
        }
        ++r_.instances["Str.2"];
        if (!extends(m, v, "Str.2", true))
          fail("Str.2", i, phi, "with " + eqf.canonical() + " cannot add " + v.canonical());
      }
    }
  }

  const ConsistencyProperty& s_;
  CpOptions opt_;
  std::vector<std::string> all_;
  std::vector<std::string> fresh_;
  CpReport r_;
};

}  // namespace

CpReport check_cp(const ConsistencyProperty& s, const CpOptions& opt) { return ClauseChecker(s, opt).run(); }

SmaxReport check_smax(const ConsistencyProperty& s, std::size_t width) {
  SmaxReport r;
  r.members = s.clause_members();
  for (std::size_t i = 0; i < r.members.size(); ++i) {
    const auto& m = r.members[i];
    for (const auto& f : s.pool()) {
      if (width && max_width(f) > width) continue;
      ++r.instances;
      if (s.member(with(m, f)) || s.member(with(m, Formula::negation(f)))) continue;
      r.violations.push_back({"S-Max", i, f.canonical(), "neither the sentence nor its negation can be added"});
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Forcing poset

std::optional<std::size_t> ForcingPoset::find(const SentenceSet& s) const {
  auto it = index.find(s);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> ForcingPoset::below(std::size_t q) const {
  std::vector<std::size_t> out;
  const Bitset& d = poset.down(q);
  for (std::size_t p = d.find_first(); p != Bitset::npos; p = d.find_next(p)) out.push_back(p);
  return out;
}

bool ForcingPoset::is_minimal(std::size_t p) const { return poset.down(p).count() == 1; }

ForcingPoset forcing_poset(const ConsistencyProperty& s, std::size_t max_conditions) {
  ForcingPoset fp;
  auto members = s.clause_members();
  std::set<Formula> used;
  for (const auto& m : members) used.insert(m.begin(), m.end());
  fp.universe.assign(used.begin(), used.end());
  const std::size_t u = fp.universe.size();
  auto idx = [&](const Formula& f) {
    return static_cast<std::size_t>(std::lower_bound(fp.universe.begin(), fp.universe.end(), f) - fp.universe.begin());
  };
  std::set<Bitset> seen;
  for (const auto& m : members) {
    if (m.size() >= 24 || (std::size_t{1} << m.size()) > max_conditions)
      throw InfkitError("forcing poset too large: a member has " + std::to_string(m.size()) + " sentences");
    std::vector<std::size_t> pos;
    for (const auto& f : m) pos.push_back(idx(f));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m.size()); ++mask) {
      Bitset b(u);
      for (std::size_t i = 0; i < pos.size(); ++i)
        if (mask >> i & 1) b.set(pos[i]);
      seen.insert(std::move(b));
      if (seen.size() > max_conditions) throw InfkitError("forcing poset too large");
    }
  }
  std::vector<std::pair<SentenceSet, Bitset>> conds;
  for (const auto& b : seen) {
    SentenceSet c;
    for (std::size_t i = b.find_first(); i != Bitset::npos; i = b.find_next(i)) c.push_back(fp.universe[i]);
    conds.emplace_back(std::move(c), b);
  }
  std::sort(conds.begin(), conds.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  const std::size_t n = conds.size();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    fp.conditions.push_back(conds[i].first);
    fp.masks.push_back(conds[i].second);
    fp.index[conds[i].first] = i;
    names.push_back(set_string(conds[i].first));
  }
  // q <= p iff q is a superset of p.
  std::vector<Bitset> down(n, Bitset(n));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      if (fp.masks[p].is_subset_of(fp.masks[q])) down[p].set(q);
  fp.poset = FinPoset::from_down_sets(std::move(names), std::move(down));
  return fp;
}

// ---------------------------------------------------------------------------
// Dense sets and generic filters

std::vector<DenseSet> dense_sets(const ConsistencyProperty& s, const ForcingPoset& p) {
  std::vector<DenseSet> out;
  const std::size_t n = p.conditions.size();
  auto finish = [&](DenseSet& d, const std::vector<std::size_t>& scope) {
    Bitset in(n);
    for (auto x : d.members) in.set(x);
    for (auto q : scope)
      if (!p.poset.down(q).intersects(in)) {
        d.dense = false;
        d.failures.push_back(q);
      }
  };
  std::vector<std::string> fresh = s.fresh();
  for (const auto& f : p.universe) {
    if (f.kind() != Connective::Or && f.kind() != Connective::Exists) continue;
    DenseSet d;
    d.kind = f.kind() == Connective::Or ? "or" : "exists";
    d.name = "D[" + f.canonical() + "]";
    d.sentence = f;
    std::vector<Formula> targets;
    if (f.kind() == Connective::Or) targets.assign(f.children().begin(), f.children().end());
    else
      for (const auto& t : tuples_over(fresh, f.bound_vars().size())) targets.push_back(instantiate(f, t));
    std::vector<std::size_t> scope;
    for (std::size_t q = 0; q < n; ++q) {
      const auto& c = p.conditions[q];
      if (set_contains(c, f)) scope.push_back(q);
      if (std::any_of(targets.begin(), targets.end(), [&](const Formula& t) { return set_contains(c, t); }))
        d.members.push_back(q);
    }
    finish(d, scope);
    out.push_back(std::move(d));
  }
  for (const auto& dconst : s.signature().constants()) {
    DenseSet d;
    d.kind = "const";
    d.name = "D[" + dconst + "]";
    d.constant = dconst;
    for (std::size_t q = 0; q < n; ++q) {
      const auto& c = p.conditions[q];
      bool hit = std::any_of(fresh.begin(), fresh.end(), [&](const std::string& x) {
        return set_contains(c, Formula::eq(Term::constant(x), Term::constant(dconst)));
      });
      if (hit) d.members.push_back(q);
    }
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    finish(d, all);
    out.push_back(std::move(d));
  }
  return out;
}

PosetFilter generic_filter(const ConsistencyProperty& s, const ForcingPoset& p, const SentenceSet& root) {
  auto r = p.find(normalize_set(root));
  if (!r) throw InfkitError("root " + set_string(root) + " is not a condition");
  std::optional<std::size_t> best;
  for (auto q : p.below(*r))
    if (p.is_minimal(q) && (!best || p.conditions[q] < p.conditions[*best])) best = q;
  PosetFilter f;
  f.generator = *best;
  f.sigma = p.conditions[*best];
  const Bitset& up = p.poset.up(*best);
  for (std::size_t q = up.find_first(); q != Bitset::npos; q = up.find_next(q)) f.members.push_back(q);

  // [sigma]^{<w} = F: every finite subset of sigma is a member and nothing else is.
  const std::size_t k = f.sigma.size();
  if (k < 24) {
    std::set<std::size_t> expected;
    bool all_found = true;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      SentenceSet sub;
      for (std::size_t i = 0; i < k; ++i)
        if (mask >> i & 1) sub.push_back(f.sigma[i]);
      auto q = p.find(sub);
      if (!q) {
        all_found = false;
        break;
      }
      expected.insert(*q);
    }
    f.finite_subsets_match = all_found && expected == std::set<std::size_t>(f.members.begin(), f.members.end());
  }

  Bitset in_f(p.conditions.size());
  for (auto q : f.members) in_f.set(q);
  for (const auto& d : dense_sets(s, p)) {
    if (!d.dense) continue;
    if (d.sentence && !set_contains(f.sigma, *d.sentence)) continue;
    bool met = std::any_of(d.members.begin(), d.members.end(), [&](std::size_t q) { return in_f.test(q); });
    if (!met) f.unmet_dense.push_back(d.name);
  }
  return f;
}

// ---------------------------------------------------------------------------
// Term model

std::size_t TermModel::class_index(const std::string& c) const {
  auto it = std::find(constants.begin(), constants.end(), c);
  if (it == constants.end()) throw SignatureError("unknown constant '" + c + "'");
  return class_of[it - constants.begin()];
}

TarskiStructure TermModel::as_tarski() const {
  TarskiStructure t;
  t.size = classes.size();
  t.relations = relations;
  for (std::size_t i = 0; i < constants.size(); ++i) t.constants[constants[i]] = class_of[i];
  return t;
}

TermModel term_model_from_sigma(const SentenceSet& sigma, const Signature& sig,
                                const std::vector<std::string>& constants) {
  TermModel a;
  a.constants = constants;
  const std::size_t n = constants.size();
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < n; ++i) pos[constants[i]] = i;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& f : sigma) {
    if (!const_eq(f)) continue;
    auto l = pos.find(f.terms()[0].name), r = pos.find(f.terms()[1].name);
    if (l == pos.end() || r == pos.end()) {
      a.issues.push_back("equality mentions an unknown constant: " + f.canonical());
      continue;
    }
    parent[root(l->second)] = root(r->second);
  }
  // Classes numbered by their first constant.
  std::map<std::size_t, std::size_t> class_id;
  a.class_of.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, fresh] = class_id.emplace(root(i), class_id.size());
    if (fresh) a.classes.emplace_back();
    a.class_of[i] = it->second;
    a.classes[it->second].push_back(constants[i]);
  }
  for (auto& c : a.classes) std::sort(c.begin(), c.end());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a.class_of[i] == a.class_of[j] &&
          !set_contains(sigma, Formula::eq(Term::constant(constants[i]), Term::constant(constants[j]))))
        a.issues.push_back("classes are not given by the equalities: missing " + constants[i] + "=" + constants[j]);

  for (const auto& rel : sig.relations()) a.relations[rel.name];
  for (const auto& f : sigma) {
    if (f.kind() != Connective::Atom) continue;
    Tuple cls;
    bool known = true;
    for (const auto& t : f.terms()) {
      auto it = pos.find(t.name);
      if (!t.is_const() || it == pos.end()) {
        known = false;
        break;
      }
      cls.push_back(a.class_of[it->second]);
    }
    if (!known) {
      a.issues.push_back("atom mentions an unknown constant: " + f.canonical());
      continue;
    }
    a.relations[f.relation()].insert(cls);
    // Every choice of representatives must carry the atom as well.
    std::vector<std::vector<std::string>> reps;
    for (auto c : cls) reps.push_back(a.classes[c]);
    std::vector<std::size_t> sizes;
    for (const auto& r : reps) sizes.push_back(r.size());
    Tuple idx(reps.size(), 0);
    while (true) {
      std::vector<Term> args;
      for (std::size_t k = 0; k < reps.size(); ++k) args.push_back(Term::constant(reps[k][idx[k]]));
      Formula g = Formula::atom(f.relation(), args);
      if (!set_contains(sigma, g))
        a.issues.push_back("relation depends on representatives: " + f.canonical() + " but not " + g.canonical());
      std::size_t k = reps.size();
      while (k > 0) {
        if (++idx[k - 1] < sizes[k - 1]) break;
        idx[k - 1] = 0;
        --k;
      }
      if (k == 0) break;
    }
  }
  std::sort(a.issues.begin(), a.issues.end());
  a.issues.erase(std::unique(a.issues.begin(), a.issues.end()), a.issues.end());
  return a;
}

TermModel build_AF(const ConsistencyProperty& s, const PosetFilter& f) {
  auto a = term_model_from_sigma(f.sigma, s.signature(), s.all_constants());
  if (!a.issues.empty()) {
    std::string msg = "term model is not well defined: " + a.issues.front();
    if (a.issues.size() > 1) msg += " (and " + std::to_string(a.issues.size() - 1) + " more)";
    throw IllDefined(msg);
  }
  return a;
}

RealizeReport verify_realizes(const TermModel& a, const SentenceSet& sigma) {
  RealizeReport r;
  auto t = a.as_tarski();
  for (const auto& f : sigma) {
    ++r.checked;
    try {
      if (!tarski_eval(t, f)) r.failures.push_back(f.canonical());
    } catch (const InfkitError& e) {
      r.failures.push_back(f.canonical() + ": " + e.what());
    }
  }
  return r;
}

IffReport check_kappa_omega_iff(const ConsistencyProperty& s, const PosetFilter& f) {
  IffReport r;
  auto a = build_AF(s, f);
  auto t = a.as_tarski();
  for (const auto& psi : s.pool()) {
    ++r.checked;
    bool truth = tarski_eval(t, psi);
    bool in = set_contains(f.sigma, psi);
    if (in && !truth) r.forward_failures.push_back(psi.canonical());
    if (truth && !in) r.reverse_failures.push_back(psi.canonical());
  }
  return r;
}

}  // namespace infkit
