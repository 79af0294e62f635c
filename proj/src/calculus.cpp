#include "infkit/calculus.hpp"

#include <algorithm>

#include "infkit/bvmodel.hpp"

namespace infkit {

Sequent Sequent::make(std::vector<Formula> ante, std::vector<Formula> succ) {
  return {normalize_set(std::move(ante)), normalize_set(std::move(succ))};
}

std::string Sequent::to_string() const {
  auto side = [](const std::vector<Formula>& fs) {
    std::string s;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (i) s += ", ";
      s += fs[i].canonical();
    }
    return s;
  };
  return side(ante) + " |- " + side(succ);
}

const std::vector<std::string>& rule_names() {
  static const std::vector<std::string> names = {"axiom",    "cut",        "substitution", "weakening",
                                                 "neg_left", "neg_right",  "conj_left",    "conj_right",
                                                 "quant_left", "quant_right", "eq1",        "eq2"};
  return names;
}

Formula to_calculus_fragment(const Formula& f) {
  auto map_children = [](std::span<const Formula> cs, bool negate) {
    std::vector<Formula> out;
    for (const auto& c : cs) {
      Formula g = to_calculus_fragment(c);
      out.push_back(negate ? Formula::negation(g) : g);
    }
    return out;
  };
  std::vector<std::string> vars(f.bound_vars().begin(), f.bound_vars().end());
  switch (f.kind()) {
    case Connective::Atom:
    case Connective::Eq:
      return f;
    case Connective::Not:
      return Formula::negation(to_calculus_fragment(f.body()));
    case Connective::And:
      return Formula::conj(map_children(f.children(), false));
    case Connective::Or:
      return Formula::negation(Formula::conj(map_children(f.children(), true)));
    case Connective::Forall:
      return Formula::forall(vars, to_calculus_fragment(f.body()));
    case Connective::Exists:
      return Formula::negation(Formula::forall(vars, Formula::negation(to_calculus_fragment(f.body()))));
  }
  return f;
}

bool in_calculus_fragment(const Formula& f) {
  if (f.kind() == Connective::Or || f.kind() == Connective::Exists) return false;
  for (const auto& c : f.children())
    if (!in_calculus_fragment(c)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Proof checking

namespace {

using Side = std::vector<Formula>;

Side plus(Side s, const Formula& f) {
  if (!std::binary_search(s.begin(), s.end(), f)) s.insert(std::upper_bound(s.begin(), s.end(), f), f);
  return s;
}

Side plus_all(Side s, std::span<const Formula> fs) {
  for (const auto& f : fs) s = plus(std::move(s), f);
  return s;
}

Side minus(Side s, const Formula& f) {
  auto it = std::lower_bound(s.begin(), s.end(), f);
  if (it != s.end() && *it == f) s.erase(it);
  return s;
}

bool has(const Side& s, const Formula& f) { return std::binary_search(s.begin(), s.end(), f); }

bool subset(const Side& a, const Side& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

// The side set next to a principal formula may or may not contain it.
std::vector<Side> contexts(const Side& s, const Formula& principal) {
  if (!has(s, principal)) return {};
  return {minus(s, principal), s};
}

struct Reject {
  std::string reason;
};

class StepChecker {
 public:
  StepChecker(const Proof& p, std::size_t i) : p_(p), i_(i), step_(p.steps[i]), c_(step_.sequent) {}

  void run() {
    const Rule& r = step_.rule;
    for (const auto& f : c_.ante) fragment(f, "antecedent");
    for (const auto& f : c_.succ) fragment(f, "succedent");
    if (r.formula) fragment(*r.formula, "rule formula");
    for (auto q : r.premises)
      if (q >= i_) throw Reject{"premise index " + std::to_string(q) + " does not precede the step"};
    const auto& n = r.name;
    if (n == "axiom") axiom();
    else if (n == "cut") cut();
    else if (n == "substitution") substitution();
    else if (n == "weakening") weakening();
    else if (n == "neg_left") neg_left();
    else if (n == "neg_right") neg_right();
    else if (n == "conj_left") conj_left();
    else if (n == "conj_right") conj_right();
    else if (n == "quant_left") quant_left();
    else if (n == "quant_right") quant_right();
    else if (n == "eq1") eq1();
    else if (n == "eq2") eq2();
    else throw Reject{"unknown rule '" + n + "'"};
  }

 private:
  static void fragment(const Formula& f, const char* where) {
    if (!in_calculus_fragment(f))
      throw Reject{std::string(where) + " formula outside the not/and/forall fragment: " + f.canonical()};
  }

  void premises(std::size_t k) const {
    if (step_.rule.premises.size() != k)
      throw Reject{step_.rule.name + " takes " + std::to_string(k) + " premise(s), got " +
                   std::to_string(step_.rule.premises.size())};
  }

  const Sequent& prem(std::size_t k) const { return p_.steps[step_.rule.premises[k]].sequent; }

  const Formula& param() const {
    if (!step_.rule.formula) throw Reject{step_.rule.name + " needs a formula parameter"};
    return *step_.rule.formula;
  }

  const Formula& param_of(Connective k, const char* what) const {
    const Formula& f = param();
    if (f.kind() != k) throw Reject{std::string("rule formula must be ") + what + ": " + f.canonical()};
    return f;
  }

  void axiom() const {
    premises(0);
    if (step_.rule.formula) {
      if (!has(c_.ante, *step_.rule.formula) || !has(c_.succ, *step_.rule.formula))
        throw Reject{"axiom formula must occur on both sides"};
      return;
    }
    for (const auto& f : c_.ante)
      if (has(c_.succ, f)) return;
    throw Reject{"no formula occurs on both sides"};
  }

  void cut() const {
    premises(2);
    const Formula& phi = param();
    const Sequent &left = prem(0), &right = prem(1);
    if (!has(left.ante, phi)) throw Reject{"cut formula missing from the antecedent of the first premise"};
    if (!has(right.succ, phi)) throw Reject{"cut formula missing from the succedent of the second premise"};
    bool ante = false, succ = false;
    for (const auto& g : contexts(left.ante, phi)) ante = ante || plus_all(g, right.ante) == c_.ante;
    for (const auto& d : contexts(right.succ, phi)) succ = succ || plus_all(left.succ, d) == c_.succ;
    if (!ante) throw Reject{"cut conclusion antecedent is not the union of the premise contexts"};
    if (!succ) throw Reject{"cut conclusion succedent is not the union of the premise contexts"};
  }

  void substitution() const {
    premises(1);
    const Sequent& p = prem(0);
    Side ante, succ;
    try {
      for (const auto& f : p.ante) ante.push_back(substitute(f, step_.rule.map));
      for (const auto& f : p.succ) succ.push_back(substitute(f, step_.rule.map));
    } catch (const CaptureError& e) {
      throw Reject{std::string("substitution captures a variable: ") + e.what()};
    }
    if (Sequent::make(ante, succ) != c_) throw Reject{"conclusion is not the substituted premise"};
  }

  void weakening() const {
    premises(1);
    const Sequent& p = prem(0);
    if (!subset(p.ante, c_.ante) || !subset(p.succ, c_.succ)) throw Reject{"premise is not contained in the conclusion"};
  }

  void neg_left() const {
    premises(1);
    const Formula& phi = param();
    const Sequent& p = prem(0);
    if (plus(p.ante, Formula::negation(phi)) != c_.ante) throw Reject{"antecedent must be the premise's plus the negation"};
    if (plus(c_.succ, phi) != p.succ) throw Reject{"premise succedent must be the conclusion's plus the formula"};
  }

  void neg_right() const {
    premises(1);
    const Formula& phi = param();
    const Sequent& p = prem(0);
    if (plus(p.succ, Formula::negation(phi)) != c_.succ) throw Reject{"succedent must be the premise's plus the negation"};
    if (plus(c_.ante, phi) != p.ante) throw Reject{"premise antecedent must be the conclusion's plus the formula"};
  }

  void conj_left() const {
    premises(1);
    const Formula& f = param_of(Connective::And, "a conjunction");
    const Sequent& p = prem(0);
    if (p.succ != c_.succ) throw Reject{"succedent must be unchanged"};
    for (const auto& g : contexts(c_.ante, f))
      if (plus_all(g, f.children()) == p.ante) return;
    throw Reject{"premise antecedent must be the context plus the conjuncts"};
  }

  void conj_right() const {
    const Formula& f = param_of(Connective::And, "a conjunction");
    auto kids = f.children();
    premises(kids.size());
    auto ctx = contexts(c_.succ, f);
    if (ctx.empty()) throw Reject{"conjunction missing from the succedent"};
    for (const auto& d : ctx) {
      bool ok = true;
      for (std::size_t k = 0; k < kids.size() && ok; ++k)
        ok = prem(k).ante == c_.ante && prem(k).succ == plus(d, kids[k]);
      if (ok) return;
    }
    throw Reject{"premise k must prove conjunct k in the shared context"};
  }

  Formula instance(const Formula& all, const std::vector<Term>& terms) const {
    auto vars = all.bound_vars();
    if (terms.size() != vars.size()) throw Reject{"need one term per bound variable"};
    Substitution m;
    for (std::size_t i = 0; i < vars.size(); ++i) m[vars[i]] = terms[i];
    try {
      return substitute(all.body(), m);
    } catch (const CaptureError& e) {
      throw Reject{std::string("instantiation captures a variable: ") + e.what()};
    }
  }

  void quant_left() const {
    premises(1);
    const Formula& f = param_of(Connective::Forall, "a universal formula");
    const Sequent& p = prem(0);
    Formula inst = instance(f, step_.rule.terms);
    if (p.succ != c_.succ) throw Reject{"succedent must be unchanged"};
    for (const auto& g : contexts(c_.ante, f))
      if (plus(g, inst) == p.ante) return;
    throw Reject{"premise antecedent must be the context plus the instance"};
  }

  void quant_right() const {
    premises(1);
    const Formula& f = param_of(Connective::Forall, "a universal formula");
    const auto& w = step_.rule.vars;
    std::set<std::string> distinct(w.begin(), w.end());
    if (distinct.size() != w.size()) throw Reject{"eigenvariables must be distinct"};
    std::vector<Term> terms;
    for (const auto& v : w) terms.push_back(Term::var(v));
    Formula inst = instance(f, terms);
    const Sequent& p = prem(0);
    if (p.ante != c_.ante) throw Reject{"antecedent must be unchanged"};
    for (const auto& d : contexts(c_.succ, f)) {
      if (plus(d, inst) != p.succ) continue;
      std::vector<Formula> side = c_.ante;
      side.insert(side.end(), d.begin(), d.end());
      side.push_back(f);
      for (const auto& g : side) {
        auto fv = free_vars(g);
        for (const auto& v : w)
          if (fv.contains(v))
            throw Reject{"eigenvariable condition: " + v + " occurs free in " + g.canonical()};
      }
      return;
    }
    throw Reject{"premise succedent must be the context plus the instance"};
  }

  void eq1() const {
    premises(0);
    if (c_.ante.size() != 1 || c_.succ.size() != 1 || c_.ante[0].kind() != Connective::Eq)
      throw Reject{"eq1 concludes exactly t1=t2 |- t2=t1"};
    auto t = c_.ante[0].terms();
    if (c_.succ[0] != Formula::eq(t[1], t[0])) throw Reject{"eq1 succedent must swap the equation"};
  }

  void eq2() const {
    premises(0);
    const Formula& phi = param();
    const auto& r = step_.rule;
    std::set<std::string> distinct(r.vars.begin(), r.vars.end());
    if (distinct.size() != r.vars.size()) throw Reject{"eq2 variables must be distinct"};
    if (r.from.size() != r.vars.size() || r.to.size() != r.vars.size())
      throw Reject{"eq2 needs one source and one target term per variable"};
    Substitution at_t, at_u;
    Side ante;
    for (std::size_t i = 0; i < r.vars.size(); ++i) {
      at_t[r.vars[i]] = r.from[i];
      at_u[r.vars[i]] = r.to[i];
      ante = plus(ante, Formula::eq(r.to[i], r.from[i]));
    }
    try {
      ante = plus(ante, substitute(phi, at_t));
      if (c_.succ != Side{substitute(phi, at_u)}) throw Reject{"eq2 succedent must be the formula at the target terms"};
    } catch (const CaptureError& e) {
      throw Reject{std::string("eq2 substitution captures a variable: ") + e.what()};
    }
    if (c_.ante != ante) throw Reject{"eq2 antecedent must be the equations plus the formula at the source terms"};
  }

  const Proof& p_;
  std::size_t i_;
  const ProofStep& step_;
  const Sequent& c_;
};

}  // namespace

ProofCheck check_proof(const Proof& p) {
  if (p.steps.empty()) return {false, 0, "proof has no steps"};
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    try {
      StepChecker(p, i).run();
    } catch (const Reject& r) {
      return {false, i, r.reason};
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Soundness sampling

SoundnessReport soundness_sample(const Sequent& goal, const ModelBounds& bounds, std::size_t n, std::uint64_t seed,
                                 bool stop_at_first) {
  std::vector<Formula> all = goal.ante;
  all.insert(all.end(), goal.succ.begin(), goal.succ.end());
  Signature sig = infer_signature(all);
  VarSet fv;
  for (const auto& f : all) {
    auto v = free_vars(f);
    fv.insert(v.begin(), v.end());
  }
  std::vector<std::string> vars(fv.begin(), fv.end());
  Formula lhs = Formula::conj(goal.ante), rhs = Formula::disj(goal.succ);
  Rng rng(seed);
  SoundnessReport r;
  for (std::size_t s = 1; s <= n; ++s) {
    ++r.samples;
    BValuedModel m = random_model(sig, bounds, rng);
    const auto& b = m.algebra();
    bool violated = false;
    for_each_tuple(m.size(), vars.size(), [&](const Tuple& t) {
      Assignment a;
      for (std::size_t i = 0; i < vars.size(); ++i) a[vars[i]] = t[i];
      Element l = eval(m, lhs, a), rr = eval(m, rhs, a);
      if (b.leq(l, rr)) return true;
      violated = true;
      if (!r.first_violation) {
        r.first_violation = s;
        r.first_detail = "sample " + std::to_string(s) + ": antecedent " + b.to_string(l) + " not below succedent " +
                         b.to_string(rr) + " over " + std::to_string(b.atom_count()) + " atom(s), domain " +
                         std::to_string(m.size());
      }
      return false;
    });
    if (violated) {
      ++r.violations;
      if (stop_at_first) break;
    }
  }
  return r;
}

}  // namespace infkit
