#include "infkit/mansfield.hpp"

#include <algorithm>

namespace infkit {

// ---------------------------------------------------------------------------
// Frame

MansfieldFrame::MansfieldFrame(const ConsistencyProperty& s, const SentenceSet& root)
    : s_(&s), root_(normalize_set(root)), poset_(forcing_poset(s)) {
  auto r = poset_.find(root_);
  if (!r) throw InfkitError("root " + set_string(root_) + " is not a condition");
  below_ = poset_.below(*r);
  const std::size_t n = below_.size();
  std::vector<std::string> names;
  std::vector<Bitset> down(n, Bitset(n));
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(poset_.poset.name(below_[i]));
    for (std::size_t j = 0; j < n; ++j)
      if (poset_.poset.leq(below_[j], below_[i])) down[i].set(j);
  }
  sub_ = std::make_shared<const FinPoset>(FinPoset::from_down_sets(std::move(names), std::move(down)));
  algebra_ = FinBooleanAlgebra::regular_open(sub_);
}

Element MansfieldFrame::reg_n(std::size_t i) const { return algebra_.from_open_set(regularize(*sub_, sub_->down(i))); }

Bitset MansfieldFrame::support(const Formula& phi) const {
  Bitset u(below_.size());
  for (std::size_t i = 0; i < below_.size(); ++i)
    if (set_contains(poset_.conditions[below_[i]], phi)) u |= sub_->down(i);
  return u;
}

Element MansfieldFrame::L(const Formula& phi) const { return algebra_.from_open_set(regularize(*sub_, support(phi))); }

std::string MansfieldFrame::open_set_string(Element e) const {
  Bitset s = algebra_.open_set(e);
  std::string out = "{";
  bool first = true;
  for (std::size_t i = s.find_first(); i != Bitset::npos; i = s.find_next(i)) {
    if (!first) out += "; ";
    first = false;
    out += sub_->name(i);
  }
  return out + "}";
}

Element L_value(const MansfieldFrame& frame, const Formula& phi) { return frame.L(phi); }

// ---------------------------------------------------------------------------
// Model

MansfieldResult mansfield_build(const ConsistencyProperty& s, const SentenceSet& root, bool require_cp) {
  if (require_cp) {
    auto rep = check_cp(s);
    if (!rep.ok()) {
      const auto& v = rep.violations.front();
      throw CpFailed("consistency property fails " + v.clause + " at " + v.sentence + ": " + v.detail);
    }
  }
  auto frame = std::make_shared<MansfieldFrame>(s, root);
  const auto consts = s.all_constants();
  BValuedModel m(s.full_signature(), frame->algebra(), consts);
  const std::size_t n = consts.size();
  for (std::size_t i = 0; i < n; ++i) {
    m.set_constant(consts[i], i);
    for (std::size_t j = 0; j < n; ++j)
      m.set_eq_directed(i, j, frame->L(Formula::eq(Term::constant(consts[i]), Term::constant(consts[j]))));
  }
  for (const auto& rel : s.signature().relations())
    for_each_tuple(n, static_cast<std::size_t>(rel.arity), [&](const Tuple& t) {
      std::vector<Term> args;
      for (auto x : t) args.push_back(Term::constant(consts[x]));
      m.set_rel(rel.name, t, frame->L(Formula::atom(rel.name, args)));
      return true;
    });
  MansfieldResult r{frame, std::move(m), {}, {}};
  r.model_check = check_model(r.model);
  for (const auto& f : frame->root())
    if (!frame->algebra().is_top(eval(r.model, f))) r.root_failures.push_back(f.canonical());
  return r;
}

ClaimReport verify_claim1(const MansfieldFrame& frame, const std::vector<Formula>& pool) {
  ClaimReport r;
  const auto& p = frame.poset();
  const auto& conds = frame.conditions();
  const auto& b = frame.algebra();
  for (const auto& phi : pool) {
    Element l = frame.L(phi);
    for (std::size_t i = 0; i < conds.size(); ++i) {
      bool hyp = true;
      for (auto t : p.below(conds[i]))
        if (!p.find(set_union(p.conditions[t], {phi}))) {
          hyp = false;
          break;
        }
      if (!hyp) {
        ++r.not_applicable;
        continue;
      }
      ++r.checked;
      if (!b.leq(frame.reg_n(i), l))
        r.failures.push_back("Reg(N_s) not below L(" + phi.canonical() + ") for s = " +
                             set_string(p.conditions[conds[i]]));
    }
  }
  return r;
}

ClaimReport verify_claim2(const MansfieldResult& m, const std::vector<Formula>& pool) {
  ClaimReport r;
  const auto& b = m.frame->algebra();
  for (const auto& phi : pool) {
    ++r.checked;
    Element l = m.frame->L(phi);
    Element v = eval(m.model, phi);
    if (!b.leq(l, v))
      r.failures.push_back("L(" + phi.canonical() + ") = " + m.frame->open_set_string(l) + " exceeds its value " +
                           m.frame->open_set_string(v));
  }
  return r;
}

// ---------------------------------------------------------------------------
// From an algebra to a consistency property

std::string element_constant(Element e) { return "c_" + std::to_string(e.bits); }

Element AlgebraCp::pi_of(const SentenceSet& s) const { return eval(*model, Formula::conj(s)); }

namespace {

Formula in_g(const std::string& c) { return Formula::atom("inG", {Term::constant(c)}); }

}  // namespace

AlgebraCp cp_from_algebra(const FinBooleanAlgebra& b) {
  if (b.atom_count() == 0) throw TrivialAlgebra("algebra has 0 = 1");
  AlgebraCp out;
  out.algebra = b;
  auto els = b.elements();
  std::vector<std::string> dom;
  for (auto e : els) {
    out.names.push_back(element_constant(e));
    dom.push_back("b_" + std::to_string(e.bits));
  }
  Signature base({{"inG", 1}}, {});
  auto full = base.with_constants(out.names);
  auto model = std::make_shared<BValuedModel>(full, b, dom);
  for (std::size_t i = 0; i < els.size(); ++i) {
    model->set_constant(out.names[i], i);
    model->set_rel("inG", {i}, els[i]);
  }
  out.model = model;

  std::vector<Formula> pool;
  for (const auto& c : out.names) {
    pool.push_back(in_g(c));
    pool.push_back(Formula::negation(in_g(c)));
    pool.push_back(Formula::eq(Term::constant(c), Term::constant(c)));
  }
  for (std::size_t i = 0; i < out.names.size(); ++i)
    for (std::size_t j = i + 1; j < out.names.size(); ++j) {
      pool.push_back(Formula::conj({in_g(out.names[i]), in_g(out.names[j])}));
      pool.push_back(Formula::disj({in_g(out.names[i]), in_g(out.names[j])}));
    }
  Formula body = Formula::atom("inG", {Term::var("v0")});
  Formula ex = Formula::exists({"v0"}, body), all = Formula::forall({"v0"}, body);
  for (const auto& f : {ex, all}) {
    pool.push_back(f);
    pool.push_back(Formula::negation(f));
  }
  out.property = std::make_shared<const ConsistencyProperty>(ConsistencyProperty::oracle(model, base, out.names, pool));

  std::vector<Formula> small;
  for (std::size_t i = 0; i < els.size(); ++i)
    if (!b.is_zero(els[i])) small.push_back(in_g(out.names[i]));
  out.atoms_only =
      std::make_shared<const ConsistencyProperty>(ConsistencyProperty::oracle(model, base, out.names, small, false));
  out.poset = std::make_shared<const ForcingPoset>(forcing_poset(*out.atoms_only));

  const auto& p = *out.poset;
  const std::size_t n = p.conditions.size();
  for (const auto& c : p.conditions) out.pi.push_back(out.pi_of(c));
  auto& rep = out.embedding;
  rep.conditions = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (b.is_zero(out.pi[i])) {
      rep.dense_image = false;
      rep.failures.push_back("pi is zero at " + set_string(p.conditions[i]));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (p.poset.leq(i, j) && !b.leq(out.pi[i], out.pi[j])) {
        rep.order_preserving = false;
        rep.failures.push_back("order not preserved: " + set_string(p.conditions[i]) + " <= " +
                               set_string(p.conditions[j]));
      }
      bool incompatible = !p.poset.compatible(i, j);
      bool disjoint = b.is_zero(b.meet(out.pi[i], out.pi[j]));
      if (incompatible != disjoint) {
        rep.incompatibility_preserving = false;
        rep.failures.push_back("incompatibility not preserved: " + set_string(p.conditions[i]) + ", " +
                               set_string(p.conditions[j]));
      }
    }
  }
  // Dense, indeed onto B+: the singleton {inG(c_b)} has value b.
  for (std::size_t i = 0; i < els.size(); ++i) {
    if (b.is_zero(els[i])) continue;
    auto q = p.find({in_g(out.names[i])});
    if (!q || out.pi[*q] != els[i]) {
      rep.dense_image = false;
      rep.failures.push_back("no condition with value " + b.to_string(els[i]));
    }
  }
  return out;
}

RoundtripReport roundtrip_check(const FinBooleanAlgebra& b) { return roundtrip_check(cp_from_algebra(b)); }

RoundtripReport roundtrip_check(const AlgebraCp& cp) {
  RoundtripReport r;
  const auto& b = cp.algebra;
  const auto& p = *cp.poset;
  r.conditions = p.conditions.size();
  auto ro = ro_completion(p.poset);
  const auto& a = ro.algebra;
  r.ro_atoms = a.atom_count();
  r.algebra_atoms = b.atom_count();
  auto fail = [&](std::string msg) {
    r.isomorphic = false;
    r.failures.push_back(std::move(msg));
  };
  if (r.ro_atoms != r.algebra_atoms) fail("atom counts differ");
  if (a.atom_count() > 20) {
    fail("completion too large to compare");
    return r;
  }
  // h(A) = join of pi(p) over the points p of the regular open set A.
  auto h = [&](Element x) {
    Element out = b.bottom();
    Bitset s = a.open_set(x);
    for (std::size_t i = s.find_first(); i != Bitset::npos; i = s.find_next(i)) out = b.join(out, cp.pi[i]);
    return out;
  };
  std::set<Element> images;
  for (auto x : a.atoms()) {
    Element y = h(x);
    if (!b.is_atom(y)) fail("image of an atom is not an atom: " + b.to_string(y));
    images.insert(y);
  }
  if (static_cast<int>(images.size()) != b.atom_count()) fail("atoms are not mapped bijectively");
  if (!r.isomorphic) return r;
  auto els = a.elements();
  for (auto x : els) {
    if (h(a.complement(x)) != b.complement(h(x))) fail("complement not preserved at " + a.to_string(x));
    for (auto y : els) {
      if (h(a.meet(x, y)) != b.meet(h(x), h(y))) fail("meet not preserved");
      if (h(a.join(x, y)) != b.join(h(x), h(y))) fail("join not preserved");
    }
  }
  return r;
}

}  // namespace infkit
