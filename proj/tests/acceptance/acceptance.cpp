// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Expected values come from independent computations in this file
// (bitmask topology, coordinatewise evaluation at an atom, direct meets).

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "infkit/corpus.hpp"
#include "infkit/mansfield.hpp"
#include "infkit/quotient.hpp"
#include "infkit/sampling.hpp"

using namespace infkit;

namespace {

const std::filesystem::path kCorpus = INFKIT_CORPUS_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> problems;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (problems.size() < 8) problems.push_back(what);
    }
  }
};

Formula F(const Json& j) { return parse_formula(j); }
Term c(const std::string& n) { return Term::constant(n); }
Term v(const std::string& n) { return Term::var(n); }

const Manifest& manifest() {
  static const Manifest m = load_manifest(kCorpus / "manifest.json");
  return m;
}

std::vector<const ManifestEntry*> entries_of(FileKind k) {
  std::vector<const ManifestEntry*> out;
  for (const auto& e : manifest().entries)
    if (e.kind == k) out.push_back(&e);
  return out;
}

Json entry_json(const ManifestEntry& e) { return load_json(manifest().dir / e.file); }

// ---------------------------------------------------------------------------
// 1. Appendix

Outcome appendix() {
  Outcome o;
  auto m = parse_model(load_json(kCorpus / "appendix_model.json"));
  const auto& b = m.algebra();
  auto t = parse_theory(load_json(kCorpus / "appendix_theory.json"));
  Formula disj = Formula::disj({Formula::eq(c("d"), c("c0")), Formula::eq(c("d"), c("c1"))});
  Formula distinct = Formula::negation(Formula::eq(c("c0"), c("c1")));
  Formula ne0 = Formula::negation(Formula::eq(c("d"), c("c0")));
  Formula ne1 = Formula::negation(Formula::eq(c("d"), c("c1")));
  o.require(check_model(m).ok(), "appendix model fails check_model");
  o.require(b.is_top(eval(m, disj)), "[[\\/ d=c_m]] != 1");
  o.require(b.is_top(eval(m, distinct)), "[[c0 != c1]] != 1");
  Element x0 = eval(m, ne0), x1 = eval(m, ne1);
  o.require(b.is_atom(x0) && b.is_atom(x1) && x1 == b.complement(x0), "[[d != c0]], [[d != c1]] are not complementary atoms");

  auto weak = bounded_boolean_sat(t.sentences, 2, 4, SatMode::Weak);
  o.require(weak.found, "weak search found no witness");
  if (weak.found) {
    const auto& w = *weak.model;
    o.require(check_model(w).ok(), "weak witness is not a valid model");
    for (const auto& s : t.sentences) o.require(!w.algebra().is_zero(eval(w, s)), "weak witness gives 0 to " + s.canonical());
  }
  auto strong = bounded_boolean_sat(t.sentences, 2, 4, SatMode::Strong);
  o.require(!strong.found, "strong search found a model");
  o.detail = "values 1,1,{" + b.to_string(x0) + "},{" + b.to_string(x1) + "}; weak witness domain " +
             (weak.found ? std::to_string(weak.model->size()) : "-") + "; strong exhausted after " +
             std::to_string(strong.models_examined) + " candidates";
  return o;
}

// ---------------------------------------------------------------------------
// 2. RO correctness

// Regular open sets of a poset given by down-set masks, by brute force:
// A is regular open iff A = int(cl(A)), with open = downward closed.
std::size_t count_regular_open(const std::vector<unsigned>& down, int n) {
  auto up_closure = [&](unsigned a) {
    unsigned r = 0;
    for (int p = 0; p < n; ++p)
      if (down[p] & a) r |= 1u << p;
    return r;
  };
  auto interior = [&](unsigned b) {
    unsigned r = 0;
    for (int p = 0; p < n; ++p)
      if ((down[p] & ~b) == 0) r |= 1u << p;
    return r;
  };
  std::size_t count = 0;
  for (unsigned a = 0; a < (1u << n); ++a)
    if (interior(up_closure(a)) == a) ++count;
  return count;
}

Outcome ro_correctness() {
  Outcome o;
  std::size_t posets = 0;
  for (int n = 1; n <= 5; ++n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::size_t total = 1;
    for (std::size_t k = 0; k < pairs.size(); ++k) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      // leq[i] bit q: q <= i
      std::vector<unsigned> down(n);
      for (int i = 0; i < n; ++i) down[i] = 1u << i;
      std::size_t x = code;
      for (auto [i, j] : pairs) {
        int s = static_cast<int>(x % 3);
        x /= 3;
        if (s == 1) down[j] |= 1u << i;
        if (s == 2) down[i] |= 1u << j;
      }
      bool transitive = true;
      for (int i = 0; i < n && transitive; ++i)
        for (int q = 0; q < n; ++q)
          if ((down[i] >> q & 1) && (down[q] & ~down[i])) transitive = false;
      if (!transitive) continue;
      ++posets;
      std::vector<std::string> names;
      std::vector<std::pair<std::string, std::string>> leq;
      for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
      for (int i = 0; i < n; ++i)
        for (int q = 0; q < n; ++q)
          if (q != i && (down[i] >> q & 1)) leq.emplace_back(names[q], names[i]);
      FinPoset p(names, leq);
      auto ro = ro_completion(p);
      std::string tag = "poset #" + std::to_string(posets) + " (n=" + std::to_string(n) + ")";
      o.require(check_algebra(ro.algebra).ok(), tag + ": RO fails check_algebra");
      o.require(verify_ro_embedding(p, ro).ok(), tag + ": embedding check fails");
      o.require(ro.algebra.size() == count_regular_open(down, n), tag + ": RO size differs from brute force");
    }
  }
  // Labeled posets on 1..5 points: 1 + 3 + 19 + 219 + 4231.
  o.require(posets == 4473, "enumerated " + std::to_string(posets) + " labeled posets, expected 4473");
  for (int n = 1; n <= 4; ++n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("a" + std::to_string(i));
    auto ro = ro_completion(FinPoset(names, {}));
    o.require(ro.algebra.size() == (1u << n), "antichain_" + std::to_string(n) + " does not give 2^n elements");
  }
  auto chain = ro_completion(FinPoset({"lo", "hi"}, {{"lo", "hi"}}));
  o.require(chain.algebra.size() == 2, "2-chain does not give a 2-element algebra");
  o.detail = std::to_string(posets) + " labeled posets, antichains 1..4, 2-chain";
  return o;
}

// ---------------------------------------------------------------------------
// Shared samplers

Signature sample_signature() { return Signature({{"P", 1}, {"E", 2}}, {"k"}); }

std::vector<BValuedModel> model_pool(std::uint64_t seed) {
  Rng rng(seed);
  auto sig = sample_signature();
  std::vector<BValuedModel> out;
  for (int atoms = 1; atoms <= 3; ++atoms)
    for (std::size_t n = 1; n <= 3; ++n)
      for (int rep = 0; rep < 3; ++rep) out.push_back(random_model(sig, atoms, n, rng));
  return out;
}

// Value of f at atom x computed coordinatewise: a two-valued evaluation where
// an atomic formula holds iff x lies below its Boolean value.
bool eval_at_atom(const BValuedModel& m, int x, const Formula& f, Assignment& a) {
  auto term = [&](const Term& t) { return t.is_var() ? a.at(t.name) : m.constant(t.name); };
  auto bit = [&](Element e) { return (e.bits >> x & 1) != 0; };
  switch (f.kind()) {
    case Connective::Atom: {
      Tuple tup;
      for (const auto& t : f.terms()) tup.push_back(term(t));
      return bit(m.rel(f.relation(), tup));
    }
    case Connective::Eq:
      return bit(m.eq(term(f.terms()[0]), term(f.terms()[1])));
    case Connective::Not:
      return !eval_at_atom(m, x, f.body(), a);
    case Connective::And:
      for (const auto& g : f.children())
        if (!eval_at_atom(m, x, g, a)) return false;
      return true;
    case Connective::Or:
      for (const auto& g : f.children())
        if (eval_at_atom(m, x, g, a)) return true;
      return false;
    case Connective::Forall:
    case Connective::Exists: {
      const bool all = f.kind() == Connective::Forall;
      auto vars = f.bound_vars();
      Assignment saved = a;
      bool result = all;
      for_each_tuple(m.size(), vars.size(), [&](const Tuple& t) {
        for (std::size_t i = 0; i < vars.size(); ++i) a[vars[i]] = t[i];
        bool val = eval_at_atom(m, x, f.body(), a);
        if (val != all) {
          result = !all;
          return false;
        }
        return true;
      });
      a = saved;
      return result;
    }
  }
  return false;
}

std::vector<std::string> free_list(const Formula& f) {
  auto s = free_vars(f);
  return {s.begin(), s.end()};
}

// ---------------------------------------------------------------------------
// 3. Łoś

Outcome los_suite() {
  Outcome o;
  auto models = model_pool(11);
  Rng rng(12);
  FormulaShape shape;
  shape.depth = 3;
  std::vector<Formula> pool;
  for (int i = 0; i < 60; ++i) pool.push_back(random_formula(sample_signature(), shape, i % 2 ? std::vector<std::string>{"v0"} : std::vector<std::string>{}, rng));
  std::size_t checked = 0, skipped = 0, instances = 0, uf = 0, oracle_instances = 0;
  for (std::size_t mi = 0; mi < models.size(); ++mi) {
    const auto& m = models[mi];
    const auto& b = m.algebra();
    for (const auto& u : enumerate_ultrafilters(b)) {
      ++uf;
      auto rep = los_check(m, u, pool);
      o.require(rep.ok(), "model " + std::to_string(mi) + ": " + std::to_string(rep.violations.size()) + " Los violation(s)");
      checked += rep.formulas_checked;
      skipped += rep.skipped_not_full;
      instances += rep.instances_checked;
      int x = std::countr_zero(u.generator.bits);
      // Independent side: the quotient by the principal ultrafilter at atom x
      // is the x-th coordinate structure.
      for (const auto& f : pool) {
        if (!full_for(m, f)) continue;
        auto vars = free_list(f);
        for_each_tuple(m.size(), vars.size(), [&](const Tuple& t) {
          Assignment a;
          for (std::size_t i = 0; i < vars.size(); ++i) a[vars[i]] = t[i];
          Assignment a2 = a;
          bool coord = eval_at_atom(m, x, f, a2);
          o.require(coord == u.contains(b, eval(m, f, a)), "coordinate oracle disagrees on " + f.canonical());
          ++oracle_instances;
          return true;
        });
      }
    }
  }
  o.require(checked > 0, "no formula passed the fullness filter");
  o.detail = std::to_string(models.size()) + " models, " + std::to_string(uf) + " ultrafilters, " +
             std::to_string(checked) + " formula checks (" + std::to_string(skipped) + " not full), " +
             std::to_string(instances) + " instances, " + std::to_string(oracle_instances) + " oracle instances";
  return o;
}

// ---------------------------------------------------------------------------
// 4. Substitution inequality

Outcome substitution_inequality() {
  Outcome o;
  Rng rng(21);
  auto sig = sample_signature();
  FormulaShape shape;
  std::size_t samples = 0;
  std::vector<std::string> vars = {"v0", "v1"};
  for (int i = 0; i < 600; ++i) {
    auto m = random_model(sig, ModelBounds{3, 3}, rng);
    const auto& b = m.algebra();
    Formula f = random_formula(sig, shape, vars, rng);
    Tuple tau, sigma;
    for (int k = 0; k < 2; ++k) {
      tau.push_back(std::uniform_int_distribution<std::size_t>(0, m.size() - 1)(rng));
      sigma.push_back(std::uniform_int_distribution<std::size_t>(0, m.size() - 1)(rng));
    }
    Element lhs = b.meet(b.meet(m.eq(tau[0], sigma[0]), m.eq(tau[1], sigma[1])),
                         eval(m, f, {{"v0", tau[0]}, {"v1", tau[1]}}));
    Element rhs = eval(m, f, {{"v0", sigma[0]}, {"v1", sigma[1]}});
    bool direct = b.leq(lhs, rhs);
    o.require(direct, "inequality fails for " + f.canonical());
    o.require(direct == check_subst_inequality(m, f, vars, tau, sigma), "library verdict differs");
    ++samples;
  }
  o.detail = std::to_string(samples) + " samples, depth <= 3";
  return o;
}

// ---------------------------------------------------------------------------
// 5. Mixing implies full

Outcome mixing_full() {
  Outcome o;
  Rng rng(31);
  auto sig = sample_signature();
  std::vector<BValuedModel> models;
  for (int i = 0; i < 40; ++i) models.push_back(random_model(sig, ModelBounds{3, 3}, rng));
  for (int atoms = 1; atoms <= 3; ++atoms)
    for (std::size_t base = 1; base <= 2; ++base) {
      auto p = product_model(sig, atoms, base, rng);
      models.push_back(random_submodel(p, rng));
      models.push_back(std::move(p));
    }
  FormulaShape shape;
  shape.depth = 2;
  std::vector<Formula> existentials;
  for (int i = 0; i < 30; ++i) {
    Formula body = random_formula(sig, shape, {"v0", "v1"}, rng);
    existentials.push_back(Formula::exists({"v0"}, body));
  }
  std::size_t mixing = 0, nonmixing = 0, full_checks = 0, disagreements = 0;
  for (const auto& m : models) {
    bool mix = check_mixing(m).mixing;
    bool oracle = check_mixing_by_antichains(m).mixing;
    if (mix != oracle) ++disagreements;
    (mix ? mixing : nonmixing)++;
    if (!mix) continue;
    for (const auto& f : existentials) {
      auto vars = free_list(f);
      for_each_tuple(m.size(), vars.size(), [&](const Tuple& t) {
        Assignment a;
        for (std::size_t i = 0; i < vars.size(); ++i) a[vars[i]] = t[i];
        auto r = check_full(m, f, a);
        ++full_checks;
        o.require(r.attained, "mixing model not full on " + f.canonical());
        return true;
      });
    }
  }
  o.require(disagreements == 0, std::to_string(disagreements) + " mixing verdict disagreement(s)");
  o.require(mixing > 0 && nonmixing > 0, "sample does not contain both mixing and non-mixing models");
  o.detail = std::to_string(models.size()) + " models (" + std::to_string(mixing) + " mixing, " +
             std::to_string(nonmixing) + " not), " + std::to_string(full_checks) + " fullness checks, " +
             std::to_string(disagreements) + " disagreements";
  return o;
}

// ---------------------------------------------------------------------------
// 6. Consistency-property pipeline

Outcome cp_pipeline() {
  Outcome o;
  std::size_t families = 0, roots = 0, kappa = 0;
  for (const auto* e : entries_of(FileKind::Cp)) {
    auto s = parse_cp(entry_json(*e));
    if (!check_cp(s).ok()) continue;
    ++families;
    auto p = forcing_poset(s);
    for (const auto& root : s.family()) {
      ++roots;
      auto f = generic_filter(s, p, root);
      std::string tag = e->name + " at " + set_string(root);
      o.require(f.finite_subsets_match, tag + ": [Sigma_F]^<w != F");
      o.require(f.generic(), tag + ": filter misses a dense set");
      try {
        auto a = build_AF(s, f);
        o.require(verify_realizes(a, f.sigma).ok(), tag + ": A_F does not realize Sigma_F");
      } catch (const IllDefined& ex) {
        o.require(false, tag + ": " + ex.what());
      }
      if (e->expect.value("kappa_omega", false)) {
        ++kappa;
        o.require(check_smax(s).ok(), tag + ": family is not maximal");
        o.require(check_kappa_omega_iff(s, f).ok(), tag + ": biconditional fails");
      }
    }
  }
  o.require(families > 0 && kappa > 0, "corpus has no passing family or no maximal family");
  o.detail = std::to_string(families) + " families passing check_cp, " + std::to_string(roots) + " roots, " +
             std::to_string(kappa) + " maximal-family biconditional checks";
  return o;
}

// ---------------------------------------------------------------------------
// 7. Mansfield

Outcome mansfield_suite() {
  Outcome o;
  std::size_t families = 0, roots = 0, claims = 0;
  for (const auto* e : entries_of(FileKind::Cp)) {
    auto s = parse_cp(entry_json(*e));
    if (!check_cp(s).ok()) continue;
    ++families;
    for (const auto& root : s.family()) {
      ++roots;
      std::string tag = e->name + " at " + set_string(root);
      auto res = mansfield_build(s, root);
      o.require(res.model_check.ok(), tag + ": check_model fails");
      auto c1 = verify_claim1(*res.frame, s.pool());
      auto c2 = verify_claim2(res, s.pool());
      claims += c1.checked + c2.checked;
      o.require(c1.ok(), tag + ": claim 1 fails");
      o.require(c2.ok(), tag + ": claim 2 fails");
      for (const auto& phi : root)
        o.require(res.model.algebra().is_top(eval(res.model, phi)), tag + ": " + phi.canonical() + " below 1");
    }
  }
  o.require(families > 0, "no passing family in the corpus");
  o.detail = std::to_string(families) + " families, " + std::to_string(roots) + " roots, " + std::to_string(claims) +
             " claim instances";
  return o;
}

// ---------------------------------------------------------------------------
// 8. Forcing equivalence

Outcome forcing_equivalence() {
  Outcome o;
  std::set<std::uint64_t> sizes;
  for (const auto* e : entries_of(FileKind::Algebra)) {
    auto b = parse_algebra(entry_json(*e));
    sizes.insert(b.size());
    auto cp = cp_from_algebra(b);
    o.require(check_cp(*cp.property).ok(), e->name + ": S_B fails check_cp");
    o.require(cp.embedding.order_preserving, e->name + ": pi not order preserving");
    o.require(cp.embedding.incompatibility_preserving, e->name + ": pi not incompatibility preserving");
    o.require(cp.embedding.dense_image, e->name + ": pi image not dense");
    // pi({inG(c_b)}) = b for every nonzero b.
    for (auto x : b.elements()) {
      if (b.is_zero(x)) continue;
      SentenceSet single = {Formula::atom("inG", {c(element_constant(x))})};
      o.require(cp.pi_of(single) == x, e->name + ": pi({inG(c_b)}) != b");
    }
    auto rt = roundtrip_check(cp);
    o.require(rt.isomorphic, e->name + ": RO(P_S_B) not isomorphic to B");
  }
  for (std::uint64_t n : {2, 4, 8, 16}) o.require(sizes.contains(n), "no corpus algebra of size " + std::to_string(n));
  std::string s;
  for (auto n : sizes) s += (s.empty() ? "" : ",") + std::to_string(n);
  o.detail = std::to_string(entries_of(FileKind::Algebra).size()) + " algebras of sizes {" + s + "}";
  return o;
}

// ---------------------------------------------------------------------------
// 9. Calculus

std::vector<Proof> single_parameter_mutations(const Proof& p) {
  std::vector<Proof> out;
  std::vector<Formula> formulas;
  for (const auto& st : p.steps) {
    formulas.insert(formulas.end(), st.sequent.ante.begin(), st.sequent.ante.end());
    formulas.insert(formulas.end(), st.sequent.succ.begin(), st.sequent.succ.end());
    if (st.rule.formula) formulas.push_back(*st.rule.formula);
  }
  std::vector<Formula> extra;
  for (const auto& f : formulas) {
    extra.push_back(Formula::negation(f));
    for (const auto& g : subformulas(f)) extra.push_back(g);
  }
  formulas.insert(formulas.end(), extra.begin(), extra.end());
  formulas = normalize_set(formulas);
  std::vector<Term> terms = {c("c"), c("d"), v("v0"), v("v1"), v("v2")};
  std::vector<std::string> vars = {"v0", "v1", "v2"};
  auto with = [&](std::size_t i, auto&& edit) {
    Proof q = p;
    edit(q.steps[i].rule);
    out.push_back(std::move(q));
  };
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const Rule& r = p.steps[i].rule;
    for (const auto& f : formulas)
      if (!r.formula || f != *r.formula) with(i, [&](Rule& x) { x.formula = f; });
    if (r.formula) with(i, [&](Rule& x) { x.formula.reset(); });
    for (std::size_t k = 0; k < r.premises.size(); ++k)
      for (std::size_t j = 0; j <= i; ++j)
        if (j != r.premises[k]) with(i, [&](Rule& x) { x.premises[k] = j; });
    auto edit_terms = [&](std::vector<Term> Rule::*field) {
      for (std::size_t k = 0; k < (r.*field).size(); ++k)
        for (const auto& t : terms)
          if (t != (r.*field)[k]) with(i, [&](Rule& x) { (x.*field)[k] = t; });
      for (const auto& t : terms) with(i, [&](Rule& x) { (x.*field).push_back(t); });
      if (!(r.*field).empty()) with(i, [&](Rule& x) { (x.*field).pop_back(); });
    };
    edit_terms(&Rule::terms);
    edit_terms(&Rule::from);
    edit_terms(&Rule::to);
    for (std::size_t k = 0; k < r.vars.size(); ++k)
      for (const auto& w : vars)
        if (w != r.vars[k]) with(i, [&](Rule& x) { x.vars[k] = w; });
    for (const auto& w : vars) with(i, [&](Rule& x) { x.vars.push_back(w); });
    for (const auto& [key, val] : r.map) {
      for (const auto& t : terms)
        if (t != val) with(i, [&, key = key](Rule& x) { x.map[key] = t; });
      for (const auto& w : vars)
        if (w != key)
          with(i, [&, key = key, val = val](Rule& x) {
            x.map.erase(key);
            x.map[w] = val;
          });
    }
    for (const auto& name : rule_names())
      if (name != r.name) with(i, [&](Rule& x) { x.name = name; });
  }
  return out;
}

Outcome calculus_suite() {
  Outcome o;
  std::size_t accepted = 0, mutants = 0, rejected_mutants = 0, accepted_mutants = 0, samples = 0;
  std::optional<std::size_t> countermodel_at;
  for (const auto* e : entries_of(FileKind::Proof)) {
    auto p = parse_proof(entry_json(*e));
    auto res = check_proof(p);
    const bool expect_ok = e->expect.value("accepted", true);
    o.require(res.accepted == expect_ok, e->name + ": verdict " + (res.accepted ? "accepted" : "rejected: " + res.reason));
    if (!expect_ok) {
      const auto& s = e->expect.value("soundness", Json::object());
      if (s.value("violations", false)) {
        auto rep = soundness_sample(p.goal(), {3, 3}, 100, s.value("seed", std::uint64_t{7}), true);
        o.require(rep.first_violation.has_value(), e->name + ": no countermodel within 100 samples");
        if (rep.first_violation) countermodel_at = rep.first_violation;
      }
      continue;
    }
    ++accepted;
    auto rep = soundness_sample(p.goal(), {3, 3}, 200, 7);
    samples += rep.samples;
    o.require(rep.ok() && rep.samples >= 200, e->name + ": soundness violation " + rep.first_detail);
    for (const auto& q : single_parameter_mutations(p)) {
      ++mutants;
      auto r = check_proof(q);
      if (!r.accepted) {
        ++rejected_mutants;
        continue;
      }
      ++accepted_mutants;
      o.require(q.goal() == p.goal(), e->name + ": accepted mutant proves a different goal");
      // Every step of an accepted mutant must still be semantically sound.
      for (const auto& st : q.steps)
        o.require(soundness_sample(st.sequent, {2, 2}, 20, 3).ok(), e->name + ": accepted mutant has an unsound step");
    }
  }
  o.require(accepted > 0, "no accepted corpus proofs");
  o.require(countermodel_at.has_value(), "unprovable goal: no countermodel");
  o.detail = std::to_string(accepted) + " proofs accepted, " + std::to_string(mutants) + " mutants (" +
             std::to_string(rejected_mutants) + " rejected, " + std::to_string(accepted_mutants) +
             " accepted with the same goal), " + std::to_string(samples) + " soundness samples, countermodel at sample " +
             (countermodel_at ? std::to_string(*countermodel_at) : "-");
  return o;
}

// ---------------------------------------------------------------------------
// 10. Round-trip

Outcome roundtrip_files() {
  Outcome o;
  std::size_t files = 0;
  for (const auto& e : manifest().entries) {
    ++files;
    o.require(roundtrip_identical(manifest().dir / e.file, e.kind), e.file + " is not byte-identical after emit(parse)");
  }
  std::set<std::string> listed;
  for (const auto& e : manifest().entries) listed.insert(e.file);
  for (const auto& f : std::filesystem::directory_iterator(kCorpus)) {
    const auto name = f.path().filename().string();
    if (f.path().extension() != ".json" || listed.contains(name)) continue;
    ++files;
    Json j = load_json(f.path());
    o.require(roundtrip_identical(f.path(), detect_kind(j)), name + " is not byte-identical after emit(parse)");
  }
  o.detail = std::to_string(files) + " corpus files";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"appendix reproduction", appendix},
      {"RO correctness", ro_correctness},
      {"Los suite", los_suite},
      {"substitution inequality", substitution_inequality},
      {"mixing implies full", mixing_full},
      {"consistency-property pipeline", cp_pipeline},
      {"Mansfield suite", mansfield_suite},
      {"forcing equivalence", forcing_equivalence},
      {"calculus", calculus_suite},
      {"corpus round-trip", roundtrip_files},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.problems.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream time;
    time.precision(2);
    time << std::fixed << secs;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].name << ": " << o.detail << " ["
              << time.str() << "s]\n";
    for (const auto& p : o.problems) std::cout << "     " << p << "\n";
    failed += !o.pass;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
