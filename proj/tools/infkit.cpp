// infkit command-line front end. Exit codes: 0 success, 1 an expectation or
// check failed, 2 the input could not be read or parsed.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "infkit/corpus.hpp"
#include "infkit/io.hpp"
#include "infkit/mansfield.hpp"
#include "infkit/quotient.hpp"

using namespace infkit;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kInput = 2;
constexpr std::uint64_t kDefaultSeed = 20240601;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ostream& out() { return std::cout; }

void list(const std::string& title, const std::vector<std::string>& items, std::size_t cap = 20) {
  for (std::size_t i = 0; i < items.size() && i < cap; ++i) out() << "  " << title << ": " << items[i] << "\n";
  if (items.size() > cap) out() << "  ... " << items.size() - cap << " more\n";
}

Assignment parse_assign(const BValuedModel& m, const std::string& spec) {
  Assignment a;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("--assign expects v=element pairs, got '" + item + "'");
    auto idx = m.index(item.substr(eq + 1));
    if (!idx) throw InputError("--assign: unknown domain element '" + item.substr(eq + 1) + "'");
    a[item.substr(0, eq)] = *idx;
  }
  return a;
}

const SentenceSet& root_at(const ConsistencyProperty& s, std::size_t i) {
  if (i >= s.family().size())
    throw InputError("--root " + std::to_string(i) + " out of range (family has " + std::to_string(s.family().size()) +
                     " members)");
  return s.family()[i];
}

void emit_to(const std::string& file, const Json& j) {
  if (file == "-")
    out() << canonical_text(j);
  else
    write_text(file, canonical_text(j));
}

/// Two-valued structure as a model over the two-element algebra.
BValuedModel term_model_as_bvm(const TermModel& a, const Signature& sig) {
  auto alg = FinBooleanAlgebra::powerset({"t"});
  std::vector<std::string> dom;
  for (const auto& cls : a.classes) dom.push_back(cls.front());
  BValuedModel m(sig, alg, dom);
  for (const auto& [r, ts] : a.relations)
    for (const auto& t : ts) m.set_rel(r, t, alg.top());
  for (const auto& c : sig.constants()) m.set_constant(c, a.class_index(c));
  return m;
}

void print_model_report(const ModelReport& r) {
  out() << "instances checked: " << r.instances_checked << "\n";
  out() << "violations: " << r.violations.size() << "\n";
  for (std::size_t i = 0; i < r.violations.size() && i < 20; ++i) {
    const auto& v = r.violations[i];
    out() << "  " << v.axiom << (v.relation.empty() ? "" : " [" + v.relation + "]") << ":";
    for (const auto& w : v.witnesses) out() << " " << w;
    out() << "\n";
  }
}

void print_cp_report(const CpReport& r) {
  out() << "clause members: " << r.members.size() << "\n";
  for (const auto& [clause, n] : r.instances) out() << "  " << clause << ": " << n << " instance(s)\n";
  if (r.str2_out_of_pool) out() << "  Str.2 targets outside the pool (skipped): " << r.str2_out_of_pool << "\n";
  out() << "violations: " << r.violations.size() << "\n";
  for (std::size_t i = 0; i < r.violations.size() && i < 20; ++i) {
    const auto& v = r.violations[i];
    out() << "  " << v.clause << " at member " << v.member << " on " << v.sentence << ": " << v.detail << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"infkit: finite-scale toolkit for infinitary logic, Boolean-valued models and consistency properties"};
  app.require_subcommand(1);
  std::function<int()> action;

  // eval
  std::string model_file, formula_file, assign;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a formula in a Boolean-valued model");
  eval_cmd->add_option("--model", model_file, "model JSON")->required();
  eval_cmd->add_option("--formula", formula_file, "formula JSON")->required();
  eval_cmd->add_option("--assign", assign, "variable assignment v0=m0,v1=m1");
  eval_cmd->callback([&] {
    action = [&] {
      auto m = parse_model(load_json(model_file));
      auto f = parse_formula(load_json(formula_file), "$", &m.signature());
      auto v = eval(m, f, parse_assign(m, assign));
      out() << canonical_text(emit_element(m.algebra(), v));
      return kOk;
    };
  });

  // check-model
  std::string check_model_file;
  auto* cm_cmd = app.add_subcommand("check-model", "Check the equality axioms of a model");
  cm_cmd->add_option("model", check_model_file, "model JSON")->required();
  cm_cmd->callback([&] {
    action = [&] {
      auto r = check_model(parse_model(load_json(check_model_file)));
      print_model_report(r);
      return r.ok() ? kOk : kFail;
    };
  });

  // sat
  std::string theory_file, mode = "weak", sat_emit, sat_expect;
  int max_atoms = 2, max_domain = 3;
  auto* sat_cmd = app.add_subcommand("sat", "Bounded search for a Boolean-valued model of a theory");
  sat_cmd->add_option("--theory", theory_file, "theory JSON")->required();
  sat_cmd->add_option("--mode", mode, "weak (values > 0) or strong (values = 1)")
      ->check(CLI::IsMember({"weak", "strong"}));
  sat_cmd->add_option("--max-atoms", max_atoms, "largest algebra, in atoms")->check(CLI::Range(1, 6));
  sat_cmd->add_option("--max-domain", max_domain, "largest domain")->check(CLI::Range(1, 8));
  sat_cmd->add_option("--emit-model", sat_emit, "write the witness model here ('-' for stdout)");
  sat_cmd->add_option("--expect", sat_expect, "found or exhausted; exit 1 if the outcome differs")
      ->check(CLI::IsMember({"found", "exhausted"}));
  sat_cmd->callback([&] {
    action = [&] {
      auto t = parse_theory(load_json(theory_file));
      auto r = bounded_boolean_sat(t.sentences, max_atoms, max_domain, mode == "strong" ? SatMode::Strong : SatMode::Weak);
      out() << (r.found ? "found" : "exhausted") << " (" << r.models_examined << " candidate models examined)\n";
      if (r.found) {
        out() << "witness: " << r.model->algebra().atom_count() << " atom(s), domain " << r.model->size() << "\n";
        if (!sat_emit.empty()) emit_to(sat_emit, emit_model(*r.model));
      }
      if (!sat_expect.empty() && (sat_expect == "found") != r.found) return kFail;
      return kOk;
    };
  });

  // check-cp
  std::string cp_file;
  bool atomic_only = false, smax = false;
  auto* ccp_cmd = app.add_subcommand("check-cp", "Check the consistency-property clauses of a family");
  ccp_cmd->add_option("cp", cp_file, "consistency property JSON")->required();
  ccp_cmd->add_flag("--str2-atomic-only", atomic_only, "check the equality replacement clause on atomic sentences only");
  ccp_cmd->add_flag("--smax", smax, "also check maximality over the pool");
  ccp_cmd->callback([&] {
    action = [&] {
      auto s = parse_cp(load_json(cp_file));
      auto r = check_cp(s, {atomic_only});
      print_cp_report(r);
      bool ok = r.ok();
      if (smax) {
        auto m = check_smax(s);
        out() << "maximality: " << m.instances << " instance(s), " << m.violations.size() << " violation(s)\n";
        ok = ok && m.ok();
      }
      return ok ? kOk : kFail;
    };
  });

  // generic
  std::size_t root = 0;
  std::string emit_model_file;
  auto* gen_cmd = app.add_subcommand("generic", "Generic filter, term model and realization check");
  gen_cmd->add_option("--cp", cp_file, "consistency property JSON")->required();
  gen_cmd->add_option("--root", root, "index of the root family member")->required();
  gen_cmd->add_option("--emit-model", emit_model_file, "write the term model here as a two-valued model");
  gen_cmd->callback([&] {
    action = [&] {
      auto s = parse_cp(load_json(cp_file));
      const auto& s0 = root_at(s, root);
      auto p = forcing_poset(s);
      auto f = generic_filter(s, p, s0);
      out() << "conditions: " << p.conditions.size() << "\n";
      out() << "filter generator: " << set_string(p.conditions[f.generator]) << "\n";
      out() << "filter size: " << f.members.size() << "\n";
      out() << "Sigma_F: " << set_string(f.sigma) << "\n";
      out() << "[Sigma_F]^<w = F: " << (f.finite_subsets_match ? "yes" : "no") << "\n";
      std::size_t dense = 0;
      for (const auto& d : dense_sets(s, p)) dense += d.dense;
      out() << "dense sets verified: " << dense << "\n";
      out() << "unmet dense sets: " << f.unmet_dense.size() << "\n";
      list("unmet", f.unmet_dense);
      auto a = build_AF(s, f);
      out() << "term model classes: " << a.classes.size() << "\n";
      auto rr = verify_realizes(a, f.sigma);
      out() << "realized: " << rr.checked - rr.failures.size() << "/" << rr.checked << "\n";
      list("not realized", rr.failures);
      if (!emit_model_file.empty()) emit_to(emit_model_file, emit_model(term_model_as_bvm(a, s.full_signature())));
      return f.finite_subsets_match && f.generic() && rr.ok() ? kOk : kFail;
    };
  });

  // cp-from-model
  std::string pool_file, cp_emit;
  auto* cfm_cmd = app.add_subcommand("cp-from-model", "Consistency property of positive-valued pool subsets");
  cfm_cmd->add_option("--model", model_file, "model JSON")->required();
  cfm_cmd->add_option("--pool", pool_file, "pool JSON (array of sentences)")->required();
  cfm_cmd->add_option("--emit", cp_emit, "write the maximal members as an explicit family ('-' for stdout)");
  cfm_cmd->callback([&] {
    action = [&] {
      auto m = parse_model(load_json(model_file));
      std::set<std::string> extra(m.domain().begin(), m.domain().end());
      auto pool = parse_pool(load_json(pool_file), "$", &m.signature(), extra);
      auto s = cp_from_model(m, pool);
      out() << "pool after closure: " << s.pool().size() << " sentence(s)\n";
      auto r = check_cp(s);
      print_cp_report(r);
      auto mx = check_smax(s);
      out() << "maximality: " << mx.instances << " instance(s), " << mx.violations.size() << " violation(s)\n";
      if (!cp_emit.empty()) emit_to(cp_emit, emit_cp(to_explicit(s, true)));
      return r.ok() && mx.ok() ? kOk : kFail;
    };
  });

  // mansfield
  auto* man_cmd = app.add_subcommand("mansfield", "Mansfield's Boolean-valued model of a consistency property");
  man_cmd->add_option("--cp", cp_file, "consistency property JSON")->required();
  man_cmd->add_option("--root", root, "index of the root family member")->required();
  man_cmd->add_option("--pool", pool_file, "sentences for the claim checks (default: the property's pool)");
  man_cmd->add_option("--emit-model", emit_model_file, "write the model here ('-' for stdout)");
  man_cmd->callback([&] {
    action = [&] {
      auto s = parse_cp(load_json(cp_file));
      const auto& s0 = root_at(s, root);
      std::vector<Formula> pool = s.pool();
      if (!pool_file.empty()) {
        auto full = s.full_signature();
        pool = parse_pool(load_json(pool_file), "$", &full);
      }
      auto res = mansfield_build(s, s0);
      const auto& b = res.frame->algebra();
      out() << "conditions below the root: " << res.frame->conditions().size() << "\n";
      out() << "algebra: " << b.atom_count() << " atom(s), " << b.size() << " element(s)\n";
      out() << "domain: " << res.model.size() << "\n";
      print_model_report(res.model_check);
      out() << "root sentences below 1: " << res.root_failures.size() << "\n";
      list("root", res.root_failures);
      auto c1 = verify_claim1(*res.frame, pool);
      auto c2 = verify_claim2(res, pool);
      out() << "claim 1: " << c1.checked << " checked, " << c1.not_applicable << " not applicable, " << c1.failures.size()
            << " failure(s)\n";
      list("claim 1", c1.failures);
      out() << "claim 2: " << c2.checked << " checked, " << c2.failures.size() << " failure(s)\n";
      list("claim 2", c2.failures);
      out() << "mixing: " << (check_mixing(res.model).mixing ? "yes" : "no") << "\n";
      if (!emit_model_file.empty()) emit_to(emit_model_file, emit_model(res.model));
      return res.ok() && c1.ok() && c2.ok() ? kOk : kFail;
    };
  });

  // cp-from-algebra
  std::string algebra_file;
  bool emit_flag = false;
  auto* cfa_cmd = app.add_subcommand("cp-from-algebra", "Consistency property S_B of a finite algebra");
  cfa_cmd->add_option("algebra", algebra_file, "algebra JSON")->required();
  cfa_cmd->add_flag("--emit", emit_flag, "print the maximal members of S_B as an explicit family instead of a report");
  cfa_cmd->callback([&] {
    action = [&] {
      auto b = parse_algebra(load_json(algebra_file));
      auto cp = cp_from_algebra(b);
      if (emit_flag) {
        out() << canonical_text(emit_cp(to_explicit(*cp.property, true)));
        return kOk;
      }
      auto r = check_cp(*cp.property);
      out() << "pool: " << cp.property->pool().size() << " sentence(s)\n";
      print_cp_report(r);
      const auto& e = cp.embedding;
      out() << "conditions: " << e.conditions << "\n";
      out() << "order preserving: " << (e.order_preserving ? "yes" : "no") << "\n";
      out() << "incompatibility preserving: " << (e.incompatibility_preserving ? "yes" : "no") << "\n";
      out() << "dense image: " << (e.dense_image ? "yes" : "no") << "\n";
      list("embedding", e.failures);
      return r.ok() && e.ok() ? kOk : kFail;
    };
  });

  // roundtrip
  auto* rt_cmd = app.add_subcommand("roundtrip", "Check RO(P_{S_B}) is isomorphic to B");
  rt_cmd->add_option("algebra", algebra_file, "algebra JSON")->required();
  rt_cmd->callback([&] {
    action = [&] {
      auto r = roundtrip_check(parse_algebra(load_json(algebra_file)));
      out() << "conditions: " << r.conditions << "\n";
      out() << "atoms: RO " << r.ro_atoms << ", B " << r.algebra_atoms << "\n";
      out() << "isomorphic: " << (r.isomorphic ? "yes" : "no") << "\n";
      list("failure", r.failures);
      return r.isomorphic ? kOk : kFail;
    };
  });

  // ro
  std::string poset_file, ro_emit;
  auto* ro_cmd = app.add_subcommand("ro", "Regular-open completion of a finite poset");
  ro_cmd->add_option("poset", poset_file, "poset JSON")->required();
  ro_cmd->add_option("--emit", ro_emit, "write the algebra here ('-' for stdout)");
  ro_cmd->callback([&] {
    action = [&] {
      auto p = parse_poset(load_json(poset_file));
      auto ro = ro_completion(p);
      auto laws = check_algebra(ro.algebra);
      auto emb = verify_ro_embedding(p, ro);
      out() << "elements: " << ro.algebra.size() << " (" << ro.algebra.atom_count() << " atoms)\n";
      out() << "algebra laws: " << (laws.ok() ? "ok" : "violated") << "\n";
      for (const auto& v : laws.violations) out() << "  " << v.law << "\n";
      out() << "embedding: " << (emb.ok() ? "ok" : "failed") << "\n";
      list("embedding", emb.failures);
      for (std::size_t i = 0; i < p.size(); ++i)
        out() << "  " << p.name(i) << " -> " << ro.algebra.to_string(ro.embedding[i]) << "\n";
      if (!ro_emit.empty()) emit_to(ro_emit, emit_algebra(ro.algebra));
      return laws.ok() && emb.ok() ? kOk : kFail;
    };
  });

  // quotient
  std::string uf_file, los_pool;
  auto* q_cmd = app.add_subcommand("quotient", "Quotient of a model by an ultrafilter, with the Los check");
  q_cmd->add_option("--model", model_file, "model JSON")->required();
  q_cmd->add_option("--ultrafilter", uf_file, "ultrafilter JSON")->required();
  q_cmd->add_option("--los-pool", los_pool, "formulas for the Los check");
  q_cmd->callback([&] {
    action = [&] {
      auto m = parse_model(load_json(model_file));
      auto u = parse_ultrafilter(m.algebra(), load_json(uf_file));
      if (!is_ultrafilter(m.algebra(), u)) throw InputError("the filter generated by the given element is not ultra");
      auto q = quotient(m, u);
      out() << "classes: " << q.classes.size() << "\n";
      for (std::size_t i = 0; i < q.classes.size(); ++i) {
        out() << "  [" << i << "]";
        for (auto x : q.classes[i]) out() << " " << m.domain()[x];
        out() << "\n";
      }
      for (const auto& [r, ts] : q.relations) {
        out() << "  " << r << ":";
        for (const auto& t : ts) {
          out() << " (";
          for (std::size_t k = 0; k < t.size(); ++k) out() << (k ? "," : "") << t[k];
          out() << ")";
        }
        out() << "\n";
      }
      list("issue", q.issues);
      bool ok = q.issues.empty();
      if (!los_pool.empty()) {
        auto pool = parse_pool(load_json(los_pool), "$", &m.signature());
        auto r = los_check(m, u, pool);
        out() << "Los: " << r.formulas_checked << " formula(s), " << r.instances_checked << " instance(s), "
              << r.skipped_not_full << " skipped (not full), " << r.violations.size() << " violation(s)\n";
        for (const auto& v : r.violations) out() << "  violation: " << v.formula << "\n";
        ok = ok && r.ok();
      }
      return ok ? kOk : kFail;
    };
  });

  // check-proof
  std::string proof_file;
  std::size_t samples = 0;
  std::uint64_t seed = kDefaultSeed;
  int sample_atoms = 3;
  std::size_t sample_domain = 3;
  auto* cp_cmd = app.add_subcommand("check-proof", "Check a sequent-calculus proof");
  cp_cmd->add_option("proof", proof_file, "proof JSON")->required();
  cp_cmd->add_option("--soundness-samples", samples, "sample this many models against the goal");
  cp_cmd->add_option("--seed", seed, "sampling seed")->capture_default_str();
  cp_cmd->add_option("--max-atoms", sample_atoms, "largest sampled algebra")->check(CLI::Range(1, 6));
  cp_cmd->add_option("--max-domain", sample_domain, "largest sampled domain")->check(CLI::Range(1, 6));
  cp_cmd->callback([&] {
    action = [&] {
      auto p = parse_proof(load_json(proof_file));
      auto r = check_proof(p);
      out() << "goal: " << p.goal().to_string() << "\n";
      if (r.accepted)
        out() << "accepted (" << p.steps.size() << " steps)\n";
      else
        out() << "rejected at step " << r.step << ": " << r.reason << "\n";
      bool ok = r.accepted;
      if (samples > 0) {
        auto s = soundness_sample(p.goal(), {sample_atoms, sample_domain}, samples, seed);
        out() << "soundness: " << s.samples << " model(s), " << s.violations << " violation(s)\n";
        if (s.first_violation) out() << "  first: " << s.first_detail << "\n";
        ok = ok && s.ok();
      }
      return ok ? kOk : kFail;
    };
  });

  // corpus
  std::string manifest_file;
  auto* corpus_cmd = app.add_subcommand("corpus", "Run every expectation of a corpus manifest");
  corpus_cmd->add_option("manifest", manifest_file, "manifest JSON")->required();
  corpus_cmd->callback([&] {
    action = [&] {
      auto r = run_corpus(manifest_file);
      out() << r.to_string();
      if (r.input_error()) return kInput;
      return r.ok() ? kOk : kFail;
    };
  });

  // fmt
  std::string fmt_file, fmt_kind;
  bool fmt_check = false, fmt_write = false;
  auto* fmt_cmd = app.add_subcommand("fmt", "Print a JSON file in canonical form");
  fmt_cmd->add_option("file", fmt_file, "input JSON")->required();
  fmt_cmd->add_option("--kind", fmt_kind, "file format (default: detected)");
  fmt_cmd->add_flag("--check", fmt_check, "exit 1 unless the file is already canonical");
  fmt_cmd->add_flag("--write", fmt_write, "rewrite the file in place");
  fmt_cmd->callback([&] {
    action = [&] {
      Json j = load_json(fmt_file);
      FileKind k = detect_kind(j);
      if (!fmt_kind.empty()) {
        auto kk = kind_from_name(fmt_kind);
        if (!kk) throw InputError("unknown kind '" + fmt_kind + "'");
        k = *kk;
      }
      std::string text;
      bool same = roundtrip_identical(fmt_file, k, &text);
      if (fmt_check) {
        out() << fmt_file << (same ? ": canonical\n" : ": not canonical\n");
        return same ? kOk : kFail;
      }
      if (fmt_write)
        write_text(fmt_file, text);
      else
        out() << text;
      return kOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }
  try {
    return action();
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const PoolIncomplete& e) {
    std::cerr << "input error: pool incomplete: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
}
