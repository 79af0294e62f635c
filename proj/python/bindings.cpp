// Python bindings. Inputs and outputs cross the boundary as canonical JSON text.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "infkit/corpus.hpp"
#include "infkit/mansfield.hpp"
#include "infkit/quotient.hpp"

namespace py = pybind11;
using namespace infkit;

namespace {

Json as_json(const std::string& text) { return parse_json_text(text); }
std::string text(const Json& j) { return canonical_text(j); }

FileKind kind_of(const Json& j, const std::optional<std::string>& kind) {
  if (!kind) return detect_kind(j);
  auto k = kind_from_name(*kind);
  if (!k) throw ParseError("$", "unknown file kind '" + *kind + "'");
  return *k;
}

py::dict check_model_py(const std::string& model) {
  auto m = parse_model(as_json(model));
  auto rep = check_model(m);
  py::list violations;
  for (const auto& v : rep.violations) {
    py::dict d;
    d["axiom"] = v.axiom;
    d["relation"] = v.relation;
    d["witnesses"] = v.witnesses;
    violations.append(d);
  }
  py::dict out;
  out["ok"] = rep.ok();
  out["instances"] = rep.instances_checked;
  out["violations"] = violations;
  return out;
}

std::vector<std::string> eval_py(const std::string& model, const std::string& formula,
                                 const std::map<std::string, std::string>& assign) {
  auto m = parse_model(as_json(model));
  Signature sig = m.signature();
  Formula f = parse_formula(as_json(formula), "$", &sig);
  Assignment a;
  for (const auto& [var, elt] : assign) {
    auto i = m.index(elt);
    if (!i) throw ParseError("$.assign." + var, "unknown domain element '" + elt + "'");
    a[var] = *i;
  }
  return m.algebra().literal(eval(m, f, a));
}

py::dict sat_py(const std::string& theory, const std::string& mode, int max_atoms, int max_domain) {
  auto t = parse_theory(as_json(theory));
  if (mode != "weak" && mode != "strong") throw std::invalid_argument("mode must be 'weak' or 'strong'");
  auto r = bounded_boolean_sat(t.sentences, max_atoms, max_domain, mode == "weak" ? SatMode::Weak : SatMode::Strong);
  py::dict out;
  out["found"] = r.found;
  out["examined"] = r.models_examined;
  out["model"] = r.model ? py::cast(text(emit_model(*r.model))) : py::none();
  return out;
}

py::dict check_cp_py(const std::string& cp, bool smax) {
  auto s = parse_cp(as_json(cp));
  auto rep = check_cp(s);
  py::list violations;
  for (const auto& v : rep.violations) {
    py::dict d;
    d["clause"] = v.clause;
    d["sentence"] = v.sentence;
    d["detail"] = v.detail;
    violations.append(d);
  }
  py::dict out;
  out["ok"] = rep.ok();
  out["violations"] = violations;
  if (smax) out["smax"] = check_smax(s).ok();
  return out;
}

py::list generic_py(const std::string& cp) {
  auto s = parse_cp(as_json(cp));
  auto p = forcing_poset(s);
  py::list out;
  for (const auto& root : s.family()) {
    auto f = generic_filter(s, p, root);
    py::dict d;
    d["root"] = set_string(root);
    d["generic"] = f.generic();
    d["finite_subsets_match"] = f.finite_subsets_match;
    try {
      d["realizes"] = verify_realizes(build_AF(s, f), f.sigma).ok();
    } catch (const IllDefined&) {
      d["realizes"] = false;
    }
    out.append(d);
  }
  return out;
}

py::list mansfield_py(const std::string& cp) {
  auto s = parse_cp(as_json(cp));
  py::list out;
  for (const auto& root : s.family()) {
    auto res = mansfield_build(s, root);
    py::dict d;
    d["root"] = set_string(root);
    d["model_ok"] = res.ok();
    d["claim1"] = verify_claim1(*res.frame, s.pool()).ok();
    d["claim2"] = verify_claim2(res, s.pool()).ok();
    d["algebra_size"] = res.model.algebra().size();
    d["model"] = text(emit_model(res.model));
    out.append(d);
  }
  return out;
}

py::dict ro_py(const std::string& poset) {
  auto p = parse_poset(as_json(poset));
  auto ro = ro_completion(p);
  py::dict out;
  out["size"] = ro.algebra.size();
  out["algebra_ok"] = check_algebra(ro.algebra).ok();
  out["embedding_ok"] = verify_ro_embedding(p, ro).ok();
  out["algebra"] = text(emit_algebra(ro.algebra));
  return out;
}

py::dict forcing_py(const std::string& algebra) {
  auto b = parse_algebra(as_json(algebra));
  auto cp = cp_from_algebra(b);
  auto rt = roundtrip_check(cp);
  py::dict out;
  out["size"] = b.size();
  out["cp_ok"] = check_cp(*cp.property).ok();
  out["embedding_ok"] = cp.embedding.ok();
  out["isomorphic"] = rt.isomorphic;
  return out;
}

py::dict los_py(const std::string& model, const std::string& pool) {
  auto m = parse_model(as_json(model));
  Signature sig = m.signature();
  auto fs = parse_pool(as_json(pool), "$", &sig);
  std::size_t checked = 0, skipped = 0, violations = 0;
  for (const auto& u : enumerate_ultrafilters(m.algebra())) {
    auto r = los_check(m, u, fs);
    checked += r.formulas_checked;
    skipped += r.skipped_not_full;
    violations += r.violations.size();
  }
  py::dict out;
  out["checked"] = checked;
  out["skipped_not_full"] = skipped;
  out["violations"] = violations;
  return out;
}

py::dict check_proof_py(const std::string& proof, std::size_t samples, std::uint64_t seed, int max_atoms,
                        std::size_t max_domain) {
  auto p = parse_proof(as_json(proof));
  auto r = check_proof(p);
  py::dict out;
  out["accepted"] = r.accepted;
  out["step"] = r.step;
  out["reason"] = r.reason;
  if (samples > 0) {
    auto s = soundness_sample(p.goal(), {max_atoms, max_domain}, samples, seed);
    out["samples"] = s.samples;
    out["violations"] = s.violations;
    out["first_violation"] = s.first_violation ? py::cast(*s.first_violation) : py::none();
  }
  return out;
}

py::dict corpus_py(const std::string& manifest) {
  auto r = run_corpus(std::filesystem::path(manifest));
  py::dict out;
  out["ok"] = r.ok();
  out["checks"] = r.checks();
  out["entries"] = r.entries.size();
  out["warnings"] = r.warnings;
  out["report"] = r.to_string();
  return out;
}

}  // namespace

PYBIND11_MODULE(_infkit, m) {
  m.doc() = "Boolean-valued models, consistency properties and the infinitary sequent calculus";

  // Later registrations are tried first, so the subclass goes last.
  py::register_exception<InfkitError>(m, "InfkitError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def(
      "canonical", [](const std::string& s, std::optional<std::string> kind) {
        Json j = as_json(s);
        return text(reemit(j, kind_of(j, kind)));
      },
      py::arg("text"), py::arg("kind") = py::none());
  m.def(
      "detect_kind", [](const std::string& s) { return kind_name(detect_kind(as_json(s))); }, py::arg("text"));
  m.def("check_model", &check_model_py, py::arg("model"));
  m.def("eval", &eval_py, py::arg("model"), py::arg("formula"),
        py::arg("assign") = std::map<std::string, std::string>{});
  m.def("sat", &sat_py, py::arg("theory"), py::arg("mode") = "weak", py::arg("max_atoms") = 2,
        py::arg("max_domain") = 4);
  m.def("check_cp", &check_cp_py, py::arg("cp"), py::arg("smax") = false);
  m.def("generic", &generic_py, py::arg("cp"));
  m.def("mansfield", &mansfield_py, py::arg("cp"));
  m.def("ro", &ro_py, py::arg("poset"));
  m.def("forcing", &forcing_py, py::arg("algebra"));
  m.def("los", &los_py, py::arg("model"), py::arg("pool"));
  m.def("check_proof", &check_proof_py, py::arg("proof"), py::arg("samples") = 0, py::arg("seed") = 20240601,
        py::arg("max_atoms") = 3, py::arg("max_domain") = 3);
  m.def("run_corpus", &corpus_py, py::arg("manifest"));
}
