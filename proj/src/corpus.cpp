#include "infkit/corpus.hpp"

#include <fstream>
#include <future>
#include <sstream>

#include "infkit/mansfield.hpp"
#include "infkit/quotient.hpp"

namespace infkit {

Manifest load_manifest(const std::filesystem::path& file) {
  Json j = load_json(file);
  Manifest m;
  m.dir = file.parent_path();
  if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
    throw ParseError("$", "manifest needs an 'entries' array");
  const Json& es = j["entries"];
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string p = "$.entries[" + std::to_string(i) + "]";
    const Json& e = es[i];
    if (!e.is_object()) throw ParseError(p, "expected an object");
    for (const char* key : {"name", "kind", "file"})
      if (!e.contains(key) || !e[key].is_string()) throw ParseError(p, std::string("missing string '") + key + "'");
    auto kind = kind_from_name(e["kind"].get<std::string>());
    if (!kind) throw ParseError(p + ".kind", "unknown kind '" + e["kind"].get<std::string>() + "'");
    ManifestEntry me{e["name"], *kind, e["file"], e.value("expect", Json::object())};
    if (!me.expect.is_object()) throw ParseError(p + ".expect", "expected an object");
    if (!std::filesystem::exists(m.dir / me.file)) throw ParseError(p + ".file", "no such file: " + me.file);
    m.entries.push_back(std::move(me));
  }
  return m;
}

bool roundtrip_identical(const std::filesystem::path& file, FileKind kind, std::string* emitted) {
  std::ifstream in(file, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string out = canonical_text(reemit(parse_json_text(ss.str()), kind));
  if (emitted) *emitted = out;
  return out == ss.str();
}

std::size_t CorpusReport::checks() const {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.checks;
  return n;
}

bool CorpusReport::ok() const {
  return std::all_of(entries.begin(), entries.end(), [](const EntryReport& e) { return e.ok(); });
}

bool CorpusReport::input_error() const {
  return std::any_of(entries.begin(), entries.end(), [](const EntryReport& e) { return e.input_error; });
}

std::string CorpusReport::to_string() const {
  std::string s;
  for (const auto& w : warnings) s += "warning: " + w + "\n";
  std::size_t green = 0;
  for (const auto& e : entries) {
    green += e.ok();
    s += std::string(e.ok() ? "[ ok ] " : "[FAIL] ") + e.name + " (" + e.file + ", " + std::to_string(e.checks) +
         " checks)\n";
    for (const auto& n : e.notes) s += "       note: " + n + "\n";
    for (const auto& f : e.failures) s += "       " + f + "\n";
  }
  s += std::to_string(green) + "/" + std::to_string(entries.size()) + " entries green, " + std::to_string(checks()) +
       " checks\n";
  return s;
}

namespace {

class EntryRunner {
 public:
  EntryRunner(const Manifest& m, const ManifestEntry& e) : m_(m), e_(e) { r_.name = e.name, r_.file = e.file; }

  EntryReport run() {
    try {
      std::string emitted;
      check(roundtrip_identical(m_.dir / e_.file, e_.kind, &emitted), "file is not byte-identical to emit(parse(file))");
      j_ = load_json(m_.dir / e_.file);
      switch (e_.kind) {
        case FileKind::Model:
          model();
          break;
        case FileKind::Theory:
          theory();
          break;
        case FileKind::Cp:
          cp();
          break;
        case FileKind::Algebra:
          algebra();
          break;
        case FileKind::Poset:
          poset();
          break;
        case FileKind::Proof:
          proof();
          break;
        default:
          break;
      }
    } catch (const ParseError& ex) {
      r_.input_error = true;
      r_.failures.push_back(std::string("input error: ") + ex.what());
    } catch (const std::exception& ex) {
      r_.failures.push_back(std::string("error: ") + ex.what());
    }
    return std::move(r_);
  }

 private:
  void check(bool ok, const std::string& msg) {
    ++r_.checks;
    if (!ok) r_.failures.push_back(msg);
  }

  const Json* want(const char* key) const {
    auto it = e_.expect.find(key);
    return it == e_.expect.end() ? nullptr : &*it;
  }

  std::vector<Formula> load_pool(const std::string& file, const Signature* sig = nullptr,
                                 const std::set<std::string>& extra = {}) {
    return parse_pool(load_json(m_.dir / file), "$", sig, extra);
  }

  void model() {
    auto m = parse_model(j_);
    const auto& b = m.algebra();
    if (const Json* w = want("check_model")) check(check_model(m).ok() == w->get<bool>(), "check_model verdict differs");
    if (const Json* w = want("eval")) {
      for (std::size_t i = 0; i < w->size(); ++i) {
        const Json& item = (*w)[i];
        Formula f = parse_formula(item.at("formula"), "$.expect.eval", &m.signature());
        Assignment a;
        const Json assign = item.value("assign", Json::object());
        for (const auto& [v, el] : assign.items()) a[v] = m.index(el.get<std::string>()).value();
        Element expected = parse_element(b, item.at("value"), "$.expect.eval.value");
        Element got = eval(m, f, a);
        check(got == expected, "eval " + f.canonical() + " = " + b.to_string(got) + ", expected " + b.to_string(expected));
      }
    }
    if (const Json* w = want("mixing")) check(check_mixing(m).mixing == w->get<bool>(), "mixing verdict differs");
    if (const Json* w = want("quotients"); w && w->get<bool>()) {
      for (const auto& u : enumerate_ultrafilters(b)) {
        auto q = quotient(m, u);
        check(q.issues.empty(), "quotient by " + b.to_string(u.generator) + " has issues");
      }
    }
    if (const Json* w = want("los_pool")) {
      auto pool = load_pool(w->get<std::string>(), &m.signature());
      for (const auto& u : enumerate_ultrafilters(b)) {
        auto rep = los_check(m, u, pool);
        check(rep.ok(), "Los violation at ultrafilter " + b.to_string(u.generator));
      }
    }
    if (const Json* w = want("cp_from_model")) {
      auto pool = load_pool(w->at("pool").get<std::string>(), &m.signature());
      auto s = cp_from_model(m, pool);
      if (w->contains("check_cp")) check(check_cp(s).ok() == w->at("check_cp").get<bool>(), "cp_from_model check_cp verdict differs");
      if (w->contains("smax")) check(check_smax(s).ok() == w->at("smax").get<bool>(), "cp_from_model smax verdict differs");
    }
  }

  void theory() {
    auto t = parse_theory(j_);
    const Json* w = want("sat");
    if (!w) return;
    for (const auto& item : *w) {
      auto mode = item.at("mode").get<std::string>() == "strong" ? SatMode::Strong : SatMode::Weak;
      auto res = bounded_boolean_sat(t.sentences, item.at("max_atoms").get<int>(), item.at("max_domain").get<int>(), mode);
      check(res.found == item.at("found").get<bool>(),
            std::string("sat ") + item.at("mode").get<std::string>() + (res.found ? " found a witness" : " exhausted"));
    }
  }

  void cp() {
    auto s = parse_cp(j_);
    std::optional<CpReport> rep;
    auto cp_rep = [&]() -> const CpReport& {
      if (!rep) rep = check_cp(s);
      return *rep;
    };
    if (const Json* w = want("check_cp")) {
      bool ok = cp_rep().ok();
      check(ok == w->get<bool>(), std::string("check_cp ") + (ok ? "passed" : "failed: " + cp_rep().violations.front().clause));
    }
    if (const Json* w = want("smax")) check(check_smax(s).ok() == w->get<bool>(), "check_smax verdict differs");
    const bool need_poset = want("generic") || want("kappa_omega");
    if (need_poset) {
      auto fp = forcing_poset(s);
      bool all_realized = true;
      for (const auto& root : s.family()) {
        auto f = generic_filter(s, fp, root);
        check(f.finite_subsets_match, "[Sigma_F]^<w != F at root " + set_string(root));
        if (want("generic")) {
          std::vector<std::string> fails;
          try {
            auto a = build_AF(s, f);
            auto rr = verify_realizes(a, f.sigma);
            fails = rr.failures;
          } catch (const IllDefined& ex) {
            fails.push_back(ex.what());
          }
          if (!fails.empty()) {
            all_realized = false;
            r_.notes.push_back("root " + set_string(root) + ": " + fails.front());
          }
          if (want("generic")->get<bool>()) check(f.generic(), "filter misses dense sets at root " + set_string(root));
        }
        if (const Json* w = want("kappa_omega"); w && w->get<bool>()) {
          auto iff = check_kappa_omega_iff(s, f);
          check(iff.ok(), "kappa-omega biconditional fails at root " + set_string(root));
        }
      }
      if (const Json* w = want("generic")) check(all_realized == w->get<bool>(), "verify_realizes verdict differs");
    }
    if (const Json* w = want("mansfield"); w && w->get<bool>()) {
      for (const auto& root : s.family()) {
        auto res = mansfield_build(s, root);
        check(res.model_check.ok(), "Mansfield model fails check_model at " + set_string(root));
        check(res.root_failures.empty(), "root sentence below 1 at " + set_string(root));
        check(verify_claim1(*res.frame, s.pool()).ok(), "claim 1 fails at " + set_string(root));
        check(verify_claim2(res, s.pool()).ok(), "claim 2 fails at " + set_string(root));
      }
    }
    if (const Json* w = want("mansfield_mixing")) {
      auto res = mansfield_build(s, s.family().front());
      bool mixing = check_mixing(res.model).mixing;
      r_.notes.push_back(std::string("Mansfield model at the first root is ") + (mixing ? "mixing" : "not mixing"));
      check(mixing == w->get<bool>(), "Mansfield mixing verdict differs");
    }
    if (const Json* w = want("mansfield_full")) {
      auto res = mansfield_build(s, s.family().front());
      Signature full = s.full_signature();
      Formula f = parse_formula(w->at("formula"), "$.expect.mansfield_full.formula", &full);
      bool attained = check_full(res.model, f).attained;
      r_.notes.push_back(f.canonical() + (attained ? " attains" : " does not attain") + " its value in the Mansfield model");
      check(attained == w->at("attained").get<bool>(), "Mansfield fullness verdict differs");
    }
  }

  void algebra() {
    auto b = parse_algebra(j_);
    if (const Json* w = want("size")) check(b.size() == w->get<std::uint64_t>(), "size is " + std::to_string(b.size()));
    if (const Json* w = want("check_algebra")) check(check_algebra(b).ok() == w->get<bool>(), "check_algebra verdict differs");
    if (const Json* w = want("forcing"); w && w->get<bool>()) {
      auto cp = cp_from_algebra(b);
      check(check_cp(*cp.property).ok(), "S_B fails check_cp");
      check(cp.embedding.ok(), "pi is not a dense embedding");
      check(roundtrip_check(cp).isomorphic, "RO(P_S_B) is not isomorphic to B");
    }
  }

  void poset() {
    auto p = parse_poset(j_);
    auto ro = ro_completion(p);
    if (const Json* w = want("ro_size")) check(ro.algebra.size() == w->get<std::uint64_t>(), "RO size is " + std::to_string(ro.algebra.size()));
    if (const Json* w = want("ro"); w && w->get<bool>()) {
      check(check_algebra(ro.algebra).ok(), "RO(P) fails check_algebra");
      check(verify_ro_embedding(p, ro).ok(), "embedding check fails");
    }
  }

  void proof() {
    auto p = parse_proof(j_);
    auto res = check_proof(p);
    if (const Json* w = want("accepted"))
      check(res.accepted == w->get<bool>(),
            res.accepted ? std::string("proof accepted") : "step " + std::to_string(res.step) + " rejected: " + res.reason);
    if (const Json* w = want("soundness")) {
      ModelBounds bounds{w->value("max_atoms", 3), w->value("max_domain", std::size_t{3})};
      std::size_t n = w->value("samples", std::size_t{200});
      bool expect_violation = w->value("violations", false);
      auto rep = soundness_sample(p.goal(), bounds, n, w->value("seed", std::uint64_t{1}), expect_violation);
      if (expect_violation) {
        std::size_t within = w->value("within", n);
        check(rep.first_violation && *rep.first_violation <= within,
              "no countermodel within " + std::to_string(within) + " samples");
        if (rep.first_violation) r_.notes.push_back(rep.first_detail);
      } else {
        check(rep.ok(), std::to_string(rep.violations) + " soundness violation(s): " + rep.first_detail);
      }
    }
  }

  const Manifest& m_;
  const ManifestEntry& e_;
  EntryReport r_;
  Json j_;
};

}  // namespace

EntryReport run_entry(const Manifest& m, const ManifestEntry& e) { return EntryRunner(m, e).run(); }

CorpusReport run_corpus(const Manifest& m) {
  CorpusReport r;
  if (m.entries.empty()) r.warnings.push_back("manifest has no entries; nothing was checked");
  std::vector<std::future<EntryReport>> jobs;
  for (const auto& e : m.entries) jobs.push_back(std::async(std::launch::async, [&m, &e] { return run_entry(m, e); }));
  for (auto& j : jobs) r.entries.push_back(j.get());
  return r;
}

CorpusReport run_corpus(const std::filesystem::path& manifest_file) { return run_corpus(load_manifest(manifest_file)); }

}  // namespace infkit
