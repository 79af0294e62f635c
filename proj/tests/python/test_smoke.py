import json
import os
import pathlib

import pytest

import infkit

CORPUS = pathlib.Path(os.environ.get("INFKIT_CORPUS_DIR", pathlib.Path(__file__).resolve().parents[2] / "corpus"))


def test_appendix_values():
    model = CORPUS / "appendix_model.json"
    assert infkit.check_model(model)["ok"]
    ne0 = {"not": {"eq": [{"const": "d"}, {"const": "c0"}]}}
    ne1 = {"not": {"eq": [{"const": "d"}, {"const": "c1"}]}}
    a, b = infkit.eval_formula(model, ne0), infkit.eval_formula(model, ne1)
    assert len(a) == 1 and len(b) == 1 and set(a + b) == {"a", "na"}


def test_weak_and_strong_sat():
    theory = CORPUS / "appendix_theory.json"
    weak = infkit.sat(theory, "weak", 2, 4)
    assert weak["found"]
    assert infkit.check_model(weak["model"])["ok"]
    assert not infkit.sat(theory, "strong", 2, 4)["found"]


def test_ro_sizes():
    antichain = {"elements": ["a", "b", "c"], "leq": []}
    assert infkit.ro(antichain)["size"] == 8
    chain = {"elements": ["lo", "hi"], "leq": [["lo", "hi"]]}
    r = infkit.ro(chain)
    assert r["size"] == 2 and r["embedding_ok"] and r["algebra_ok"]


def test_cp_pipeline_and_mansfield():
    cp = CORPUS / "cp_existential.json"
    assert infkit.check_cp(cp)["ok"]
    for row in infkit.generic(cp):
        assert row["generic"] and row["realizes"] and row["finite_subsets_match"]
    for row in infkit.mansfield(cp):
        assert row["model_ok"] and row["claim1"] and row["claim2"]
    assert not infkit.check_cp(CORPUS / "cp_con_violation.json")["ok"]


def test_forcing_roundtrip():
    r = infkit.forcing(CORPUS / "algebra_16.json")
    assert r["size"] == 16 and r["cp_ok"] and r["embedding_ok"] and r["isomorphic"]


def test_los():
    r = infkit.los(CORPUS / "appendix_model.json", CORPUS / "appendix_los_pool.json")
    assert r["violations"] == 0 and r["checked"] > 0


def test_proofs():
    ok = infkit.check_proof(CORPUS / "proof_cut.json", samples=50)
    assert ok["accepted"] and ok["violations"] == 0
    bad = infkit.check_proof(CORPUS / "proof_eigenvariable.json")
    assert not bad["accepted"] and "eigenvariable" in bad["reason"]


def test_canonical_roundtrip():
    for f in sorted(CORPUS.glob("*.json")):
        raw = f.read_text(encoding="utf-8")
        assert infkit.canonical(raw) == raw, f.name


def test_parse_error_has_path():
    bad = {"constants": [], "relations": [{"name": "R", "arity": 0}]}
    with pytest.raises(ValueError, match=r"\$\.relations\[0\]\.arity"):
        infkit.canonical(json.dumps(bad), "signature")


def test_corpus():
    r = infkit.run_corpus(CORPUS / "manifest.json")
    assert r["ok"] and r["entries"] > 30
