#!/usr/bin/env python3
"""Regenerates corpus/ and canonicalizes every file with `infkit fmt --write`.

Usage: tools/make_corpus.py [path/to/infkit]
"""
import json
import pathlib
import subprocess
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent
OUT = ROOT / "corpus"
INFKIT = sys.argv[1] if len(sys.argv) > 1 else str(ROOT / "build" / "infkit")


def C(x):
    return {"const": x}


def V(x):
    return {"var": x}


def eq(a, b):
    return {"eq": [a, b]}


def atom(r, *args):
    return {"atom": {"rel": r, "args": list(args)}}


def neg(f):
    return {"not": f}


def And(*fs):
    return {"and": list(fs)}


def Or(*fs):
    return {"or": list(fs)}


def forall(vs, body):
    return {"forall": {"vars": vs, "body": body}}


def exists(vs, body):
    return {"exists": {"vars": vs, "body": body}}


def sig(rels=(), consts=()):
    return {"relations": [{"name": n, "arity": a} for n, a in rels], "constants": list(consts)}


entries = []
files = {}


def add(name, kind, file, data, expect=None):
    files[file] = data
    entries.append({"name": name, "kind": kind, "file": file, "expect": expect or {}})


def side(file, data):
    files[file] = data


# --- appendix: the four-element algebra and the theory T ---------------------
app_sig = sig(consts=["d", "c0", "c1"])
dom = ["f00", "f01", "f10", "f11"]  # value at a, value at not-a
atoms = ["a", "na"]
eqs = []
for i, x in enumerate(dom):
    for y in dom[i + 1:]:
        v = [at for k, at in enumerate(atoms) if x[1 + k] == y[1 + k]]
        if v:
            eqs.append({"pair": [x, y], "value": v})
app_model = {
    "signature": app_sig,
    "algebra": {"type": "powerset", "atoms": atoms},
    "domain": dom,
    "eq": eqs,
    "relations": {},
    "constants": {"c0": "f00", "c1": "f11", "d": "f01"},
}
T = [
    Or(eq(C("d"), C("c0")), eq(C("d"), C("c1"))),
    neg(eq(C("c0"), C("c1"))),
    neg(eq(C("d"), C("c0"))),
    neg(eq(C("d"), C("c1"))),
]
los_pool = [
    eq(C("d"), V("v0")),
    neg(eq(V("v0"), C("c0"))),
    exists(["v0"], eq(C("d"), V("v0"))),
    forall(["v0"], Or(eq(V("v0"), C("c0")), eq(V("v0"), C("c1")))),
    And(eq(C("d"), V("v0")), neg(eq(V("v0"), C("c1")))),
    exists(["v1"], And(neg(eq(V("v1"), V("v0"))), eq(V("v1"), C("d")))),
    forall(["v0", "v1"], Or(eq(V("v0"), V("v1")), neg(eq(V("v0"), V("v1"))))),
]
side("appendix_pool.json", T)
side("appendix_los_pool.json", los_pool)
side("appendix_ultrafilter.json", {"generator": ["a"]})
add("appendix model", "model", "appendix_model.json", app_model, {
    "check_model": True,
    "mixing": True,
    "quotients": True,
    "los_pool": "appendix_los_pool.json",
    "eval": [
        {"formula": T[0], "value": ["a", "na"]},
        {"formula": T[1], "value": ["a", "na"]},
        {"formula": T[2], "value": ["na"]},
        {"formula": T[3], "value": ["a"]},
        {"formula": eq(C("d"), V("v0")), "assign": {"v0": "f00"}, "value": ["a"]},
    ],
    "cp_from_model": {"pool": "appendix_pool.json", "check_cp": True, "smax": True},
})
add("appendix theory", "theory", "appendix_theory.json", {"signature": app_sig, "sentences": T}, {
    "sat": [
        {"mode": "weak", "max_atoms": 2, "max_domain": 4, "found": True},
        {"mode": "strong", "max_atoms": 2, "max_domain": 4, "found": False},
    ],
})
add("appendix ultrafilter", "ultrafilter", "appendix_ultrafilter.json", files["appendix_ultrafilter.json"])
add("appendix pool", "pool", "appendix_pool.json", T)
add("appendix Los pool", "pool", "appendix_los_pool.json", los_pool)

# --- consistency properties ---------------------------------------------------
# Two branches over a disjunction with distinct witnesses: the Mansfield model
# at the common root has two atoms and no element gluing c1 and c2.
R = lambda t: atom("R", t)
S = lambda t: atom("S", t)
s0 = [Or(R(C("c1")), R(C("c2"))), eq(C("c1"), C("c1")), eq(C("c2"), C("c2")), neg(eq(C("c1"), C("c2")))]
add("two branches", "cp", "cp_two_branches.json", {
    "signature": sig([("R", 1)]),
    "fresh_constants": ["c1", "c2"],
    "family": [s0, s0 + [R(C("c1"))], s0 + [R(C("c2"))]],
}, {
    "check_cp": True,
    "generic": True,
    "mansfield": True,
    "mansfield_mixing": False,
    "mansfield_full": {"formula": exists(["v0"], R(V("v0"))), "attained": False},
})

# Existential with a base constant identified with a witness.
e0 = [exists(["v0"], R(V("v0"))), eq(C("c0"), C("c0")), eq(C("c1"), C("c1")), eq(C("c0"), C("d")),
      eq(C("d"), C("c0")), eq(C("d"), C("d"))]
add("existential witness", "cp", "cp_existential.json", {
    "signature": sig([("R", 1)], ["d"]),
    "fresh_constants": ["c0", "c1"],
    "family": [e0, e0 + [R(C("c1"))], e0 + [R(C("c0")), R(C("d"))]],
}, {"check_cp": True, "generic": True, "mansfield": True})

# Negation, conjunction and universal clauses.
conj = And(R(C("c")), S(C("c")))
a = [neg(conj), Or(neg(R(C("c"))), neg(S(C("c")))), eq(C("c"), C("c"))]
add("connectives", "cp", "cp_connectives.json", {
    "signature": sig([("R", 1), ("S", 1)]),
    "fresh_constants": ["c"],
    "family": [
        a,
        a + [neg(R(C("c")))],
        a + [neg(S(C("c")))],
        [conj, R(C("c")), S(C("c")), eq(C("c"), C("c"))],
        [forall(["v0"], R(V("v0"))), R(C("c")), eq(C("c"), C("c"))],
    ],
}, {"check_cp": True, "generic": True, "mansfield": True})

# A maximal filter that is not generic: the disjunction has no witness.
add("disjunction without witness", "cp", "cp_not_generic.json", {
    "signature": sig([("R", 1), ("S", 1)]),
    "fresh_constants": ["c"],
    "family": [[Or(R(C("c")), S(C("c"))), eq(C("c"), C("c"))]],
}, {"check_cp": False, "generic": False})

# (kappa, omega)-maximal: the complete diagram of a two-element structure with
# R = {c0} and d interpreted as c1, over a pool closed under the needed negations.
ko_member = [R(C("c0")), neg(R(C("c1"))), neg(R(C("d"))), eq(C("c0"), C("c0")), eq(C("c1"), C("c1")),
             eq(C("d"), C("d")), eq(C("c1"), C("d")), eq(C("d"), C("c1")), neg(eq(C("c0"), C("c1"))),
             neg(eq(C("c0"), C("d")))]
ko_pool = ko_member + [R(C("c1")), R(C("d")), eq(C("c0"), C("c1")), eq(C("c0"), C("d"))]
add("kappa-omega maximal", "cp", "cp_kappa_omega.json", {
    "signature": sig([("R", 1)], ["d"]),
    "fresh_constants": ["c0", "c1"],
    "family": [ko_member],
    "pool": ko_pool,
}, {"check_cp": True, "smax": True, "generic": True, "kappa_omega": True, "mansfield": True})

# Violations the checker must report.
add("contradictory member", "cp", "cp_con_violation.json", {
    "signature": sig([("R", 1)]),
    "fresh_constants": ["c"],
    "family": [[R(C("c")), neg(R(C("c")))]],
}, {"check_cp": False})
add("existential without witness", "cp", "cp_ind5_violation.json", {
    "signature": sig([("R", 1)]),
    "fresh_constants": ["c"],
    "family": [[exists(["v0"], R(V("v0")))]],
}, {"check_cp": False})

# --- algebras -----------------------------------------------------------------
table_names = ["zero", "p", "q", "one"]
tb = {"zero": 0, "p": 1, "q": 2, "one": 3}
inv = {v: k for k, v in tb.items()}
four_table = {
    "type": "table",
    "elements": table_names,
    "meet": [[inv[tb[x] & tb[y]] for y in table_names] for x in table_names],
    "join": [[inv[tb[x] | tb[y]] for y in table_names] for x in table_names],
    "comp": [inv[3 & ~tb[x]] for x in table_names],
}
algebras = [
    ("two-element algebra", "algebra_2.json", {"type": "powerset", "atoms": ["a"]}, 2),
    ("four-element algebra", "algebra_4.json", {"type": "powerset", "atoms": ["a", "na"]}, 4),
    ("four-element table algebra", "algebra_4_table.json", four_table, 4),
    ("eight-element regular-open algebra", "algebra_8_ro.json", {
        "type": "ro",
        "poset": {"elements": ["x", "y", "z", "top"], "leq": [["x", "top"], ["y", "top"], ["z", "top"]]},
    }, 8),
    ("sixteen-element algebra", "algebra_16.json", {"type": "powerset", "atoms": ["a0", "a1", "a2", "a3"]}, 16),
]
for name, file, data, size in algebras:
    add(name, "algebra", file, data, {"size": size, "check_algebra": True, "forcing": True})

# --- posets -------------------------------------------------------------------
posets = [
    ("antichain of three", "poset_antichain3.json", {"elements": ["p", "q", "r"], "leq": []}, 8),
    ("two-chain", "poset_chain2.json", {"elements": ["lo", "hi"], "leq": [["lo", "hi"]]}, 2),
    ("binary tree of depth two", "poset_tree.json", {
        "elements": ["r", "s0", "s1", "t00", "t01", "t10"],
        "leq": [["s0", "r"], ["s1", "r"], ["t00", "s0"], ["t01", "s0"], ["t10", "s1"]],
    }, 8),
    ("diamond", "poset_diamond.json", {
        "elements": ["bot", "l", "r", "top"],
        "leq": [["bot", "l"], ["bot", "r"], ["l", "top"], ["r", "top"]],
    }, 2),
]
for name, file, data, size in posets:
    add(name, "poset", file, data, {"ro_size": size, "ro": True})

# --- proofs -------------------------------------------------------------------


def seq(ante, succ):
    return {"ante": ante, "succ": succ}


def step(s, name, premises=(), **params):
    rule = {"name": name}
    if premises:
        rule["premises"] = list(premises)
    rule.update(params)
    return {"sequent": s, "rule": rule}


Rc, Sc, Rd = R(C("c")), S(C("c")), R(C("d"))
allR = forall(["v0"], R(V("v0")))
proofs = {
    "proof_axiom.json": [step(seq([Rc], [Rc]), "axiom")],
    "proof_quant_left.json": [
        step(seq([Rc], [Rc]), "axiom"),
        step(seq([allR], [Rc]), "quant_left", [0], formula=allR, terms=[C("c")]),
    ],
    "proof_excluded_middle.json": [
        step(seq([Rc], [Rc]), "axiom"),
        step(seq([], [Rc, neg(Rc)]), "neg_right", [0], formula=Rc),
    ],
    "proof_conj_right.json": [
        step(seq([Rc, Sc], [Rc]), "axiom", formula=Rc),
        step(seq([Rc, Sc], [Sc]), "axiom", formula=Sc),
        step(seq([Rc, Sc], [And(Rc, Sc)]), "conj_right", [0, 1], formula=And(Rc, Sc)),
    ],
    "proof_conj_left.json": [
        step(seq([Rc, Sc], [Sc]), "axiom"),
        step(seq([And(Rc, Sc)], [Sc]), "conj_left", [0], formula=And(Rc, Sc)),
    ],
    "proof_quant_right.json": [
        step(seq([R(V("v1"))], [R(V("v1"))]), "axiom"),
        step(seq([allR], [R(V("v1"))]), "quant_left", [0], formula=allR, terms=[V("v1")]),
        step(seq([allR], [forall(["v1"], R(V("v1")))]), "quant_right", [1],
             formula=forall(["v1"], R(V("v1"))), vars=["v1"]),
    ],
    "proof_cut.json": [
        step(seq([Rc], [Rc]), "axiom"),
        step(seq([Rc], [And(Rc)]), "conj_right", [0], formula=And(Rc)),
        step(seq([allR], [Rc]), "quant_left", [0], formula=allR, terms=[C("c")]),
        step(seq([allR], [And(Rc)]), "cut", [1, 2], formula=Rc),
    ],
    "proof_equality.json": [
        step(seq([eq(C("c"), C("d"))], [eq(C("d"), C("c"))]), "eq1"),
        step(seq([eq(C("d"), C("c")), Rc], [Rd]), "eq2", formula=R(V("v0")), vars=["v0"], **{"from": [C("c")], "to": [C("d")]}),
        step(seq([eq(C("c"), C("d")), Rc], [Rd]), "cut", [1, 0], formula=eq(C("d"), C("c"))),
    ],
    "proof_substitution.json": [
        step(seq([R(V("v0"))], [R(V("v0"))]), "axiom"),
        step(seq([Rc], [Rc]), "substitution", [0], map={"v0": C("c")}),
        step(seq([Rc, Sc], [Rc, Rd]), "weakening", [1]),
    ],
    "proof_empty_conjunction.json": [step(seq([], [And()]), "conj_right", formula=And())],
    "proof_neg_left.json": [
        step(seq([Rc], [Rc]), "axiom"),
        step(seq([Rc, neg(Rc)], []), "neg_left", [0], formula=Rc),
    ],
}
proof_names = {
    "proof_axiom.json": "axiom",
    "proof_quant_left.json": "left quantification",
    "proof_excluded_middle.json": "excluded middle",
    "proof_conj_right.json": "right conjunction",
    "proof_conj_left.json": "left conjunction",
    "proof_quant_right.json": "right quantification",
    "proof_cut.json": "cut",
    "proof_equality.json": "equality rules",
    "proof_substitution.json": "substitution and weakening",
    "proof_empty_conjunction.json": "empty conjunction",
    "proof_neg_left.json": "left negation",
}
for file, steps in proofs.items():
    add("proof: " + proof_names[file], "proof", file, {"steps": steps}, {
        "accepted": True,
        "soundness": {"samples": 200, "seed": 7, "max_atoms": 3, "max_domain": 3, "violations": False},
    })
add("unprovable goal", "proof", "proof_unprovable.json", {"steps": [step(seq([], [Rc]), "axiom")]}, {
    "accepted": False,
    "soundness": {"samples": 100, "seed": 7, "max_atoms": 3, "max_domain": 3, "violations": True, "within": 100},
})
add("eigenvariable violation", "proof", "proof_eigenvariable.json", {"steps": [
    step(seq([R(V("v0"))], [R(V("v0"))]), "axiom"),
    step(seq([R(V("v0"))], [allR]), "quant_right", [0], formula=allR, vars=["v0"]),
]}, {"accepted": False})

# --- signature and formula samples ----------------------------------------------
add("signature", "signature", "signature.json", sig([("R", 1), ("E", 2)], ["d"]))
add("formula", "formula", "formula.json",
    forall(["v0"], Or(neg(atom("E", V("v0"), C("d"))), exists(["v1"], And(atom("E", V("v0"), V("v1")), R(V("v1")))))))

OUT.mkdir(exist_ok=True)
for file, data in files.items():
    (OUT / file).write_text(json.dumps(data))
(OUT / "manifest.json").write_text(json.dumps({"entries": entries}, indent=2, sort_keys=True) + "\n")
for file in files:
    subprocess.run([INFKIT, "fmt", "--write", str(OUT / file)], check=True)
print(f"wrote {len(files)} files and {len(entries)} manifest entries")
