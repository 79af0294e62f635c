"""Finite-scale toolkit for infinitary logic and Boolean-valued models.

Every function accepts either JSON text, a path to a JSON file, or an
already-parsed Python object, and returns plain Python values.
"""

import json
import os

from . import _infkit
from ._infkit import ParseError, InfkitError

__all__ = [
    "ParseError", "InfkitError", "canonical", "detect_kind", "check_model", "eval_formula",
    "sat", "check_cp", "generic", "mansfield", "ro", "forcing", "los", "check_proof", "run_corpus",
]


def _text(x):
    if isinstance(x, os.PathLike):
        with open(x, encoding="utf-8") as f:
            return f.read()
    if isinstance(x, str):
        if x.lstrip().startswith(("{", "[")):
            return x
        with open(x, encoding="utf-8") as f:
            return f.read()
    return json.dumps(x)


def canonical(doc, kind=None):
    return _infkit.canonical(_text(doc), kind)


def detect_kind(doc):
    return _infkit.detect_kind(_text(doc))


def check_model(model):
    return _infkit.check_model(_text(model))


def eval_formula(model, formula, assign=None):
    """Boolean value of a formula, as the sorted list of atoms below it."""
    return _infkit.eval(_text(model), _text(formula), dict(assign or {}))


def sat(theory, mode="weak", max_atoms=2, max_domain=4):
    r = _infkit.sat(_text(theory), mode, max_atoms, max_domain)
    if r["model"] is not None:
        r["model"] = json.loads(r["model"])
    return r


def check_cp(cp, smax=False):
    return _infkit.check_cp(_text(cp), smax)


def generic(cp):
    return _infkit.generic(_text(cp))


def mansfield(cp):
    out = _infkit.mansfield(_text(cp))
    for r in out:
        r["model"] = json.loads(r["model"])
    return out


def ro(poset):
    r = _infkit.ro(_text(poset))
    r["algebra"] = json.loads(r["algebra"])
    return r


def forcing(algebra):
    return _infkit.forcing(_text(algebra))


def los(model, pool):
    return _infkit.los(_text(model), _text(pool))


def check_proof(proof, samples=0, seed=20240601, max_atoms=3, max_domain=3):
    return _infkit.check_proof(_text(proof), samples, seed, max_atoms, max_domain)


def run_corpus(manifest):
    return _infkit.run_corpus(os.fspath(manifest))
