"""Equilibrium measures of the logarithmic energy in an external field."""

import json as _json

from ._core import EqmError, format_number
from . import _core

__all__ = ["EqmError", "field", "solve", "predict", "sweep", "oracle", "format_number"]


def field(vstar=(), p=(0.0, 1.0), t=0.0):
    """Field dict in the problem-file schema.

    `vstar` holds (kind, exponent, coefficient) triples with kind "monomial"
    or "abs_power"; `p` is ascending and monic.
    """
    terms = []
    for kind, e, c in vstar:
        key = "k" if kind == "monomial" else "a"
        terms.append({"kind": kind, key: e, "c": c})
    return {"vstar": terms, "p": {"coeffs": list(p)}, "t": t}


def solve(f, ansatz="auto", tol=1e-10):
    return _json.loads(_core.solve_json(_json.dumps(f), ansatz, tol))


def predict(f, sign):
    return _json.loads(_core.predict_json(_json.dumps(f), 1 if sign in (1, "+") else -1))


def sweep(f, t_from, t_to, steps, log=False, threads=1, ansatz="auto"):
    problem = {"field": f, "ansatz": ansatz}
    return _core.sweep_csv(_json.dumps(problem), t_from, t_to, steps, log, threads)


def oracle(f, a, b, n=2001, iters=50000):
    return _json.loads(_core.oracle_json(_json.dumps(f), a, b, n, iters))
