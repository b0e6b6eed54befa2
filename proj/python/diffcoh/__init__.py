"""Differential cohomology triples on finite simplicial sets, with exact arithmetic."""

import json

from . import _core
from ._core import (
    Coefficients,
    JobError,
    Pair,
    SimplicialError,
    Triple,
    TripleError,
    circle_class,
    circle_product,
    cohomology,
    integers,
    integrate,
    pair,
    product,
    pullback_to_circle_product,
    random_equivalent,
    random_triple,
    unit_triple,
    zero_triple,
)

__all__ = [
    "Coefficients", "JobError", "Pair", "SimplicialError", "Triple", "TripleError",
    "a_map", "circle_class", "circle_product", "coefficients", "cohomology", "compute", "equivalent",
    "integers", "integrate", "pair", "pair_from_presentation", "presentation", "product",
    "pullback_to_circle_product", "random_equivalent", "random_triple", "run_job", "to_json",
    "triple_from_json", "unit_triple", "zero_triple",
]


def _text(value):
    return value if isinstance(value, str) else json.dumps(value)


def coefficients(spec):
    """Coefficient ring from "Z", "Z[u]/(u^k),|u|=d" or an explicit ring description."""
    return _core.coefficients(json.dumps(spec))


def pair_from_presentation(spec):
    return _core.pair_from_presentation(_text(spec))


def presentation(p):
    return json.loads(p.presentation())


def to_json(t):
    return json.loads(t.to_json())


def triple_from_json(spec):
    return _core.triple_from_json(_text(spec))


def a_map(form, p, coeffs, degree):
    """a(Θ) for a form given as {basis: {cell: expression}} of degree ``degree - 1``."""
    return _core.a_map(_text(form), p, coeffs, degree)


def equivalent(t0, t1):
    """{"equivalent": bool, "witness" | "certificate": dict}."""
    out = _core.equivalent(t0, t1)
    for key in ("witness", "certificate"):
        if key in out:
            out[key] = json.loads(out[key])
    return out


def compute(complex_name, n, coeffs=None, what="cohomology"):
    return json.loads(_core.compute(complex_name, n, coeffs or integers(), what))


def run_job(job, directory=""):
    """Certificates for a job given as a dict or JSON text."""
    return json.loads(_core.run_job(_text(job), str(directory)))
