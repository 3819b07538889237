"""Exact quadratic forms, linking forms and unknotting verdicts.

Matrices are lists of integer rows. Structured results come back as dicts.
"""

import json

from . import _core

Error = _core.Error
DEFAULT_CAP = _core.DEFAULT_CAP


def _mat(rows):
    if isinstance(rows, str):
        return rows
    return " / ".join(" ".join(str(int(x)) for x in r) for r in rows)


def snf(matrix):
    return json.loads(_core.snf(_mat(matrix)))


def theta_ab(a, b):
    return json.loads(_core.theta_ab(a, b))


def boundary_form(theta, doubled=False):
    return json.loads(_core.boundary_form(_mat(theta), doubled))


def baut(theta, doubled=False, cap=DEFAULT_CAP):
    return json.loads(_core.baut(_mat(theta), doubled, cap))


def nikulin(theta, doubled=False):
    return json.loads(_core.nikulin(_mat(theta), doubled))


def ell5(theta, doubled=False, definite_bound=64, cap=DEFAULT_CAP):
    return json.loads(_core.ell5(_mat(theta), doubled, definite_bound, cap))


def brown_kervaire(q, bilinear=None):
    if bilinear is None:
        bilinear = [[int(i == j) for j in range(len(q))] for i in range(len(q))]
    return _core.brown_kervaire(bilinear, list(q))


def massey_range(h, sigma_k=0):
    return _core.massey_range(h, sigma_k)


def homology_tables(h, e, h1_cover=()):
    return json.loads(_core.homology_tables(h, e, list(h1_cover)))


def decide(h, e, sigma_k=0, det_k=1, stabilized=False, definite_bound=5, closed=False, cap=DEFAULT_CAP):
    return json.loads(_core.decide(h, e, sigma_k, det_k, stabilized, definite_bound, closed, cap))


def reproduce_appendix(definite_bound=5):
    return json.loads(_core.reproduce_appendix(definite_bound))
