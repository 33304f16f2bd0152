"""JSON forms of realization results and Morse certificates.

Rationals are written as strings (``"1/4"``) and polynomials in the text
syntax understood by ``parse_unipoly``/``parse_bipoly``, so every document
parses back to an equal object.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .errors import ParseError
from .exact_arith import format_bipoly, format_unipoly, parse_bipoly, parse_rational, parse_unipoly
from .permutations import format_permutation, parse_permutation
from .realization import RealizationResult
from .separating_tree import shape_string, tree_from_dict, tree_to_dict
from .snake_extract import IsolatedRoot, MorseCertificate


def _q(v: Fraction) -> str:
    return str(Fraction(v))


def result_to_dict(r: RealizationResult) -> dict:
    return {
        "sigma": format_permutation(r.sigma),
        "tree": tree_to_dict(r.tree),
        "tree_shape": shape_string(r.tree),
        "roots": [format_unipoly(a) for a in r.roots],
        "P": format_bipoly(r.P),
        "Q": format_bipoly(r.Q),
        "critical_value_polys": [format_unipoly(c) for c in r.critical_value_polys],
        "witness_x": _q(r.witness_x),
        "halvings": r.halvings,
        "critical_points": [_q(v) for v in r.critical_points],
        "critical_values": [_q(v) for v in r.critical_values],
        "verified_snake": format_permutation(r.verified_snake),
    }


def result_from_dict(d: dict) -> RealizationResult:
    try:
        return RealizationResult(
            sigma=parse_permutation(d["sigma"]),
            tree=tree_from_dict(d["tree"]),
            roots=tuple(parse_unipoly(a, "x") for a in d["roots"]),
            P=parse_bipoly(d["P"]),
            Q=parse_bipoly(d["Q"]),
            critical_value_polys=tuple(parse_unipoly(c, "x") for c in d["critical_value_polys"]),
            witness_x=parse_rational(d["witness_x"]),
            halvings=int(d["halvings"]),
            critical_points=tuple(parse_rational(v) for v in d["critical_points"]),
            critical_values=tuple(parse_rational(v) for v in d["critical_values"]),
            verified_snake=parse_permutation(d["verified_snake"]),
        )
    except (KeyError, TypeError) as exc:
        raise ParseError(f"not a realization bundle: missing or bad field {exc}") from exc


def certificate_to_dict(c: MorseCertificate) -> dict:
    return {
        "degree": c.degree,
        "leading_coefficient": _q(c.leading_coefficient),
        "critical_points": [
            {"interval": [_q(r.lo), _q(r.hi)], "multiplicity": r.multiplicity} for r in c.critical_points
        ],
        "snake": format_permutation(c.critical_value_order),
    }


def certificate_from_dict(d: dict) -> MorseCertificate:
    try:
        points = tuple(
            IsolatedRoot(parse_rational(r["interval"][0]), parse_rational(r["interval"][1]), int(r["multiplicity"]))
            for r in d["critical_points"]
        )
        return MorseCertificate(
            degree=int(d["degree"]),
            leading_coefficient=parse_rational(d["leading_coefficient"]),
            critical_points=points,
            critical_value_order=parse_permutation(d["snake"]),
        )
    except (KeyError, TypeError, IndexError) as exc:
        raise ParseError(f"not a Morse certificate: missing or bad field {exc}") from exc


def loads(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("expected a JSON object")
    return data
