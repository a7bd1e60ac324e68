"""Shared JSON schema and CSV output.

Rationals cross the boundary as integer pairs so exactness survives a
round trip; `dumps` is canonical (sorted keys, fixed separators) and the
serialize -> parse -> serialize loop is byte-identical.
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import linalg as la
from .classifier import ClassificationReport
from .errors import ParseError, SchemaError
from .hodge import IncreasingFiltration, NilpotentOperator, PolarizedSpace
from .limiting import LimitingExpansion
from .metric import FitVerdict, LengthSeries
from .polynomials import RealPolynomial2
from .rationals import GQ


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc)) from exc


# -- scalars -----------------------------------------------------------------

def encode_rational(x: GQ) -> dict:
    return {"re_num": x.re.numerator, "re_den": x.re.denominator,
            "im_num": x.im.numerator, "im_den": x.im.denominator}


def decode_rational(obj) -> GQ:
    try:
        return GQ(Fraction(obj["re_num"], obj["re_den"]),
                  Fraction(obj["im_num"], obj["im_den"]))
    except (KeyError, TypeError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational {obj!r}") from exc


def encode_vector(v) -> list:
    return [encode_rational(x) for x in v]


def decode_vector(obj) -> tuple:
    if not isinstance(obj, list):
        raise SchemaError("vector must be a list")
    return tuple(decode_rational(x) for x in obj)


def encode_matrix(m) -> list:
    return [encode_vector(r) for r in m]


def decode_matrix(obj) -> la.Matrix:
    if not isinstance(obj, list):
        raise SchemaError("matrix must be a list of rows")
    return tuple(decode_vector(r) for r in obj)


# -- composite objects ---------------------------------------------------------

def encode_space(s: PolarizedSpace) -> dict:
    return {"dim": s.dim, "weight": s.weight, "Q": encode_matrix(s.q_matrix)}


def decode_space(obj) -> PolarizedSpace:
    try:
        return PolarizedSpace(int(obj["dim"]), int(obj["weight"]),
                              decode_matrix(obj["Q"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad space: {exc}") from exc


def encode_expansion(e: LimitingExpansion) -> dict:
    return {"space": encode_space(e.space),
            "nilpotents": [encode_matrix(n.matrix) for n in e.nilpotents],
            "a0": encode_vector(e.a0),
            "terms": [{"I": list(i), "vec": encode_vector(v)} for i, v in e.terms]}


def decode_expansion(obj) -> LimitingExpansion:
    try:
        space = decode_space(obj["space"])
        nilpotents = tuple(NilpotentOperator(decode_matrix(m))
                           for m in obj["nilpotents"])
        a0 = decode_vector(obj["a0"])
        terms = tuple((tuple(int(x) for x in t["I"]), decode_vector(t["vec"]))
                      for t in obj.get("terms", []))
        return LimitingExpansion(space, nilpotents, a0, terms)
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad expansion: {exc}") from exc


def encode_polynomial(p: RealPolynomial2) -> dict:
    return {"monomials": [{"exp": [a, b], "num": c.numerator, "den": c.denominator}
                          for (a, b), c in sorted(p.monomials.items())]}


def decode_polynomial(obj) -> RealPolynomial2:
    try:
        return RealPolynomial2({tuple(m["exp"]): Fraction(m["num"], m["den"])
                                for m in obj["monomials"]})
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad polynomial: {exc}") from exc


def encode_filtration(w: IncreasingFiltration) -> dict:
    return {"low": w.low, "high": w.high,
            "levels": {str(l): encode_matrix(w.level(l))
                       for l in range(w.low, w.high + 1)}}


def encode_fraction(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


def encode_classification(r: ClassificationReport) -> dict:
    notes = {}
    for k, v in r.notes.items():
        notes[k] = encode_fraction(v) if isinstance(v, Fraction) else v
    return {"case_label": r.case_label,
            "valid": r.valid,
            "strict": r.strict,
            "conditions": dict(r.conditions),
            "coefficients": {k: encode_fraction(v) for k, v in r.coefficients.items()},
            "notes": notes}


def encode_fit(v: FitVerdict) -> dict:
    return {"diverges_log": v.diverges_log, "c": v.c, "intercept": v.intercept,
            "residual": v.residual, "bounded": v.bounded,
            "sup_estimate": v.sup_estimate}


# -- csv ------------------------------------------------------------------------

def write_length_csv(path, series: LengthSeries) -> None:
    lines = ["curve_id,T,L,integrand_at_T"]
    for (t, l), g in zip(series.checkpoints, series.integrand):
        lines.append(f"{series.curve_id},{t:.17g},{l:.17g},{g:.17g}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
