"""Exact real polynomials in (y1, y2) with rational coefficients.

Monomials are keyed by exponent pairs (a, b); the one-variable case is the
b == 0 slice.  Coefficients are Fractions throughout; numeric evaluation
converts to float at the call site only.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import ZeroPolynomial


class RealPolynomial2:
    """Polynomial sum c_{ab} * y1^a * y2^b with exact rational c_{ab}."""

    __slots__ = ("monomials",)

    def __init__(self, monomials=None):
        mono = {}
        if monomials:
            for (a, b), c in dict(monomials).items():
                c = Fraction(c)
                if c != 0:
                    mono[(int(a), int(b))] = c
        self.monomials = mono

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def zero() -> "RealPolynomial2":
        return RealPolynomial2()

    @staticmethod
    def constant(c) -> "RealPolynomial2":
        return RealPolynomial2({(0, 0): Fraction(c)})

    @staticmethod
    def monomial(a: int, b: int, c=1) -> "RealPolynomial2":
        return RealPolynomial2({(a, b): Fraction(c)})

    @staticmethod
    def one_variable(coeffs) -> "RealPolynomial2":
        """Polynomial in y1 from a {degree: coeff} map or coefficient list."""
        if isinstance(coeffs, dict):
            return RealPolynomial2({(a, 0): c for a, c in coeffs.items()})
        return RealPolynomial2({(a, 0): c for a, c in enumerate(coeffs)})

    # -- structure -------------------------------------------------------------

    def support(self) -> frozenset:
        return frozenset(self.monomials)

    def is_zero(self) -> bool:
        return not self.monomials

    def coeff(self, a: int, b: int) -> Fraction:
        return self.monomials.get((a, b), Fraction(0))

    def degree(self, var: int) -> int:
        """Degree in y1 (var=1) or y2 (var=2); -1 for the zero polynomial."""
        if not self.monomials:
            return -1
        idx = 0 if var == 1 else 1
        return max(k[idx] for k in self.monomials)

    def total_degree(self) -> int:
        if not self.monomials:
            return -1
        return max(a + b for a, b in self.monomials)

    def is_homogeneous(self) -> bool:
        degs = {a + b for a, b in self.monomials}
        return len(degs) <= 1

    # -- arithmetic --------------------------------------------------------------

    def __add__(self, other):
        out = dict(self.monomials)
        for k, c in other.monomials.items():
            out[k] = out.get(k, Fraction(0)) + c
        return RealPolynomial2(out)

    def __sub__(self, other):
        out = dict(self.monomials)
        for k, c in other.monomials.items():
            out[k] = out.get(k, Fraction(0)) - c
        return RealPolynomial2(out)

    def __neg__(self):
        return RealPolynomial2({k: -c for k, c in self.monomials.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RealPolynomial2({k: c * other for k, c in self.monomials.items()})
        out: dict = {}
        for (a1, b1), c1 in self.monomials.items():
            for (a2, b2), c2 in other.monomials.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, Fraction(0)) + c1 * c2
        return RealPolynomial2(out)

    __rmul__ = __mul__

    def diff(self, var: int) -> "RealPolynomial2":
        out = {}
        for (a, b), c in self.monomials.items():
            if var == 1 and a > 0:
                out[(a - 1, b)] = out.get((a - 1, b), Fraction(0)) + c * a
            elif var == 2 and b > 0:
                out[(a, b - 1)] = out.get((a, b - 1), Fraction(0)) + c * b
        return RealPolynomial2(out)

    def __eq__(self, other):
        if not isinstance(other, RealPolynomial2):
            return NotImplemented
        return self.monomials == other.monomials

    def __hash__(self):
        return hash(frozenset(self.monomials.items()))

    # -- evaluation ----------------------------------------------------------------

    def eval_exact(self, y1, y2=Fraction(0)) -> Fraction:
        y1, y2 = Fraction(y1), Fraction(y2)
        return sum((c * y1 ** a * y2 ** b for (a, b), c in self.monomials.items()),
                   Fraction(0))

    def eval_float(self, y1, y2=0.0):
        """Float evaluation; accepts scalars or numpy arrays."""
        y1 = np.asarray(y1, dtype=float)
        y2 = np.asarray(y2, dtype=float)
        out = np.zeros(np.broadcast(y1, y2).shape, dtype=float)
        for (a, b), c in self.monomials.items():
            out = out + float(c) * y1 ** a * y2 ** b
        return out if out.shape else float(out)

    # -- display ---------------------------------------------------------------------

    def __str__(self):
        if not self.monomials:
            return "0"
        parts = []
        for (a, b) in sorted(self.monomials, key=lambda k: (-(k[0] + k[1]), -k[0])):
            c = self.monomials[(a, b)]
            term = []
            if a:
                term.append("y1" if a == 1 else f"y1^{a}")
            if b:
                term.append("y2" if b == 1 else f"y2^{b}")
            body = "*".join(term)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def __repr__(self):
        return f"RealPolynomial2({self})"


def require_nonzero(p: RealPolynomial2) -> RealPolynomial2:
    if p.is_zero():
        raise ZeroPolynomial("the zero polynomial has no dominant part")
    return p
