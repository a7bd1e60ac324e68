"""Dominant-term extraction and classification of candidate potentials.

`dominant` keeps the monomials that are maximal in the componentwise order
on exponents.  `classify` matches a dominant polynomial against the fixed
table of admissible two-variable shapes (weight-3 data has total degree at
most 3), extracting the named coefficients positionally and evaluating the
row conditions exactly.  Rows are stored with deg_y1 ascending; inputs of
the mirrored orientation are matched after swapping and the permutation is
recorded in the report notes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (NoRealPositiveFactor, NotPositive, NotPositiveOnK,
                     UnrecognizedSupport, ZeroPolynomial)
from .polynomials import RealPolynomial2


# ---------------------------------------------------------------------------
# dominant part
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DominantPolynomial:
    poly: RealPolynomial2        # restricted to the maximal Newton dots
    d1: int
    d2: int
    d: int                       # total-degree bound of the retained dots
    source: RealPolynomial2 | None = field(default=None, compare=False)


def dominant(poly: RealPolynomial2) -> DominantPolynomial:
    """Keep exactly the exponent pairs not dominated componentwise."""
    if poly.is_zero():
        raise ZeroPolynomial("cannot take the dominant part of 0")
    dots = list(poly.support())
    keep = {}
    for a, b in dots:
        if any((a2 >= a and b2 >= b and (a2, b2) != (a, b)) for a2, b2 in dots):
            continue
        keep[(a, b)] = poly.coeff(a, b)
    dom = RealPolynomial2(keep)
    return DominantPolynomial(dom, poly.degree(1), poly.degree(2),
                              dom.total_degree(), source=poly)


def _as_poly(p) -> RealPolynomial2:
    return p.poly if isinstance(p, DominantPolynomial) else p


# ---------------------------------------------------------------------------
# exact log-Hessian
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HessianLog:
    """Matrix entries M_ij = (d_i p * d_j p - p * d_i d_j p) / p^2, exact."""

    p: RealPolynomial2
    n11: RealPolynomial2
    n12: RealPolynomial2
    n22: RealPolynomial2

    @property
    def den(self) -> RealPolynomial2:
        return self.p * self.p

    def det_numerator(self) -> RealPolynomial2:
        """Numerator of det(M) over p^4."""
        return self.n11 * self.n22 - self.n12 * self.n12

    def evaluate_exact(self, y1, y2=Fraction(0)):
        p2 = self.p.eval_exact(y1, y2) ** 2
        return ((self.n11.eval_exact(y1, y2) / p2, self.n12.eval_exact(y1, y2) / p2),
                (self.n12.eval_exact(y1, y2) / p2, self.n22.eval_exact(y1, y2) / p2))

    def evaluate(self, y1, y2=0.0) -> np.ndarray:
        """Float 2x2 matrices, broadcast over arrays of points."""
        y1 = np.asarray(y1, dtype=float)
        y2 = np.asarray(y2, dtype=float)
        p2 = self.p.eval_float(y1, y2) ** 2
        m11 = self.n11.eval_float(y1, y2) / p2
        m12 = self.n12.eval_float(y1, y2) / p2
        m22 = self.n22.eval_float(y1, y2) / p2
        out = np.stack([np.stack([m11, m12], axis=-1),
                        np.stack([m12, m22], axis=-1)], axis=-2)
        return out


def hessian_log(p) -> HessianLog:
    """Exact -dd log p as a symmetric 2x2 of rational functions."""
    p = _as_poly(p)
    if p.is_zero():
        raise ZeroPolynomial("log of the zero polynomial")
    p1, p2 = p.diff(1), p.diff(2)
    return HessianLog(p,
                      p1 * p1 - p * p.diff(1).diff(1),
                      p1 * p2 - p * p.diff(1).diff(2),
                      p2 * p2 - p * p.diff(2).diff(2))


# ---------------------------------------------------------------------------
# the case table
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TableRow:
    label: str
    degrees: tuple               # (deg_y1, deg_y2, total)
    positions: tuple             # ((name, (a, b)), ...) positional coefficients
    strict_pos: tuple            # names required > 0
    discriminants: tuple         # ((name, callable), ...) required >= 0

    @property
    def support(self) -> frozenset:
        return frozenset(pos for _, pos in self.positions)


def _d(expr):
    return expr


TABLE = (
    TableRow("i", (1, 1, 1), (("A", (0, 1)), ("B", (1, 0))), ("A", "B"), ()),
    TableRow("ii", (1, 1, 2), (("A", (0, 1)), ("B", (1, 1)), ("C", (1, 0))),
             ("A", "B", "C"), ()),
    TableRow("iii", (1, 2, 2), (("A", (0, 2)), ("B", (1, 1)), ("C", (1, 0))),
             ("A", "B", "C"), ()),
    TableRow("iv", (1, 2, 3), (("A", (0, 2)), ("B", (1, 2)), ("C", (1, 0))),
             ("A", "B", "C"), ()),
    TableRow("v", (1, 3, 3), (("A", (0, 3)), ("B", (1, 2)), ("C", (1, 0))),
             ("A", "B", "C"), ()),
    TableRow("vi", (2, 2, 2), (("A", (0, 2)), ("B", (1, 1)), ("C", (2, 0))),
             ("A", "C"),
             (("B2_minus_4AC", lambda c: c["B"] ** 2 - 4 * c["A"] * c["C"]),)),
    TableRow("vii", (2, 2, 3),
             (("A", (0, 2)), ("B", (1, 2)), ("C", (2, 1)), ("D", (2, 0))),
             ("A", "B", "C", "D"), ()),
    TableRow("viii", (2, 3, 3),
             (("A", (0, 3)), ("B", (1, 2)), ("C", (2, 1)), ("D", (2, 0))),
             ("A", "C", "D"),
             (("B2_minus_3AC", lambda c: c["B"] ** 2 - 3 * c["A"] * c["C"]),)),
    TableRow("ix", (3, 3, 3),
             (("A", (0, 3)), ("B", (1, 2)), ("C", (2, 1)), ("D", (3, 0))),
             ("A", "D"),
             (("B2_minus_3AC", lambda c: c["B"] ** 2 - 3 * c["A"] * c["C"]),
              ("C2_minus_3BD", lambda c: c["C"] ** 2 - 3 * c["B"] * c["D"]))),
)

# shapes ruled out in the case analysis; matching one is a definite rejection
REJECTED_SHAPES = (
    ("Ay2^2+By1", frozenset({(0, 2), (1, 0)})),
    ("Ay2^3+By2y1+Cy1", frozenset({(0, 3), (1, 1), (1, 0)})),
    ("Ay2^3+By1", frozenset({(0, 3), (1, 0)})),
    ("Ay2^2+By2^2y1+Cy1^2", frozenset({(0, 2), (1, 2), (2, 0)})),
    ("Ay2^2+By2y1^2+Cy1^2", frozenset({(0, 2), (2, 1), (2, 0)})),
    ("Ay2^3+By2y1^2+Cy1^2", frozenset({(0, 3), (2, 1), (2, 0)})),
    ("Ay2^3+By1^2", frozenset({(0, 3), (2, 0)})),
    ("Ay2^3+By2^2y1+Cy1^2", frozenset({(0, 3), (1, 2), (2, 0)})),
)


@dataclass(frozen=True)
class ClassificationReport:
    case_label: str              # "i".."ix" or "Invalid"
    conditions: dict
    strict: bool
    coefficients: dict
    notes: dict

    @property
    def valid(self) -> bool:
        return self.case_label != "Invalid"


def _swap_support(support):
    return frozenset((b, a) for a, b in support)


def _subcase_notes(label: str, coeffs: dict) -> dict:
    notes: dict = {}
    if label == "vi":
        disc = coeffs["B"] ** 2 - 4 * coeffs["A"] * coeffs["C"]
        if disc == 0:
            notes["complete_square"] = True
    if label == "viii":
        notes["B_nonzero"] = coeffs["B"] != 0
        notes["B_positive"] = coeffs["B"] > 0
    if label == "ix":
        d1 = coeffs["B"] ** 2 - 3 * coeffs["A"] * coeffs["C"]
        d2 = coeffs["C"] ** 2 - 3 * coeffs["B"] * coeffs["D"]
        bc = coeffs["B"] * coeffs["C"]
        det_mid = bc - 9 * coeffs["A"] * coeffs["D"]
        notes["det_quadratic_mid"] = det_mid
        if d1 > 0 and d2 > 0:
            notes["subcase"] = "a" if bc > 0 else "b"
        elif d1 == 0 and d2 == 0:
            notes["subcase"] = "d"
            notes["perfect_cube"] = True
        else:
            notes["subcase"] = "c"
    return notes


def classify(dom: DominantPolynomial) -> ClassificationReport:
    """Match against the case table; never coerces an unknown support.

    Matching tries both variable orientations.  Coefficients at positions
    that the dominance rule dropped (a table row may list componentwise-
    dominated monomials) are recovered from the source polynomial carried
    by `dominant`.
    """
    if dom.d > 3:
        raise UnrecognizedSupport(f"total degree {dom.d} exceeds the table bound 3")
    support = dom.poly.support()
    source = dom.source if dom.source is not None else dom.poly

    def coeff_from(a, b, swapped):
        if swapped:
            a, b = b, a
        c = source.coeff(a, b)
        if c == 0:
            c = dom.poly.coeff(a, b)
        return c

    for swapped in (False, True):
        oriented = _swap_support(support) if swapped else support
        for name, shape in REJECTED_SHAPES:
            if oriented == shape:
                return ClassificationReport(
                    "Invalid", {}, False, {},
                    {"rejected_shape": name, "permuted": swapped})

    # exact row match first, then subset-of-row with matching degree triple
    for exact in (True, False):
        for swapped in (False, True):
            oriented = _swap_support(support) if swapped else support
            degrees = (dom.d2, dom.d1, dom.d) if swapped else (dom.d1, dom.d2, dom.d)
            for row in TABLE:
                if exact:
                    if oriented != row.support:
                        continue
                else:
                    if degrees != row.degrees or not oriented <= row.support:
                        continue
                coeffs = {name: coeff_from(a, b, swapped)
                          for name, (a, b) in row.positions}
                conditions = {}
                strict = True
                for name in row.strict_pos:
                    conditions[f"{name}_pos"] = coeffs[name] > 0
                for cname, fn in row.discriminants:
                    value = fn(coeffs)
                    conditions[f"{cname}_nonneg"] = value >= 0
                    strict = strict and value > 0
                ok = all(conditions.values())
                notes = {"row": row.label, "permuted": swapped}
                if not exact:
                    notes["support_proper_subset"] = True
                notes.update(_subcase_notes(row.label, coeffs))
                return ClassificationReport(
                    row.label if ok else "Invalid", conditions,
                    ok and strict, coeffs, notes)

    raise UnrecognizedSupport(f"support {sorted(support)} matches no table row "
                              "and no rejected shape")


# ---------------------------------------------------------------------------
# semidefiniteness and eigenvalue floor
# ---------------------------------------------------------------------------

def psd_large_y(p, grid=None) -> bool:
    """Exact check of M(p) >= 0 on a log-spaced far grid.

    Uses the 1x1 and 2x2 minors of the numerator matrix evaluated at exact
    integer points, so there is no float tolerance to tune.
    """
    poly = _as_poly(p)
    h = hessian_log(poly)
    grid = grid or [10 ** e for e in range(2, 7)]
    for y1 in grid:
        for y2 in grid:
            if poly.eval_exact(y1, y2) <= 0:
                raise NotPositive(f"p({y1},{y2}) <= 0")
            n11 = h.n11.eval_exact(y1, y2)
            n22 = h.n22.eval_exact(y1, y2)
            n12 = h.n12.eval_exact(y1, y2)
            if n11 < 0 or n22 < 0 or n11 * n22 - n12 * n12 < 0:
                return False
    return True


@dataclass(frozen=True)
class MinEigReport:
    value: float
    resolution: float


def min_eigenvalue_on_K(p, num_points: int = 10001) -> MinEigReport:
    """Minimum eigenvalue of M(p) over the first-quadrant unit circle.

    Requires p homogeneous and positive on the quarter circle; homogeneity
    makes the restriction to R = 1 lossless (M scales by 1/R^2).
    """
    poly = _as_poly(p)
    if not poly.is_homogeneous():
        raise ValueError("eigenvalue sweep needs a homogeneous polynomial")
    theta = np.linspace(0.0, np.pi / 2, num_points)
    y1, y2 = np.cos(theta), np.sin(theta)
    pv = poly.eval_float(y1, y2)
    if np.any(pv <= 0):
        raise NotPositiveOnK("p vanishes or is negative on the sweep")
    h = hessian_log(poly)
    m = h.evaluate(y1, y2)
    tr = m[..., 0, 0] + m[..., 1, 1]
    gap = np.sqrt((m[..., 0, 0] - m[..., 1, 1]) ** 2 + 4 * m[..., 0, 1] ** 2)
    lam_min = (tr - gap) / 2
    return MinEigReport(float(lam_min.min()), float(np.pi / 2 / (num_points - 1)))


# ---------------------------------------------------------------------------
# cubic factorization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CubicFactorization:
    t: Fraction
    s: Fraction
    a: Fraction
    b: Fraction
    c: Fraction
    residual: Fraction

    def linear(self) -> RealPolynomial2:
        return RealPolynomial2({(1, 0): self.t, (0, 1): self.s})

    def quadratic(self) -> RealPolynomial2:
        return RealPolynomial2({(2, 0): self.a, (1, 1): self.b, (0, 2): self.c})


def _divide_by_linear(coeffs, t: Fraction, s: Fraction):
    """Divide A y1^3 + B y1^2 y2 + C y1 y2^2 + D y2^3 by t y1 + s y2."""
    big_a, big_b, big_c, big_d = coeffs
    a = big_a / t
    b = (big_b - s * a) / t
    c = (big_c - s * b) / t
    rem = big_d - s * c
    return a, b, c, rem


def factor_cubic(p, precision_bits: int = 60) -> CubicFactorization:
    """Split a positive homogeneous cubic as (t y1 + s y2)(a y1^2 + b y1 y2 + c y2^2).

    The real root of the dehomogenized cubic is rationalized at the given
    precision and verified by exact re-expansion; coefficient residuals stay
    below 1e-10 for admissible inputs.  t, s > 0 and the quadratic factor is
    positive on the closed first quadrant, otherwise NoRealPositiveFactor.
    """
    poly = _as_poly(p)
    if not poly.is_homogeneous() or poly.total_degree() != 3:
        raise ValueError("factor_cubic needs a homogeneous cubic")
    coeffs = (poly.coeff(3, 0), poly.coeff(2, 1), poly.coeff(1, 2), poly.coeff(0, 3))
    big_a = coeffs[0]

    sigmas: list[float] = []
    if big_a != 0:
        roots = np.roots([float(c) for c in coeffs])
        sigmas = [-r.real for r in sorted(roots, key=lambda z: -z.real)
                  if abs(r.imag) < 1e-9 and r.real < 0]
    else:
        # y2 divides p; look for strictly positive factors of the quadratic part
        qb, qc, qd = coeffs[1], coeffs[2], coeffs[3]
        if qb != 0 and qc * qc - 4 * qb * qd >= 0:
            root = np.sqrt(float(qc * qc - 4 * qb * qd))
            sigmas = [-r for sgn in (1, -1)
                      for r in [(-float(qc) + sgn * root) / (2 * float(qb))] if r < 0]

    scale = max(abs(float(x)) for x in coeffs)
    bounds = [10 ** 3, 10 ** 6, 10 ** 9, 10 ** 12, 2 ** precision_bits]
    best = None
    for sigma_float in sigmas:
        for bound in bounds:
            sigma = Fraction(sigma_float).limit_denominator(bound)
            if sigma <= 0:
                continue
            # primitive integer linear factor (t y1 + s y2)
            t_i, s_i = Fraction(sigma.denominator), Fraction(sigma.numerator)
            a, b, c, rem = _divide_by_linear(coeffs, t_i, s_i)
            if abs(float(rem)) > 1e-10 * max(scale, 1.0):
                continue
            if a <= 0 or c <= 0 or (b < 0 and b * b - 4 * a * c >= 0):
                continue  # quadratic factor not positive on the closed quadrant
            cand = CubicFactorization(t_i, s_i, a, b, c, rem)
            if best is None or abs(cand.residual) < abs(best.residual):
                best = cand
            if rem == 0:
                return cand
    if best is None:
        raise NoRealPositiveFactor(
            "no linear factor t y1 + s y2 with t, s > 0 and positive cofactor")
    return best
