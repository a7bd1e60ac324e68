"""The pairing Q~(Omega, conj Omega): exact polynomial part and numeric rest.

The full pairing expands into finitely many records

    kappa_lm * q~(N1^l N2^m a_I, conj a_J) * y1^l y2^m * t^I conj(t)^J

with kappa_lm = (2i)^(l+m) / (l! m!).  Records with I = J = 0 form the exact
polynomial part; records decaying in exactly one variable form the two slice
groups; records decaying in both are the exponentially-small remainder class.
The same sheet drives exact construction and batched float evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np

from . import linalg as la
from .errors import FitFailure, NonPositive, NonRealCoefficient
from .limiting import LimitingExpansion, _as_points, classify_divisor
from .polynomials import RealPolynomial2
from .rationals import GQ

GROUP_POLY = "poly"
GROUP_SLICE1 = "p1"     # polynomial in y1, coefficients decay in y2
GROUP_SLICE2 = "p2"     # polynomial in y2, coefficients decay in y1
GROUP_REMAINDER = "h"   # decays in every boundary variable


@dataclass(frozen=True)
class PairingRecord:
    """One exact term of the expanded pairing."""
    l: int
    m: int
    i_exp: tuple
    j_exp: tuple
    coeff: GQ

    def group(self) -> str:
        decay1 = self.i_exp[0] + self.j_exp[0] >= 1
        decay2 = (len(self.i_exp) > 1 and self.i_exp[1] + self.j_exp[1] >= 1)
        if not decay1 and not decay2:
            return GROUP_POLY
        if decay1 and not decay2:
            return GROUP_SLICE2
        if decay2 and not decay1:
            return GROUP_SLICE1
        return GROUP_REMAINDER


def _terms_with_zero(exp: LimitingExpansion):
    zero = (0,) * exp.k
    yield zero, exp.a0
    yield from exp.terms


def pairing_records(exp: LimitingExpansion) -> tuple[PairingRecord, ...]:
    """Exact expansion records of Q~(Omega, conj Omega), consolidated."""
    n1 = exp.nilpotents[0]
    n2 = exp.nilpotents[1] if exp.k == 2 else None
    entries = list(_terms_with_zero(exp))

    # N1^l N2^m a_I by repeated matvec, and Q-contracted conjugate vectors
    pushed = {}
    for i_exp, a_i in entries:
        v = tuple(a_i)
        for l in range(n1.index + 1):
            w = v
            for m in range((n2.index + 1) if n2 else 1):
                pushed[(l, m, i_exp)] = w
                if n2 and m < n2.index:
                    w = la.mat_vec(n2.matrix, w)
            if l < n1.index:
                v = la.mat_vec(n1.matrix, v)
    twist = exp.space.twist_sign
    rhs = {j_exp: la.mat_vec(exp.space.q_matrix, la.conj_vec(a_j))
           for j_exp, a_j in entries}

    acc: dict = {}
    for (l, m, i_exp), w in pushed.items():
        kappa = GQ(0, 2) ** (l + m) / GQ(factorial(l) * factorial(m))
        for j_exp, r in rhs.items():
            pairing = twist * la.dot(w, r)
            if pairing.is_zero():
                continue
            key = (l, m, i_exp, j_exp)
            acc[key] = acc.get(key, GQ(0)) + kappa * pairing
    return tuple(PairingRecord(l, m, i, j, c)
                 for (l, m, i, j), c in sorted(acc.items(),
                                               key=lambda kv: kv[0][:2] + kv[0][2] + kv[0][3])
                 if not c.is_zero())


def polynomial_part(exp: LimitingExpansion) -> RealPolynomial2:
    """Exact polynomial Q~(A1 a0, A2 conj a0); degree in y_i equals d_i."""
    mono = {}
    for rec in pairing_records(exp):
        if rec.group() != GROUP_POLY:
            continue
        if not rec.coeff.is_real():
            raise NonRealCoefficient(
                f"monomial y1^{rec.l} y2^{rec.m} has coefficient {rec.coeff!r}")
        mono[(rec.l, rec.m)] = rec.coeff.re
    return RealPolynomial2(mono)


@dataclass(frozen=True)
class OneVariableDegreeReport:
    deg: int
    leading: Fraction
    leading_positive: bool


def one_variable_degree_check(exp: LimitingExpansion) -> OneVariableDegreeReport:
    """Degree of the one-variable polynomial part and its leading sign."""
    if exp.k != 1:
        raise ValueError("one-variable check needs k = 1")
    p = polynomial_part(exp)
    deg = max(p.degree(1), 0)
    leading = p.coeff(deg, 0)
    return OneVariableDegreeReport(deg, leading, leading > 0)


# ---------------------------------------------------------------------------
# numeric evaluation
# ---------------------------------------------------------------------------

class PotentialEvaluator:
    """Batched float evaluation of the pairing and its record groups."""

    def __init__(self, exp: LimitingExpansion):
        self.exp = exp
        self.k = exp.k
        self.records = pairing_records(exp)
        self._by_group: dict = {}
        for rec in self.records:
            self._by_group.setdefault(rec.group(), []).append(
                (rec.l, rec.m, rec.i_exp, rec.j_exp, complex(rec.coeff)))

    def _eval_records(self, recs, z: np.ndarray) -> np.ndarray:
        y1 = z[:, 0].imag
        y2 = z[:, 1].imag if self.k == 2 else None
        w = np.exp(2j * np.pi * z)           # t-coordinates
        wc = np.conj(w)
        out = np.zeros(len(z), dtype=np.complex128)
        for l, m, i_exp, j_exp, coeff in recs:
            term = np.full(len(z), coeff, dtype=np.complex128)
            if l:
                term = term * y1 ** l
            if m:
                term = term * y2 ** m
            for s in range(self.k):
                if i_exp[s]:
                    term = term * w[:, s] ** i_exp[s]
                if j_exp[s]:
                    term = term * wc[:, s] ** j_exp[s]
            out += term
        return out

    def group_values(self, group: str, z) -> np.ndarray:
        z = _as_points(z, self.k)
        return self._eval_records(self._by_group.get(group, []), z)

    def values(self, z) -> np.ndarray:
        """Real potential values; raises if the imaginary part is not noise."""
        z = _as_points(z, self.k)
        raw = self._eval_records([r for recs in self._by_group.values() for r in recs], z)
        scale = np.maximum(np.abs(raw.real), 1.0)
        if np.any(np.abs(raw.imag) > 1e-12 * scale):
            worst = np.argmax(np.abs(raw.imag) / scale)
            raise NonPositive(f"pairing not real at z={z[worst]}: {raw[worst]}")
        return raw.real


@lru_cache(maxsize=128)
def get_evaluator(exp: LimitingExpansion) -> PotentialEvaluator:
    return PotentialEvaluator(exp)


def full_potential(exp: LimitingExpansion, z) -> float:
    """Pointwise Q~(Omega(z), conj Omega(z)); positive inside the cone."""
    z = _as_points(z, exp.k)
    if np.any(z.imag <= 0):
        raise NonPositive("cusp coordinates require Im z_i > 0")
    value = float(get_evaluator(exp).values(z)[0])
    if value <= 0:
        raise NonPositive(f"potential {value} <= 0 at z={z[0]}")
    return value


# ---------------------------------------------------------------------------
# decomposition and decay verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PotentialDecomposition:
    poly: RealPolynomial2
    slice1: tuple          # records polynomial in y1, decaying in y2
    slice2: tuple          # records polynomial in y2, decaying in y1
    remainder_bound: float


def decompose(exp: LimitingExpansion) -> PotentialDecomposition:
    records = pairing_records(exp)
    poly = polynomial_part(exp)
    slice1 = tuple(r for r in records if r.group() == GROUP_SLICE1)
    slice2 = tuple(r for r in records if r.group() == GROUP_SLICE2)
    ev = get_evaluator(exp)
    if exp.k == 2:
        s = np.linspace(1.0, 3.0, 9)
        z = np.stack([0.1 + 1j * s, -0.2 + 1j * s], axis=1)
        rem = np.abs(ev.group_values(GROUP_REMAINDER, z))
        bound = float(rem.max(initial=0.0))
    else:
        bound = 0.0
    return PotentialDecomposition(poly, slice1, slice2, bound)


def fit_exponential_rate(s: np.ndarray, values: np.ndarray) -> float:
    """Decay rate r from values ~ C * s^k * e^(-r s).

    Least squares on log|values| with regressors [1, s, log s]; the log-s
    column absorbs polynomial prefactors that would otherwise bias the rate
    at moderate s.
    """
    mask = values > 0
    if mask.sum() < 4:
        raise FitFailure("not enough nonzero samples for a rate fit")
    s, values = s[mask], values[mask]
    a = np.stack([np.ones_like(s), s, np.log(s)], axis=1)
    sol, *_ = np.linalg.lstsq(a, np.log(values), rcond=None)
    return float(-sol[1])


@dataclass(frozen=True)
class RayDecay:
    label: str
    zero_remainder: bool
    rate: float
    derivative_rate: float


@dataclass(frozen=True)
class DecayReport:
    rays: tuple
    min_rate: float
    tolerance: float


def _default_rays():
    def diag(x1, x2, slope=1.0):
        def ray(s):
            return np.stack([x1 + 1j * s, x2 + 1j * slope * s], axis=1)
        return ray
    return [("diag", diag(0.0, 0.0)),
            ("diag-offset", diag(0.3, -0.2)),
            ("skew", diag(0.1, 0.05, slope=1.5))]


def decay_split_verify(exp: LimitingExpansion, rays=None, delta: float = 0.05,
                       s_grid=None) -> DecayReport:
    """Check that full - poly - p1 - p2 and its first derivatives decay
    exponentially along rays, with fitted rate >= 2 pi (1 - delta).

    The sampling range stays low (min-coordinate a few units) because the
    target rate e^(-2 pi s) reaches float noise near s = 5.
    """
    if exp.k != 2:
        raise ValueError("decay split applies to two-variable expansions")
    if s_grid is None:
        # e^(-2 pi s) hits float noise near s = 5; fit on the low range
        s_grid = np.linspace(0.5, 1.6, 12)
    s_grid = np.asarray(s_grid, dtype=float)
    if s_grid.max() / s_grid.min() < 2.5:
        raise FitFailure("sampling span too short for a decay fit")
    ev = get_evaluator(exp)

    def remainder(z):
        full = ev.values(z)
        parts = sum(ev.group_values(g, z).real
                    for g in (GROUP_POLY, GROUP_SLICE1, GROUP_SLICE2))
        return full - parts

    def masked_rate(s, vals, floor):
        mask = vals > floor
        if mask.sum() < 5:
            return None
        return fit_exponential_rate(s[mask], vals[mask])

    results = []
    threshold = 2 * np.pi * (1 - delta)
    rays = rays if rays is not None else _default_rays()
    for label, ray in rays:
        z = ray(s_grid)
        vals = np.abs(remainder(z))
        scale = max(float(np.abs(ev.values(z)).max()), 1.0)
        rate = masked_rate(s_grid, vals, 1e-13 * scale)
        if rate is None:
            results.append(RayDecay(label, True, float("inf"), float("inf")))
            continue
        h = 1e-4
        deriv_rates = []
        for coord in range(4):
            shift = np.zeros(2, dtype=np.complex128)
            shift[coord % 2] = h if coord < 2 else 1j * h
            dvals = np.abs(remainder(z + shift) - remainder(z - shift)) / (2 * h)
            dr = masked_rate(s_grid, dvals, 1e-11 * scale)
            if dr is not None:
                deriv_rates.append(dr)
        results.append(RayDecay(label, False, rate,
                                min(deriv_rates) if deriv_rates else float("inf")))
    finite = [min(r.rate, r.derivative_rate) for r in results if not r.zero_remainder]
    min_rate = min(finite) if finite else float("inf")
    return DecayReport(tuple(results), min_rate, threshold)
