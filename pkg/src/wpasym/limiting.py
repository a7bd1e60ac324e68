"""Holomorphic expansions at a boundary point and divisor classification.

The expansion stores the top-filtration generator a(t) = a0 + sum a_I t^I
directly (rank-one top piece), truncated at a finite order.  Evaluation
works in the cover coordinates z with t_i = exp(2 pi i z_i).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

import numpy as np

from . import linalg as la
from .blocks import HodgeBlock
from .errors import (DimensionMismatch, DomainError, NonCommuting, WrongWeight,
                     ZeroVector)
from .hodge import NilpotentOperator, PolarizedSpace
from .rationals import GQ


@dataclass(frozen=True)
class LimitingExpansion:
    """Truncated expansion of the top Hodge piece at a k-boundary point."""

    space: PolarizedSpace
    nilpotents: tuple                       # length k in {1, 2}
    a0: tuple
    terms: tuple = ()                       # ((multi_exponent, vector), ...)
    truncation_order: int = field(default=0)

    def __post_init__(self):
        if la.is_zero_vec(self.a0):
            raise ZeroVector("a0 must be nonzero")
        if len(self.a0) != self.space.dim:
            raise DimensionMismatch("a0 has the wrong length")
        if not 1 <= len(self.nilpotents) <= 2:
            raise ValueError("expansions support one or two boundary divisors")
        for n1 in self.nilpotents:
            for n2 in self.nilpotents:
                if not n1.commutes_with(n2):
                    raise NonCommuting("boundary nilpotents must commute")
        norm_terms = []
        order = self.truncation_order
        for exponent, vector in self.terms:
            exponent = tuple(int(e) for e in exponent)
            if len(exponent) != len(self.nilpotents) or sum(exponent) < 1:
                raise ValueError(f"bad multi-exponent {exponent}")
            if len(vector) != self.space.dim:
                raise DimensionMismatch("term vector has the wrong length")
            norm_terms.append((exponent, tuple(GQ.of(c) for c in vector)))
            order = max(order, sum(exponent))
        object.__setattr__(self, "terms", tuple(norm_terms))
        object.__setattr__(self, "truncation_order", order)

    @property
    def k(self) -> int:
        return len(self.nilpotents)

    @staticmethod
    def from_block(block: HodgeBlock, terms=(), scale_terms=None) -> "LimitingExpansion":
        terms = tuple(terms)
        if scale_terms is not None:
            terms = tuple((i, la.scale_vec(scale_terms, v)) for i, v in terms)
        return LimitingExpansion(block.space, block.nilpotents, block.a0, terms)


@dataclass(frozen=True)
class DivisorClass:
    tag: str          # "Finite" | "Infinite"
    degree: int

    def __post_init__(self):
        if (self.tag == "Finite") != (self.degree == 0):
            raise ValueError("Finite <=> degree 0")


def degree(nilpotent: NilpotentOperator, a0) -> int:
    """Largest l with N^l a0 != 0 (0 when N a0 = 0)."""
    if la.is_zero_vec(a0):
        raise ZeroVector("a0 must be nonzero")
    d = 0
    v = tuple(a0)
    while True:
        v = la.mat_vec(nilpotent.matrix, v)
        if la.is_zero_vec(v):
            return d
        d += 1


def classify_divisor(nilpotent: NilpotentOperator, a0) -> DivisorClass:
    d = degree(nilpotent, a0)
    return DivisorClass("Finite" if d == 0 else "Infinite", d)


def threefold_constraint(exp: LimitingExpansion) -> bool:
    """Whether N_i^(d_i + 1) kills every stored coefficient vector."""
    if exp.space.weight != 3:
        raise WrongWeight(f"constraint applies at weight 3, got {exp.space.weight}")
    for nilpotent in exp.nilpotents:
        power = nilpotent.power(degree(nilpotent, exp.a0) + 1)
        for _, vector in exp.terms:
            if not la.is_zero_vec(la.mat_vec(power, vector)):
                return False
    return True


# ---------------------------------------------------------------------------
# numeric evaluation
# ---------------------------------------------------------------------------

def _as_points(z, k: int) -> np.ndarray:
    z = np.asarray(z, dtype=np.complex128)
    if z.ndim == 1 and z.shape[0] == k:
        z = z[None, :]
    if z.ndim != 2 or z.shape[1] != k:
        raise DimensionMismatch(f"expected points of shape (*, {k})")
    return z


def evaluate_a(exp: LimitingExpansion, t) -> np.ndarray:
    """a(t) = a0 + sum a_I t^I for |t_i| < 1."""
    t = _as_points(t, exp.k)
    if np.any(np.abs(t) >= 1):
        raise DomainError("evaluation requires |t_i| < 1")
    out = np.repeat(la.to_complex_vector(exp.a0)[None, :], len(t), axis=0)
    for exponent, vector in exp.terms:
        mono = np.ones(len(t), dtype=np.complex128)
        for i, e in enumerate(exponent):
            mono = mono * t[:, i] ** e
        out = out + mono[:, None] * la.to_complex_vector(vector)[None, :]
    return out


def _nilpotent_prefactor(exp: LimitingExpansion, z: np.ndarray) -> np.ndarray:
    """e^(sum z_i N_i) applied pointwise, as (npoints, dim, dim)."""
    dim = exp.space.dim
    out = np.repeat(np.eye(dim, dtype=np.complex128)[None, :, :], len(z), axis=0)
    powers = []
    for nilpotent in exp.nilpotents:
        powers.append([la.to_complex_matrix(nilpotent.power(j))
                       for j in range(nilpotent.index + 1)])
    if exp.k == 1:
        for j in range(1, len(powers[0])):
            out = out + (z[:, 0] ** j / factorial(j))[:, None, None] * powers[0][j]
        return out
    acc = np.zeros_like(out)
    for j1, p1 in enumerate(powers[0]):
        for j2, p2 in enumerate(powers[1]):
            coeff = z[:, 0] ** j1 * z[:, 1] ** j2 / (factorial(j1) * factorial(j2))
            acc = acc + coeff[:, None, None] * (p1 @ p2)
    return acc


def evaluate_omega(exp: LimitingExpansion, z) -> np.ndarray:
    """Omega(z) = e^(sum z_i N_i) a(t(z)) with t_i = exp(2 pi i z_i)."""
    z = _as_points(z, exp.k)
    t = np.exp(2j * np.pi * z)
    a_vals = evaluate_a(exp, t)
    pref = _nilpotent_prefactor(exp, z)
    out = np.einsum("pij,pj->pi", pref, a_vals)
    return out[0] if len(out) == 1 else out


def evaluate_a_exact(exp: LimitingExpansion, t) -> tuple:
    """Exact a(t) for Gaussian-rational t (used by identity tests)."""
    t = tuple(GQ.of(x) for x in t)
    out = tuple(exp.a0)
    for exponent, vector in exp.terms:
        mono = GQ(1)
        for x, e in zip(t, exponent):
            mono = mono * x ** e
        out = la.add_vec(out, la.scale_vec(mono, vector))
    return out


def omega_prefactor_exact(exp: LimitingExpansion, z) -> la.Matrix:
    """Exact e^(sum z_i N_i) for Gaussian-rational z."""
    out = la.identity(exp.space.dim)
    for nilpotent, zi in zip(exp.nilpotents, z, strict=True):
        out = la.mat_mul(out, nilpotent.exp_exact(GQ.of(zi)))
    return out
