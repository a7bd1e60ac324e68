"""Exact linear algebra over the Gaussian rationals.

Vectors are tuples of GQ, matrices are tuples of row tuples.  Subspaces
are represented by echelonized spanning sets: `echelon_basis` returns the
reduced row-echelon form of the span, which is a canonical representative,
so two spans are equal iff their echelon bases compare equal.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch
from .rationals import GQ, ZERO

Vector = tuple
Matrix = tuple


# -- constructors ------------------------------------------------------------

def vec(entries) -> Vector:
    return tuple(GQ.of(e) for e in entries)


def mat(rows) -> Matrix:
    m = tuple(vec(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise DimensionMismatch("ragged matrix rows")
    return m


def zero_vec(n: int) -> Vector:
    return tuple(ZERO for _ in range(n))


def unit_vec(n: int, j: int) -> Vector:
    return tuple(GQ(1 if i == j else 0) for i in range(n))


def identity(n: int) -> Matrix:
    return tuple(unit_vec(n, j) for j in range(n))


def zero_mat(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return tuple(zero_vec(m) for _ in range(n))


# -- elementwise -------------------------------------------------------------

def add_vec(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def sub_vec(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def scale_vec(c, v: Vector) -> Vector:
    c = GQ.of(c)
    return tuple(c * a for a in v)


def conj_vec(v: Vector) -> Vector:
    return tuple(a.conjugate() for a in v)


def is_zero_vec(v: Vector) -> bool:
    return all(a.is_zero() for a in v)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(add_vec(r, s) for r, s in zip(a, b, strict=True))


def mat_scale(c, a: Matrix) -> Matrix:
    return tuple(scale_vec(c, r) for r in a)


def conj_mat(a: Matrix) -> Matrix:
    return tuple(conj_vec(r) for r in a)


def transpose(a: Matrix) -> Matrix:
    if not a:
        return ()
    return tuple(tuple(a[i][j] for i in range(len(a))) for j in range(len(a[0])))


def is_zero_mat(a: Matrix) -> bool:
    return all(is_zero_vec(r) for r in a)


# -- products ----------------------------------------------------------------

def mat_vec(a: Matrix, v: Vector) -> Vector:
    if a and len(a[0]) != len(v):
        raise DimensionMismatch(f"matrix {len(a)}x{len(a[0])} times vector {len(v)}")
    return tuple(sum((r[j] * v[j] for j in range(len(v))), GQ(0)) for r in a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise DimensionMismatch("incompatible matrix product")
    bt = transpose(b)
    return tuple(tuple(sum((r[k] * c[k] for k in range(len(r))), GQ(0)) for c in bt)
                 for r in a)


def mat_pow(a: Matrix, k: int) -> Matrix:
    out = identity(len(a))
    for _ in range(k):
        out = mat_mul(out, a)
    return out


def dot(u: Vector, v: Vector) -> GQ:
    return sum((a * b for a, b in zip(u, v, strict=True)), GQ(0))


def kron(a: Matrix, b: Matrix) -> Matrix:
    rb = len(b)
    cb = len(b[0]) if b else 0
    return tuple(
        tuple(a[i][j] * b[k][l] for j in range(len(a[0])) for l in range(cb))
        for i in range(len(a)) for k in range(rb))


def kron_vec(u: Vector, v: Vector) -> Vector:
    return tuple(a * b for a in u for b in v)


def block_diag(a: Matrix, b: Matrix) -> Matrix:
    na, nb = len(a), len(b)
    rows = []
    for r in a:
        rows.append(tuple(r) + zero_vec(nb))
    for r in b:
        rows.append(zero_vec(na) + tuple(r))
    return tuple(rows)


def concat_vec(u: Vector, v: Vector) -> Vector:
    return tuple(u) + tuple(v)


# -- elimination -------------------------------------------------------------

def rref(rows) -> tuple[list[list[GQ]], list[int]]:
    """Reduced row-echelon form; returns (rows, pivot column indices)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not m[i][c].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def echelon_basis(vectors) -> tuple[Vector, ...]:
    """Canonical (RREF) basis of the span of `vectors`."""
    rows, pivots = rref(vectors)
    return tuple(tuple(rows[i]) for i in range(len(pivots)))


def rank(a: Matrix) -> int:
    return len(rref(a)[1])


def kernel(a: Matrix) -> tuple[Vector, ...]:
    """Basis of the right kernel {x : a x = 0}."""
    if not a:
        return ()
    ncols = len(a[0])
    rows, pivots = rref(a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [GQ(0)] * ncols
        x[f] = GQ(1)
        for i, p in enumerate(pivots):
            x[p] = -rows[i][f]
        basis.append(tuple(x))
    return tuple(basis)


def image(a: Matrix) -> tuple[Vector, ...]:
    """Canonical basis of the column space."""
    return echelon_basis(transpose(a))


def solve(a: Matrix, b: Vector) -> Vector | None:
    """One solution of a x = b, or None if inconsistent (free vars -> 0)."""
    if not a:
        return () if is_zero_vec(b) else None
    ncols = len(a[0])
    aug = [list(r) + [bb] for r, bb in zip(a, b, strict=True)]
    rows, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [GQ(0)] * ncols
    for i, p in enumerate(pivots):
        x[p] = rows[i][ncols]
    return tuple(x)


def coords_in_basis(basis, v: Vector) -> Vector | None:
    """Coordinates of v in span(basis), or None if v is outside."""
    if not basis:
        return () if is_zero_vec(v) else None
    cols = transpose(tuple(basis))
    return solve(cols, v)


def in_span(basis, v: Vector) -> bool:
    return coords_in_basis(basis, v) is not None


def span_equal(b1, b2) -> bool:
    return echelon_basis(b1) == echelon_basis(b2)


def span_sum(b1, b2) -> tuple[Vector, ...]:
    return echelon_basis(tuple(b1) + tuple(b2))


def span_contains(big, small) -> bool:
    return all(in_span(big, v) for v in small)


def span_intersect(b1, b2) -> tuple[Vector, ...]:
    """Canonical basis of span(b1) & span(b2)."""
    b1, b2 = tuple(b1), tuple(b2)
    if not b1 or not b2:
        return ()
    cols = transpose(b1 + tuple(scale_vec(-1, v) for v in b2))
    out = []
    for k in kernel(cols):
        v = zero_vec(len(b1[0]))
        for c, w in zip(k[:len(b1)], b1):
            v = add_vec(v, scale_vec(c, w))
        out.append(v)
    return echelon_basis(out)


def extend_basis(inner, outer) -> tuple[Vector, ...]:
    """Vectors extending span(inner) to span(inner)+span(outer).

    Returned vectors are reduced against the running echelon basis, so they
    are independent representatives of the quotient span(outer)/span(inner).
    """
    rows = [list(v) for v in echelon_basis(inner)]
    added = []
    for v in outer:
        cand, pivots = rref(rows + [list(v)])
        if len(pivots) > len(rows):
            rows = cand[:len(pivots)]
            added.append(v)
    # reduce the chosen representatives against the inner span for tidier coords
    inner_ech = echelon_basis(inner)
    reduced = []
    for v in added:
        w = list(v)
        for b in inner_ech:
            p = next(j for j in range(len(b)) if not b[j].is_zero())
            if not w[p].is_zero():
                f = w[p]
                w = [x - f * y for x, y in zip(w, b)]
        reduced.append(tuple(w))
    return tuple(reduced)


def det(a: Matrix) -> GQ:
    n = len(a)
    if n == 0:
        return GQ(1)
    m = [list(r) for r in a]
    out = GQ(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if not m[i][c].is_zero()), None)
        if piv is None:
            return GQ(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = -out
        out = out * m[c][c]
        inv = m[c][c]
        for i in range(c + 1, n):
            if not m[i][c].is_zero():
                f = m[i][c] / inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return out


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(r) + list(unit_vec(n, i)) for i, r in enumerate(a)]
    rows, pivots = rref(aug)
    if pivots != list(range(n)):
        raise DimensionMismatch("matrix not invertible")
    return tuple(tuple(rows[i][n:]) for i in range(n))


# -- hermitian forms ---------------------------------------------------------

def is_hermitian(a: Matrix) -> bool:
    n = len(a)
    return all(a[i][j] == a[j][i].conjugate() for i in range(n) for j in range(n))


def leading_principal_minors(a: Matrix) -> list[GQ]:
    return [det(tuple(tuple(a[i][j] for j in range(k)) for i in range(k)))
            for k in range(1, len(a) + 1)]


def hermitian_definiteness(a: Matrix) -> str:
    """'positive', 'negative', or 'indefinite' for a Hermitian matrix.

    Sylvester's criterion on exact leading principal minors; 'indefinite'
    also covers the semidefinite-degenerate cases.
    """
    minors = leading_principal_minors(a)
    if any(not m.is_real() for m in minors):
        raise DimensionMismatch("minors of a Hermitian matrix must be real")
    vals = [m.re for m in minors]
    if all(v > 0 for v in vals):
        return "positive"
    if all((v < 0) if (k % 2 == 1) else (v > 0) for k, v in enumerate(vals, start=1)):
        return "negative"
    return "indefinite"


# -- numpy bridges -----------------------------------------------------------

def to_complex_matrix(a: Matrix) -> np.ndarray:
    return np.array([[complex(x) for x in r] for r in a], dtype=np.complex128)


def to_complex_vector(v: Vector) -> np.ndarray:
    return np.array([complex(x) for x in v], dtype=np.complex128)


# -- misc --------------------------------------------------------------------

def frac_vec(entries) -> Vector:
    """Vector from mixed int/Fraction/complex-pairs input used by fixtures."""
    out = []
    for e in entries:
        if isinstance(e, GQ):
            out.append(e)
        elif isinstance(e, (int, Fraction)):
            out.append(GQ(e))
        elif isinstance(e, tuple) and len(e) == 2:
            out.append(GQ(e[0], e[1]))
        else:
            raise TypeError(f"bad vector entry {e!r}")
    return tuple(out)
