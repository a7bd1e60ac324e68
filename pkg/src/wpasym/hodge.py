"""Polarized vector spaces, nilpotent operators and monodromy weight filtrations.

Everything here is exact: spaces carry a (-1)^n-symmetric bilinear form over
the Gaussian rationals, nilpotent operators are infinitesimal isometries of
it, and the weight filtration is produced by the kernel/image recursion
(exact ranks, no floats).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from . import linalg as la
from .errors import (DegenerateFiltration, DimensionMismatch, GradeOutOfRange,
                     IndexExceedsWeight, NonCommuting, NotNilpotent)
from .rationals import GQ, i_power


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolarizedSpace:
    """Finite-dimensional space with weight n and a (-1)^n-symmetric form Q.

    The twisted form is Q~ := (sqrt(-1))^n Q; all potential pairings go
    through `qtilde` so the sign convention lives in exactly one place.
    """

    dim: int
    weight: int
    q_matrix: la.Matrix

    def __post_init__(self):
        if len(self.q_matrix) != self.dim or any(len(r) != self.dim for r in self.q_matrix):
            raise DimensionMismatch("Q must be dim x dim")
        sign = GQ((-1) ** self.weight)
        qt = la.transpose(self.q_matrix)
        if la.mat_scale(sign, qt) != self.q_matrix:
            raise ValueError(f"Q must be (-1)^{self.weight}-symmetric")
        if la.det(self.q_matrix).is_zero():
            raise ValueError("Q must be nondegenerate")

    @property
    def twist_sign(self) -> GQ:
        return i_power(self.weight)

    def q(self, u, v) -> GQ:
        """Bilinear Q(u, v); conjugate inputs explicitly when needed."""
        return la.dot(u, la.mat_vec(self.q_matrix, v))

    def qtilde(self, u, v) -> GQ:
        return self.twist_sign * self.q(u, v)

    def pair_h(self, u, v) -> GQ:
        """Sesquilinear Q~(u, conj v)."""
        return self.qtilde(u, la.conj_vec(v))


@dataclass(frozen=True)
class NilpotentOperator:
    """Matrix with N^(index+1) = 0, N^index != 0 (index 0 for N = 0)."""

    matrix: la.Matrix
    index: int = field(init=False)

    def __post_init__(self):
        n = len(self.matrix)
        p = la.identity(n)
        idx = None
        for k in range(n + 1):
            p = la.mat_mul(p, self.matrix) if k else p
            # p = matrix^k here
            if la.is_zero_mat(p):
                idx = k - 1
                break
        if idx is None:
            raise NotNilpotent("matrix is not nilpotent")
        object.__setattr__(self, "index", idx)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def power(self, k: int) -> la.Matrix:
        if not hasattr(self, "_powers"):
            object.__setattr__(self, "_powers", {0: la.identity(self.dim)})
        cache = self._powers
        while k not in cache:
            j = max(cache)
            cache[j + 1] = la.mat_mul(cache[j], self.matrix)
        return cache[k]

    def apply(self, v, k: int = 1):
        return la.mat_vec(self.power(k), v)

    def exp_exact(self, z: GQ) -> la.Matrix:
        """e^(z N) as a finite exact sum (z a Gaussian rational)."""
        from math import factorial
        out = la.identity(self.dim)
        p = la.identity(self.dim)
        for k in range(1, self.index + 1):
            p = la.mat_mul(p, self.matrix)
            out = la.mat_add(out, la.mat_scale(z ** k / GQ(factorial(k)), p))
        return out

    def is_isometry_of(self, space: PolarizedSpace) -> bool:
        """Q(Nu, v) + Q(u, Nv) = 0, checked exactly on the basis."""
        nt_q = la.mat_mul(la.transpose(self.matrix), space.q_matrix)
        q_n = la.mat_mul(space.q_matrix, self.matrix)
        return la.is_zero_mat(la.mat_add(nt_q, q_n))

    def commutes_with(self, other: "NilpotentOperator") -> bool:
        return la.mat_mul(self.matrix, other.matrix) == la.mat_mul(other.matrix, self.matrix)


def zero_operator(dim: int) -> NilpotentOperator:
    return NilpotentOperator(la.zero_mat(dim))


class IncreasingFiltration:
    """Nested increasing subspaces W_low = 0 <= ... <= W_high = V.

    Levels are stored as canonical echelon bases, so `spans_equal` and
    equality of levels are exact tuple comparisons.
    """

    def __init__(self, levels: dict, low: int, high: int, dim: int):
        self.low = low
        self.high = high
        self.dim = dim
        self.levels = {}
        prev = ()
        for l in range(low, high + 1):
            basis = la.echelon_basis(levels.get(l, prev))
            if not la.span_contains(basis, prev):
                raise DegenerateFiltration(f"W_{l - 1} not contained in W_{l}")
            self.levels[l] = basis
            prev = basis
        if len(self.levels[high]) != dim:
            raise DegenerateFiltration("top level must be the full space")
        if self.levels[low]:
            raise DegenerateFiltration("bottom level must be zero")

    def level(self, l: int):
        if l < self.low:
            return ()
        if l > self.high:
            return self.levels[self.high]
        return self.levels[l]

    def graded_dim(self, l: int) -> int:
        return len(self.level(l)) - len(self.level(l - 1))

    def spans_equal(self, other: "IncreasingFiltration") -> bool:
        lo = min(self.low, other.low)
        hi = max(self.high, other.high)
        return all(self.level(l) == other.level(l) for l in range(lo, hi + 1))

    def __repr__(self):
        dims = {l: len(b) for l, b in self.levels.items()}
        return f"IncreasingFiltration(dims={dims})"


class DecreasingFiltration:
    """Nested decreasing subspaces F^p, clamped to full space / zero outside
    the declared range."""

    def __init__(self, pieces: dict, dim: int):
        if not pieces:
            raise DegenerateFiltration("empty filtration")
        self.dim = dim
        self.min_p = min(pieces)
        self.max_p = max(pieces)
        self.pieces = {}
        prev = None
        for p in range(self.max_p, self.min_p - 1, -1):
            basis = la.echelon_basis(pieces.get(p, prev if prev is not None else ()))
            if prev is not None and not la.span_contains(basis, prev):
                raise DegenerateFiltration(f"F^{p + 1} not contained in F^{p}")
            self.pieces[p] = basis
            prev = basis
        if any(len(v) and len(v[0]) != dim for v in self.pieces.values()):
            raise DimensionMismatch("filtration vectors have wrong length")

    def piece(self, p: int):
        if p < self.min_p:
            return self.pieces[self.min_p]
        if p > self.max_p:
            return ()
        return self.pieces[p]

    def conjugate(self) -> "DecreasingFiltration":
        return DecreasingFiltration(
            {p: tuple(la.conj_vec(v) for v in b) for p, b in self.pieces.items()},
            self.dim)

    def __repr__(self):
        dims = {p: len(b) for p, b in self.pieces.items()}
        return f"DecreasingFiltration(dims={dims})"


# ---------------------------------------------------------------------------
# polarization check
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolarizationReport:
    cond_a: bool
    cond_b: bool


def check_polarization(space: PolarizedSpace, filtration: DecreasingFiltration,
                       m: int) -> PolarizationReport:
    """First and second Hodge-Riemann conditions for weight m.

    cond_a: Q(F^p, F^(m+1-p)) = 0 for all p.
    cond_b: the Hermitian form Q(C u, conj v) is positive definite, where
    C acts as i^(p-q) on P^(p,q) = F^p  intersect  conj(F^q).  If the pieces
    P^(p,q) fail to decompose the space there is no Weil operator and
    cond_b is reported False.
    """
    if filtration.dim != space.dim:
        raise DimensionMismatch("filtration lives on a different space")

    cond_a = True
    for p in range(min(filtration.min_p, m + 1 - filtration.max_p),
                   max(filtration.max_p, m + 1 - filtration.min_p) + 1):
        left = filtration.piece(p)
        right = filtration.piece(m + 1 - p)
        if any(not space.q(u, v).is_zero() for u in left for v in right):
            cond_a = False
            break

    fbar = filtration.conjugate()
    pieces = []  # (p, q, basis)
    total = 0
    for p in range(0, m + 1):
        q = m - p
        basis = la.span_intersect(filtration.piece(p), fbar.piece(q))
        # strip the part already in higher F-pieces meeting lower conj-pieces:
        # for an honest Hodge structure the intersections are already direct.
        pieces.append((p, q, basis))
        total += len(basis)

    all_vectors = [v for _, _, b in pieces for v in b]
    if total != space.dim or len(la.echelon_basis(all_vectors)) != space.dim:
        return PolarizationReport(cond_a, False)

    weil = []
    for p, q, basis in pieces:
        weil.extend((i_power(p - q), v) for v in basis)
    gram = tuple(
        tuple(space.q(la.scale_vec(cu, u), la.conj_vec(v)) for _, v in weil)
        for cu, u in weil)
    if not la.is_hermitian(gram):
        return PolarizationReport(cond_a, False)
    cond_b = la.hermitian_definiteness(gram) == "positive"
    return PolarizationReport(cond_a, cond_b)


# ---------------------------------------------------------------------------
# monodromy weight filtration
# ---------------------------------------------------------------------------

def _nilpotency_index(m: la.Matrix) -> int:
    p = la.identity(len(m))
    for k in range(len(m) + 1):
        if la.is_zero_mat(p):
            return k - 1
        p = la.mat_mul(p, m)
    raise NotNilpotent("matrix is not nilpotent")


def _weight_levels(m: la.Matrix, n: int) -> tuple[dict, int, int]:
    """Kernel/image recursion on the coordinate space of `m`.

    Returns (levels, low, high): W_high = everything, W_low = 0, and
    W_(n+k-1) = ker m^k, W_(n-k) = im m^k with the middle filled in from the
    quotient ker/im carrying the induced nilpotent, recentered at n.
    """
    dim = len(m)
    k = _nilpotency_index(m)
    full = la.identity(dim)
    if k == 0:
        return {n - 1: (), n: full}, n - 1, n

    mk = la.mat_pow(m, k)
    ker = la.kernel(mk)
    im = la.image(mk)
    comp = la.extend_basis(im, ker)  # quotient representatives

    lift = tuple(im) + tuple(comp)
    rows = []
    for c in comp:
        w = la.mat_vec(m, c)  # lands in ker m^(k-1), hence in ker
        coords = la.coords_in_basis(lift, w)
        rows.append(coords[len(im):])
    # matrix of the induced operator in comp-coordinates (column j = image of comp_j)
    mq = tuple(tuple(rows[j][i] for j in range(len(comp))) for i in range(len(comp)))

    sub, sub_low, sub_high = _weight_levels(mq, n) if comp else ({n - 1: (), n: ()}, n - 1, n)

    def sub_level(l):
        if l < sub_low:
            return ()
        if l > sub_high:
            l = sub_high
        return sub[l]

    levels = {n - k - 1: (), n - k: im, n + k - 1: ker, n + k: tuple(full)}
    for l in range(n - k + 1, n + k - 1):
        lifted = []
        for qv in sub_level(l):
            v = la.zero_vec(dim)
            for c, b in zip(qv, comp, strict=True):
                v = la.add_vec(v, la.scale_vec(c, b))
            lifted.append(v)
        levels[l] = la.span_sum(im, lifted)
    return levels, n - k - 1, n + k


def weight_filtration(nilpotent: NilpotentOperator, n: int) -> IncreasingFiltration:
    """The unique increasing filtration centered at n with N W_l <= W_(l-2)
    and N^s inducing isomorphisms Gr_(n+s) -> Gr_(n-s)."""
    if nilpotent.index > n:
        raise IndexExceedsWeight(
            f"nilpotency index {nilpotent.index} exceeds weight {n}")
    levels, low, high = _weight_levels(nilpotent.matrix, n)
    return IncreasingFiltration(levels, low, high, nilpotent.dim)


def filtration_properties_hold(nilpotent: NilpotentOperator, n: int,
                               w: IncreasingFiltration) -> bool:
    """Independent check of the two defining properties (oracle for tests)."""
    for l in range(w.low, w.high + 1):
        imgs = [la.mat_vec(nilpotent.matrix, v) for v in w.level(l)]
        if not la.span_contains(w.level(l - 2), imgs):
            return False
    for s in range(0, nilpotent.index + 1):
        up, up_prev = w.level(n + s), w.level(n + s - 1)
        dn_prev = w.level(n - s - 1)
        gr_up = len(up) - len(up_prev)
        gr_dn = len(w.level(n - s)) - len(dn_prev)
        if gr_up != gr_dn:
            return False
        ns = nilpotent.power(s)
        pushed = [la.mat_vec(ns, v) for v in up]
        reached = la.span_sum(dn_prev, pushed)
        if len(reached) - len(la.echelon_basis(dn_prev)) != gr_up:
            return False
    return True


def cone_invariance(n1: NilpotentOperator, n2: NilpotentOperator, n: int,
                    samples) -> bool:
    """Whether all sampled positive combinations a*N1 + b*N2 give the same
    weight filtration (exact span comparison)."""
    if not n1.commutes_with(n2):
        raise NonCommuting("N1 N2 != N2 N1")
    reference = None
    for a, b in samples:
        a, b = GQ.of(a), GQ.of(b)
        if a.re <= 0 or b.re <= 0 or not a.is_real() or not b.is_real():
            raise ValueError("cone samples must be positive rationals")
        combo = NilpotentOperator(la.mat_add(la.mat_scale(a, n1.matrix),
                                             la.mat_scale(b, n2.matrix)))
        w = weight_filtration(combo, n)
        if reference is None:
            reference = w
        elif not reference.spans_equal(w):
            return False
    return True


# ---------------------------------------------------------------------------
# graded primitive parts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PrimitiveReport:
    basis: tuple            # representatives in the ambient space
    gram: la.Matrix         # Q(v_a, N^s conj v_b)
    definite: bool          # the (possibly i-twisted) Hermitian Gram is definite


def graded_primitive(nilpotent: NilpotentOperator, w: IncreasingFiltration,
                     n: int, s: int, space: PolarizedSpace | None = None) -> PrimitiveReport:
    """Basis of ker(N^(s+1)) inside Gr_(n+s) plus the induced pairing.

    The pairing is the raw Gram matrix Q(., N^s conj .); the definiteness
    flag twists it by i when n+s is odd so that a Hermitian matrix is tested.
    """
    if s < 0 or s > nilpotent.index:
        raise GradeOutOfRange(f"grade n+{s} carries no primitives (index {nilpotent.index})")
    reps = la.extend_basis(w.level(n + s - 1), w.level(n + s))
    if not reps:
        return PrimitiveReport((), (), True)

    ns1 = nilpotent.power(s + 1)
    target = w.level(n - s - 3)
    cols = [la.mat_vec(ns1, r) for r in reps] + [la.scale_vec(-1, v) for v in target]
    system = la.transpose(tuple(cols))
    prim = []
    for kvec in la.kernel(system):
        coeffs = kvec[:len(reps)]
        if all(c.is_zero() for c in coeffs):
            continue
        v = la.zero_vec(nilpotent.dim)
        for c, r in zip(coeffs, reps):
            v = la.add_vec(v, la.scale_vec(c, r))
        prim.append(v)
    prim = tuple(prim)

    if space is None:
        gram: la.Matrix = ()
        definite = False
    else:
        ns = nilpotent.power(s)
        gram = tuple(tuple(space.q(u, la.mat_vec(ns, la.conj_vec(v))) for v in prim)
                     for u in prim)
        h = gram if (n + s) % 2 == 0 else la.mat_scale(GQ(0, 1), gram)
        definite = bool(prim) and la.is_hermitian(h) and \
            la.hermitian_definiteness(h) in ("positive", "negative")
    return PrimitiveReport(prim, gram, definite)
