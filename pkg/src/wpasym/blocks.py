"""Generators for polarized limiting data.

Blocks bundle a polarized space, one nilpotent per boundary variable, the
Hodge filtration at the base point of the orbit (z = i in every slot) and
the limiting top vector a0.  Primitive blocks are two-dimensional; larger
data is assembled with `tensor`, `sym_power` and `direct_sum`.

Sign conventions are fixed here once: every primitive block passes
`check_polarization` at the orbit point, and the top pairing constants that
feed the potential layer come out positive.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import linalg as la
from .errors import WeightOverflow
from .hodge import (DecreasingFiltration, NilpotentOperator, PolarizedSpace,
                    zero_operator)
from .rationals import GQ

MAX_WEIGHT = 8


@dataclass(frozen=True)
class HodgeBlock:
    space: PolarizedSpace
    nilpotents: tuple          # one NilpotentOperator per boundary variable
    filtration: DecreasingFiltration
    a0: tuple                  # limiting generator of the top filtration piece

    @property
    def nvars(self) -> int:
        return len(self.nilpotents)

    def as_tuple(self):
        return self.space, self.nilpotents, self.filtration, self.a0


def _operators_for_slot(dim: int, slot: int, nvars: int, matrix) -> tuple:
    ops = []
    for s in range(nvars):
        ops.append(NilpotentOperator(matrix) if s == slot else zero_operator(dim))
    return tuple(ops)


def weight1_string(slot: int = 0, nvars: int = 1, scale=1) -> HodgeBlock:
    """Weight-1 size-2 Jordan block: N e1 = e2, Q(e1,e2) = scale > 0.

    Limiting top vector a0 = e1; orbit filtration F^1 = span(e1 + i e2).
    """
    q = la.mat([[0, scale], [-scale, 0]])
    space = PolarizedSpace(2, 1, q)
    n_matrix = la.mat([[0, 0], [1, 0]])
    full = [la.frac_vec([1, 0]), la.frac_vec([0, 1])]
    filt = DecreasingFiltration({0: full, 1: [la.frac_vec([1, (0, 1)])], 2: []}, 2)
    return HodgeBlock(space, _operators_for_slot(2, slot, nvars, n_matrix),
                      filt, la.frac_vec([1, 0]))


def rigid1(nvars: int = 1, scale=1) -> HodgeBlock:
    """Weight-1 block with no degeneration (N = 0); a0 = e1 + i e2."""
    q = la.mat([[0, scale], [-scale, 0]])
    space = PolarizedSpace(2, 1, q)
    a0 = la.frac_vec([1, (0, 1)])
    full = [la.frac_vec([1, 0]), la.frac_vec([0, 1])]
    filt = DecreasingFiltration({0: full, 1: [a0], 2: []}, 2)
    return HodgeBlock(space, tuple(zero_operator(2) for _ in range(nvars)), filt, a0)


def trivial(weight: int = 2, nvars: int = 1, scale=1) -> HodgeBlock:
    """One-dimensional block of even weight 2s, Hodge type (s, s)."""
    if weight % 2:
        raise ValueError("a 1-dimensional block needs even weight")
    space = PolarizedSpace(1, weight, la.mat([[scale]]))
    s = weight // 2
    filt = DecreasingFiltration({0: [la.frac_vec([1])], s: [la.frac_vec([1])],
                                 s + 1: []}, 1)
    return HodgeBlock(space, tuple(zero_operator(1) for _ in range(nvars)),
                      filt, la.frac_vec([1]))


def build_block(kind: str, **params) -> HodgeBlock:
    """Named primitive blocks: weight1_string | rigid1 | trivial."""
    builders = {"weight1_string": weight1_string, "rigid1": rigid1, "trivial": trivial}
    if kind not in builders:
        raise ValueError(f"unknown block kind {kind!r}")
    return builders[kind](**params)


def scale_form(block: HodgeBlock, factor) -> HodgeBlock:
    """Rescale Q by a positive rational; preserves every polarization property."""
    f = GQ.of(factor)
    if not f.is_real() or f.re <= 0:
        raise ValueError("scale factor must be a positive rational")
    space = PolarizedSpace(block.space.dim, block.space.weight,
                           la.mat_scale(f, block.space.q_matrix))
    return HodgeBlock(space, block.nilpotents, block.filtration, block.a0)


def tensor(a: HodgeBlock, b: HodgeBlock) -> HodgeBlock:
    """Tensor product: weights add, Q multiplies, N acts by Leibniz."""
    if a.nvars != b.nvars:
        raise ValueError("tensor factors must carry the same variable count")
    weight = a.space.weight + b.space.weight
    if weight > MAX_WEIGHT:
        raise WeightOverflow(f"combined weight {weight} exceeds bound {MAX_WEIGHT}")
    da, db = a.space.dim, b.space.dim
    dim = da * db
    q = la.kron(a.space.q_matrix, b.space.q_matrix)
    space = PolarizedSpace(dim, weight, q)

    ia, ib = la.identity(da), la.identity(db)
    ops = tuple(
        NilpotentOperator(la.mat_add(la.kron(na.matrix, ib), la.kron(ia, nb.matrix)))
        for na, nb in zip(a.nilpotents, b.nilpotents))

    pieces: dict = {}
    for p in range(0, weight + 2):
        vectors = []
        for p1 in range(0, a.space.weight + 2):
            p2 = p - p1
            if p2 < 0 or p2 > b.space.weight + 1:
                continue
            for u in a.filtration.piece(p1):
                for v in b.filtration.piece(p2):
                    vectors.append(la.kron_vec(u, v))
        pieces[p] = vectors
    filt = DecreasingFiltration(pieces, dim)
    return HodgeBlock(space, ops, filt, la.kron_vec(a.a0, b.a0))


def direct_sum(a: HodgeBlock, b: HodgeBlock) -> HodgeBlock:
    """Orthogonal direct sum of blocks of equal weight; a0 adds."""
    if a.space.weight != b.space.weight:
        raise ValueError("direct summands must have equal weight")
    if a.nvars != b.nvars:
        raise ValueError("direct summands must carry the same variable count")
    da, db = a.space.dim, b.space.dim
    space = PolarizedSpace(da + db, a.space.weight,
                           la.block_diag(a.space.q_matrix, b.space.q_matrix))
    ops = tuple(NilpotentOperator(la.block_diag(na.matrix, nb.matrix))
                for na, nb in zip(a.nilpotents, b.nilpotents))
    pieces: dict = {}
    for p in range(0, a.space.weight + 2):
        vectors = [la.concat_vec(u, la.zero_vec(db)) for u in a.filtration.piece(p)]
        vectors += [la.concat_vec(la.zero_vec(da), v) for v in b.filtration.piece(p)]
        pieces[p] = vectors
    filt = DecreasingFiltration(pieces, da + db)
    return HodgeBlock(space, ops, filt,
                      la.concat_vec(a.a0, b.a0))


def sym_power(block: HodgeBlock, k: int) -> HodgeBlock:
    """Symmetric power of a two-dimensional block.

    Realized inside the k-fold tensor power on the symmetrized word basis
    S_j = sum of words with j copies of e2 (no 1/k! normalization; the
    induced form only changes by positive scales per graded piece).
    """
    if block.space.dim != 2:
        raise ValueError("sym_power is implemented for 2-dimensional blocks")
    if k < 1:
        raise ValueError("power must be >= 1")
    t = block
    for _ in range(k - 1):
        t = tensor(t, block)

    dim_t = 2 ** k
    sym_basis = []
    for j in range(k + 1):
        v = [GQ(0)] * dim_t
        for ones in combinations(range(k), j):
            idx = sum(2 ** (k - 1 - pos) for pos in ones)
            v[idx] = GQ(1)
        sym_basis.append(tuple(v))
    sym_basis = tuple(sym_basis)
    cols = la.transpose(sym_basis)

    def to_sym_coords(v):
        return la.solve(cols, v)

    q_sym = tuple(tuple(t.space.q(u, v) for v in sym_basis) for u in sym_basis)
    space = PolarizedSpace(k + 1, t.space.weight, q_sym)

    ops = []
    for op in t.nilpotents:
        col_images = [to_sym_coords(la.mat_vec(op.matrix, s)) for s in sym_basis]
        matrix = tuple(tuple(col_images[j][i] for j in range(k + 1))
                       for i in range(k + 1))
        ops.append(NilpotentOperator(matrix))

    pieces: dict = {}
    for p in range(0, t.space.weight + 2):
        inter = la.span_intersect(t.filtration.piece(p), sym_basis)
        pieces[p] = [to_sym_coords(v) for v in inter]
    filt = DecreasingFiltration(pieces, k + 1)

    a0 = to_sym_coords(t.a0)
    return HodgeBlock(space, tuple(ops), filt, a0)
