"""Named fixtures: limiting data assembled from polarized building blocks.

`monomial_block(a, b, weight)` returns a block whose potential pairing is
exactly 2^weight * y1^a * y2^b (a string of length a+1 in the first slot
tensored with one of length b+1 in the second, padded to the target weight
by a rigid factor).  Direct sums add pairings, so any positive coefficient
pattern can be realized; the curated catalog picks tuples that satisfy the
case-table conditions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg as la
from .blocks import (HodgeBlock, direct_sum, rigid1, scale_form, sym_power,
                     tensor, trivial, weight1_string)
from .errors import UnknownFixture
from .limiting import LimitingExpansion
from .rationals import GQ


def _string_factor(power: int, slot: int, nvars: int) -> HodgeBlock:
    base = weight1_string(slot=slot, nvars=nvars)
    return base if power == 1 else sym_power(base, power)


def _rigid_factor(weight: int, nvars: int) -> HodgeBlock:
    base = rigid1(nvars=nvars)
    return base if weight == 1 else sym_power(base, weight)


def monomial_block(a: int, b: int, weight: int, scale=1, nvars: int = 2) -> HodgeBlock:
    """Block contributing scale * 2^weight * y1^a y2^b to the pairing."""
    if a + b > weight:
        raise ValueError("monomial degree exceeds the weight")
    factors = []
    if a:
        factors.append(_string_factor(a, 0, nvars))
    if b:
        factors.append(_string_factor(b, 1, nvars))
    fill = weight - a - b
    if fill or not factors:
        factors.append(_rigid_factor(fill or weight, nvars))
    block = factors[0]
    for f in factors[1:]:
        block = tensor(block, f)
    if scale != 1:
        block = scale_form(block, scale)
    return block


def sum_of_monomials(monomials: dict, weight: int, nvars: int = 2) -> HodgeBlock:
    """Direct sum realizing sum coeff * y1^a y2^b; coeff = 2^weight * scale."""
    blocks = [monomial_block(a, b, weight, scale, nvars)
              for (a, b), scale in sorted(monomials.items())]
    out = blocks[0]
    for blk in blocks[1:]:
        out = direct_sum(out, blk)
    return out


def _coeff_scales(target: dict, weight: int) -> dict:
    """Scales so the realized pairing coefficients equal `target` exactly."""
    return {key: Fraction(value, 2 ** weight) for key, value in target.items()}


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FixtureInfo:
    name: str
    expansion: LimitingExpansion
    expected_case: str | None     # table row for two-infinite fixtures
    divisor_degrees: tuple
    notes: str


def _one_variable(kind: str) -> FixtureInfo:
    if kind == "weight1-elliptic":
        block = weight1_string(nvars=1)
        exp = LimitingExpansion.from_block(block)
        return FixtureInfo(kind, exp, None, (1,), "weight-1 string, d = 1")
    if kind == "sym2-k3":
        block = sym_power(weight1_string(nvars=1), 2)
        exp = LimitingExpansion.from_block(block)
        return FixtureInfo(kind, exp, None, (2,), "weight-2 maximal string, d = 2")
    if kind == "sym3-maximal":
        block = sym_power(weight1_string(nvars=1), 3)
        # one decaying term keeps the transcendental part nontrivial
        term = ((1,), la.frac_vec([0, 1, 0, (0, 1)]))
        exp = LimitingExpansion.from_block(block, terms=(term,),
                                           scale_terms=Fraction(1, 4))
        return FixtureInfo(kind, exp, None, (3,),
                           "weight-3 maximal degeneration, d = 3")
    if kind == "conifold-rankone":
        rigid3 = sym_power(rigid1(nvars=1), 3)
        pair = tensor(weight1_string(nvars=1), trivial(weight=2, nvars=1))
        block = direct_sum(rigid3, pair)
        a0 = la.concat_vec(rigid3.a0, la.zero_vec(2))
        term_vec = la.concat_vec(la.conj_vec(rigid3.a0), la.zero_vec(2))
        exp = LimitingExpansion(block.space, block.nilpotents, a0,
                                terms=(((1,), la.scale_vec(Fraction(1, 5), term_vec)),))
        return FixtureInfo(kind, exp, None, (0,),
                           "rank-one nilpotent, a0 in its kernel; finite divisor")
    raise UnknownFixture(kind)


def _two_variable_case(name: str, target: dict, expected: str,
                       notes: str) -> FixtureInfo:
    weight = 2 if max(a + b for a, b in target) <= 2 else 3
    block = sum_of_monomials(_coeff_scales(target, weight), weight)
    exp = LimitingExpansion.from_block(block)
    d1 = max(a for a, _ in target)
    d2 = max(b for _, b in target)
    return FixtureInfo(name, exp, expected, (d1, d2), notes)


def _with_decaying_terms(info: FixtureInfo, slots=(0, 1)) -> FixtureInfo:
    """Attach small t-series terms inside ker N_i^(d_i + 1) (diamond bound)."""
    exp = info.expansion
    terms = list(exp.terms)
    dim = exp.space.dim
    # reuse a0 shifted by N_1 (stays inside every required kernel) and a0 itself
    na0 = la.mat_vec(exp.nilpotents[0].matrix, exp.a0)
    if 0 in slots and not la.is_zero_vec(na0):
        terms.append(((1, 0), la.scale_vec(Fraction(1, 5), na0)))
    if 1 in slots:
        terms.append(((0, 1), la.scale_vec(Fraction(1, 7), exp.a0)))
    terms.append(((1, 1), la.scale_vec(Fraction(1, 11), exp.a0)))
    new = LimitingExpansion(exp.space, exp.nilpotents, exp.a0, tuple(terms))
    return FixtureInfo(info.name, new, info.expected_case, info.divisor_degrees,
                       info.notes + " (with decaying terms)")


def _mixed_13() -> FixtureInfo:
    """E1 infinite of degree 3, E2 finite (rank-one N2 acting elsewhere)."""
    sym3 = sym_power(weight1_string(slot=0, nvars=2), 3)
    rigid3 = sym_power(rigid1(nvars=2), 3)
    pair = tensor(weight1_string(slot=1, nvars=2), trivial(weight=2, nvars=2))
    block = direct_sum(direct_sum(sym3, rigid3), pair)
    a0 = la.concat_vec(la.concat_vec(sym3.a0, rigid3.a0), la.zero_vec(2))
    u = la.concat_vec(la.concat_vec(la.zero_vec(4), rigid3.a0), la.zero_vec(2))
    w1 = la.concat_vec(la.concat_vec(
        la.mat_vec(sym3.nilpotents[0].matrix, sym3.a0), la.zero_vec(4)),
        la.zero_vec(2))
    terms = (((0, 1), la.scale_vec(Fraction(1, 3), u)),
             ((1, 0), la.scale_vec(Fraction(1, 5), w1)),
             ((1, 1), la.scale_vec(Fraction(1, 7), u)))
    exp = LimitingExpansion(block.space, block.nilpotents, a0, terms)
    return FixtureInfo("mixed-13", exp, None, (3, 0),
                       "one infinite (d=3) and one finite divisor; angular-slice scenario")


def _finite_pair() -> FixtureInfo:
    """Both divisors finite: rank-one nilpotents, a0 in both kernels."""
    rigid3 = sym_power(rigid1(nvars=2), 3)
    pair1 = tensor(weight1_string(slot=0, nvars=2), trivial(weight=2, nvars=2))
    pair2 = tensor(weight1_string(slot=1, nvars=2), trivial(weight=2, nvars=2))
    block = direct_sum(direct_sum(rigid3, pair1), pair2)
    a0 = la.concat_vec(la.concat_vec(rigid3.a0, la.zero_vec(2)), la.zero_vec(2))
    ubar = la.concat_vec(la.concat_vec(la.conj_vec(rigid3.a0), la.zero_vec(2)),
                         la.zero_vec(2))
    terms = (((1, 0), la.scale_vec(Fraction(1, 4), a0)),
             ((0, 1), la.scale_vec(Fraction(1, 6), ubar)),
             ((1, 1), la.scale_vec(Fraction(1, 9), ubar)))
    exp = LimitingExpansion(block.space, block.nilpotents, a0, terms)
    return FixtureInfo("finite-finite", exp, None, (0, 0),
                       "two rank-one finite divisors; bounded on all probes")


def _proportional_ix() -> FixtureInfo:
    """Both monodromies act as the same maximal string: p = 8 (y1 + y2)^3."""
    base = sym_power(weight1_string(slot=0, nvars=1), 3)
    ops = (base.nilpotents[0], base.nilpotents[0])
    exp = LimitingExpansion(base.space, ops, base.a0)
    return FixtureInfo("sym3-proportional", exp, "ix", (3, 3),
                       "proportional monodromies; case ix with all equalities (perfect cube)")


_CASE_TARGETS = {
    # name: (coefficient pattern, expected row, notes)
    "case-i": ({(0, 1): 3, (1, 0): 2}, "i", "A y2 + B y1"),
    "case-ii": ({(0, 1): 2, (1, 1): 3, (1, 0): 1}, "ii", "A y2 + B y1 y2 + C y1"),
    "case-iii": ({(0, 2): 1, (1, 1): 2, (1, 0): 1}, "iii", "degrees {1, 2}"),
    "case-iv": ({(0, 2): 1, (1, 2): 2, (1, 0): 1}, "iv", "total degree 3"),
    "case-v": ({(0, 3): 1, (1, 2): 2, (1, 0): 1}, "v", "degrees {1, 3}"),
    "case-vi-strict": ({(0, 2): 1, (1, 1): 3, (2, 0): 1}, "vi",
                       "B^2 - 4AC = 5 > 0"),
    "case-vii": ({(0, 2): 1, (1, 2): 2, (2, 1): 2, (2, 0): 1}, "vii",
                 "all coefficients positive"),
    "case-viii": ({(0, 3): 1, (1, 2): 4, (2, 1): 1, (2, 0): 1}, "viii",
                  "B^2 - 3AC = 13 > 0"),
    "case-ix-strict": ({(0, 3): 1, (1, 2): 4, (2, 1): 4, (3, 0): 1}, "ix",
                       "both discriminants = 4 > 0, BC > 0"),
}


def _tensor_11() -> FixtureInfo:
    block = tensor(weight1_string(slot=0, nvars=2), weight1_string(slot=1, nvars=2))
    exp = LimitingExpansion.from_block(block)
    return FixtureInfo("tensor-11", exp, None, (1, 1),
                       "pure tensor; pairing 4 y1 y2 (cross support only)")


@lru_cache(maxsize=None)
def _build(name: str) -> FixtureInfo:
    if name in ("weight1-elliptic", "sym2-k3", "sym3-maximal", "conifold-rankone"):
        return _one_variable(name)
    if name == "tensor-11":
        return _tensor_11()
    if name in _CASE_TARGETS:
        target, expected, notes = _CASE_TARGETS[name]
        info = _two_variable_case(name, target, expected, notes)
        return _with_decaying_terms(info)
    if name == "mixed-13":
        return _mixed_13()
    if name == "finite-finite":
        return _finite_pair()
    if name == "sym3-proportional":
        return _proportional_ix()
    # the weighted-projective qualitative scenario and its three intersections
    if name == "p11222-qualitative" or name == "p11222-mixed":
        info = _mixed_13()
        return FixtureInfo(name, info.expansion, None, info.divisor_degrees,
                           "blown-up two-parameter scenario: infinite(3) meets finite")
    if name == "p11222-finite-pair":
        info = _finite_pair()
        return FixtureInfo(name, info.expansion, None, info.divisor_degrees,
                           "two rank-one finite divisors meeting")
    if name == "p11222-type31":
        target, expected, notes = _CASE_TARGETS["case-v"]
        info = _two_variable_case("p11222-type31", target, expected,
                                  "degrees {1, 3}: divergence by the strict-case corollary")
        return _with_decaying_terms(info)
    raise UnknownFixture(f"unknown fixture {name!r}")


FIXTURE_NAMES = (
    "weight1-elliptic", "sym2-k3", "sym3-maximal", "conifold-rankone",
    "tensor-11",
    "case-i", "case-ii", "case-iii", "case-iv", "case-v",
    "case-vi-strict", "case-vii", "case-viii", "case-ix-strict",
    "sym3-proportional", "mixed-13", "finite-finite",
    "p11222-qualitative", "p11222-finite-pair", "p11222-type31",
)

# fixtures whose polynomial part must classify Valid at its expected row
CANDIDATE_CATALOG = tuple(n for n in FIXTURE_NAMES
                          if n.startswith("case-") or n == "sym3-proportional")


def fixture_info(name: str) -> FixtureInfo:
    if name not in FIXTURE_NAMES:
        raise UnknownFixture(f"unknown fixture {name!r}")
    return _build(name)


def fixture(name: str) -> LimitingExpansion:
    return fixture_info(name).expansion
