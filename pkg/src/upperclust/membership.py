"""Membership in the upper cluster algebra U.

U is the intersection of K[x,y,z]^{+-} with the three Laurent rings obtained
by replacing one of x, y, z by its adjacent variable. For a homogeneous
``f / (x^i y^j z^k)`` membership reduces to divisibility of the slices of f:

    p^(i-a) | slice(f, x, a)  for a < i
    q^(j-b) | slice(f, y, b)  for b < j
    r^(k-c) | slice(f, z, c)  for c < k

Two implementations are provided and are meant to be checked against each
other. :func:`lemma1_check` evaluates precomputed linear functionals
(reduction modulo a power of the exchange binomial) on the coefficient
vector; :func:`ring_membership_oracle` runs repeated exact division.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .cluster import ExchangePolys
from .poly import (
    VAR_INDEX,
    VARS,
    BinaryForm,
    LaurentFraction,
    PolyError,
    TernaryForm,
    dehomogenize,
    division_remainder,
    divides_power,
    monomials,
    slice,
)


class ZeroNumerator(PolyError):
    pass


@dataclass(frozen=True)
class FailingCondition:
    axis: str
    slice_index: int
    power: int
    remainder: Tuple[Fraction, ...]
    unit_var: str

    def as_dict(self) -> dict:
        return {
            "axis": self.axis,
            "slice_index": self.slice_index,
            "power": self.power,
            "unit_var": self.unit_var,
            "remainder": [str(c) for c in self.remainder],
        }


@dataclass(frozen=True)
class MembershipVerdict:
    member: bool
    failing_condition: Optional[FailingCondition] = None
    component_degree: Optional[int] = None

    def as_dict(self) -> dict:
        return {
            "member": self.member,
            "failing_condition": self.failing_condition.as_dict() if self.failing_condition else None,
            "component_degree": self.component_degree,
        }


def normalize(fr: LaurentFraction) -> LaurentFraction:
    """Bring the fraction to lowest terms.

    Powers of x, y, z dividing the numerator are cancelled against the
    denominator; afterwards no variable with a positive denominator
    exponent divides the numerator. Nothing is moved past exponent 0, so
    ``x^2 y / (x y)`` becomes ``x`` over 1.
    """
    if fr.is_zero():
        raise ZeroNumerator("the zero element has no fraction representation")
    lows = [f.min_exponents() for f in fr.parts]
    common = tuple(max(0, min(min(m[n] for m in lows), fr.expo[n])) for n in range(3))
    if common == (0, 0, 0):
        return fr
    parts = [f.unshift(*common) for f in fr.parts]
    return LaurentFraction(parts, tuple(e - c for e, c in zip(fr.expo, common)))


def graded_decompose(fr: LaurentFraction) -> List[LaurentFraction]:
    """Homogeneous components sharing the denominator of ``fr``."""
    return [LaurentFraction(f, fr.expo) for f in fr.parts]


# linear functionals: reduction of a slice modulo P^m

_REDUCTION_CACHE: Dict[tuple, List[List[Fraction]]] = {}


def _reduction_table(divisor: BinaryForm, power: int, n: int) -> List[List[Fraction]]:
    """Rows ``t^s mod P^power`` for s = 0..n, P the divisor with its second variable set to 1.

    Entry [s][idx] is the coefficient of t^idx in the remainder of t^s.
    """
    key = (divisor.vars, tuple(sorted(divisor.coeffs.items())), power, n)
    hit = _REDUCTION_CACHE.get(key)
    if hit is not None:
        return hit
    modulus = dehomogenize(divisor.pow(power), divisor.vars[1]).coeffs
    deg = len(modulus) - 1
    lead = modulus[-1]
    # t^deg == -(lower part)/lead  (mod P^power)
    tail = [-c / lead for c in modulus[:-1]]
    rows = []
    cur = [Fraction(0)] * deg
    if deg > 0:
        cur[0] = Fraction(1)
    for s in range(n + 1):
        rows.append(list(cur))
        top = cur[-1] if deg else Fraction(0)
        nxt = [Fraction(0)] + cur[:-1]
        if top:
            nxt = [a + top * b for a, b in zip(nxt, tail)]
        cur = nxt
    _REDUCTION_CACHE[key] = rows
    return rows


@dataclass(frozen=True)
class ConditionBlock:
    """The remainder functionals for one (axis, slice index) pair.

    ``functionals[idx][col]`` is the coefficient that degree-e monomial
    ``col`` contributes to the t^idx coefficient of the remainder.
    """

    axis: str
    slice_index: int
    power: int
    functionals: Tuple[Tuple[Fraction, ...], ...]


def axis_condition_blocks(e: int, axis: str, bound: int, ex: ExchangePolys) -> List[ConditionBlock]:
    """Condition blocks for ``divisor^(bound-a) | slice(f, axis, a)``, a < bound.

    A slice of degree n can meet at most n+1 independent conditions, so a
    block has ``min(3m, n+1)`` rows; rows beyond that are identically zero.
    """
    divisor = ex.for_axis(axis)
    ia = VAR_INDEX[axis]
    iu = VAR_INDEX[divisor.vars[0]]
    cols = monomials(e)
    blocks = []
    for a in range(0, min(bound, e + 1)):
        m = bound - a
        n = e - a
        nrows = min(divisor.degree * m, n + 1)
        table = _reduction_table(divisor, m, n)
        rows = [[Fraction(0)] * len(cols) for _ in range(nrows)]
        for col, mon in enumerate(cols):
            if mon[ia] != a:
                continue
            red = table[mon[iu]]
            for idx in range(nrows):
                if red[idx]:
                    rows[idx][col] = red[idx]
        blocks.append(ConditionBlock(axis, a, m, tuple(tuple(r) for r in rows)))
    return blocks


def condition_blocks(e: int, i: int, j: int, k: int, ex: ExchangePolys) -> List[ConditionBlock]:
    """All blocks in deterministic order: axis x, y, z; slice index ascending."""
    blocks = []
    for axis, bound in zip(VARS, (i, j, k)):
        if bound > 0:
            blocks.extend(axis_condition_blocks(e, axis, bound, ex))
    return blocks


_BLOCK_CACHE: Dict[tuple, List[ConditionBlock]] = {}


def _cached_blocks(e, i, j, k, ex: ExchangePolys) -> List[ConditionBlock]:
    key = (e, i, j, k, ex.key())
    if key not in _BLOCK_CACHE:
        _BLOCK_CACHE[key] = condition_blocks(e, i, j, k, ex)
    return _BLOCK_CACHE[key]


def _check_homogeneous(fr: LaurentFraction, ex: ExchangePolys) -> MembershipVerdict:
    fr = normalize(fr)
    f = fr.numerator
    i, j, k = fr.expo
    vec = f.to_vector()
    for block in _cached_blocks(f.degree, max(i, 0), max(j, 0), max(k, 0), ex):
        rem = [sum((c * v for c, v in zip(row, vec) if c and v), Fraction(0)) for row in block.functionals]
        if any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            divisor = ex.for_axis(block.axis)
            fc = FailingCondition(block.axis, block.slice_index, block.power, tuple(rem), divisor.vars[1])
            return MembershipVerdict(False, fc, f.degree - sum(fr.expo))
    return MembershipVerdict(True, None, f.degree - sum(fr.expo))


def lemma1_check(fr: LaurentFraction, ex: ExchangePolys) -> MembershipVerdict:
    """Decide membership with the slice-divisibility criterion (matrix route).

    Inhomogeneous fractions are split by degree; every component must pass.
    The zero element is a member.
    """
    if fr.is_zero():
        return MembershipVerdict(True)
    for piece in graded_decompose(fr):
        verdict = _check_homogeneous(piece, ex)
        if not verdict.member:
            return verdict
    return MembershipVerdict(True)


def ring_membership_oracle(fr: LaurentFraction, axis: Optional[str], ex: ExchangePolys) -> bool:
    """Membership in a single Laurent ring by repeated exact division.

    ``axis`` names the variable replaced by its adjacent variable; ``None``
    means the initial ring K[x^+-, y^+-, z^+-], which holds every fraction.
    """
    if axis is None or fr.is_zero():
        return True
    if not fr.is_homogeneous():
        return all(ring_membership_oracle(p, axis, ex) for p in graded_decompose(fr))
    f = fr.numerator
    bound = fr.expo[VAR_INDEX[axis]]
    divisor = ex.for_axis(axis)
    for a in range(0, bound):
        if not divides_power(divisor, bound - a, slice(f, axis, a)):
            return False
    return True


def oracle_membership(fr: LaurentFraction, ex: ExchangePolys) -> bool:
    """Conjunction of :func:`ring_membership_oracle` over all four rings."""
    return all(ring_membership_oracle(fr, axis, ex) for axis in (None,) + VARS)


def upper_membership(fr: LaurentFraction, ex: ExchangePolys) -> MembershipVerdict:
    """Membership in the intersection of the four Laurent rings.

    The initial ring imposes nothing on a Laurent fraction, so this is the
    criterion applied componentwise.
    """
    return lemma1_check(fr, ex)


def recheck_witness(fr: LaurentFraction, verdict: MembershipVerdict, ex: ExchangePolys) -> Tuple[Fraction, ...]:
    """Recompute a failing condition's remainder by direct division."""
    fc = verdict.failing_condition
    for piece in graded_decompose(fr):
        if piece.degree != verdict.component_degree:
            continue
        f = normalize(piece).numerator
        rem = division_remainder(ex.for_axis(fc.axis), fc.power, slice(f, fc.axis, fc.slice_index), fc.unit_var)
        return tuple(rem)
    raise ValueError("verdict does not belong to this fraction")
