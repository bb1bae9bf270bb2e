"""Condition systems, graded solution spaces and the verification campaigns.

``S(e; i, j, k)`` denotes the space of degree-e forms f for which
``f / (x^i y^j z^k)`` lies in U. Its elements are exactly the kernel of
:func:`condition_matrix`.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .cluster import ExchangePolys, cluster_variables, exchange_polys
from .field import ParamAssignment
from .linalg import ExactMatrix, kernel_basis, rank, span_rank
from .membership import (
    condition_blocks,
    lemma1_check,
    normalize,
    oracle_membership,
)
from .poly import LaurentFraction, TernaryForm, ambient_dim, format_form, monomials


@dataclass(frozen=True)
class ConditionSystem:
    degree: int
    expo: Tuple[int, int, int]
    matrix: ExactMatrix
    row_labels: Tuple[Tuple[str, int, int, int], ...]  # (axis, slice index, power, remainder index)


def condition_count(e: int, i: int, j: int, k: int) -> int:
    """Number of rows :func:`condition_matrix` emits for these exponents."""
    total = 0
    for bound in (i, j, k):
        for a in range(0, min(bound, e + 1)):
            total += min(3 * (bound - a), e - a + 1)
    return total


def condition_matrix(e: int, i: int, j: int, k: int, ex: ExchangePolys) -> ConditionSystem:
    rows, labels = [], []
    for block in condition_blocks(e, max(i, 0), max(j, 0), max(k, 0), ex):
        for idx, row in enumerate(block.functionals):
            rows.append(row)
            labels.append((block.axis, block.slice_index, block.power, idx))
    matrix = ExactMatrix.from_rows(rows, ambient_dim(e))
    return ConditionSystem(e, (i, j, k), matrix, tuple(labels))


def solution_space_basis(e: int, i: int, j: int, k: int, ex: ExchangePolys) -> List[TernaryForm]:
    if e < 0:
        return []
    cs = condition_matrix(e, i, j, k, ex)
    return [TernaryForm.from_vector(e, v) for v in kernel_basis(cs.matrix)]


def solution_space_dim(e: int, i: int, j: int, k: int, ex: ExchangePolys) -> int:
    if e < 0:
        return 0
    cs = condition_matrix(e, i, j, k, ex)
    return cs.matrix.cols - rank(cs.matrix)


# Lemma-3 family: e = 3d+1, i = j = k = d


@dataclass(frozen=True)
class DimensionRecord:
    d: int
    ambient_dim: int
    conditions: int
    kernel_dim: int
    lower_bound: int

    @property
    def exact_match(self) -> bool:
        return self.kernel_dim == self.lower_bound

    @property
    def ok(self) -> bool:
        return self.kernel_dim >= self.lower_bound and self.kernel_dim >= self.ambient_dim - self.conditions

    def as_dict(self) -> dict:
        out = asdict(self)
        out["exact_match"] = self.exact_match
        return out


def dimension_record(d: int, ex: ExchangePolys) -> DimensionRecord:
    e = 3 * d + 1
    cs = condition_matrix(e, d, d, d, ex)
    kdim = cs.matrix.cols - rank(cs.matrix)
    return DimensionRecord(d, cs.matrix.cols, cs.matrix.rows, kdim, 3 * d + 3)


def _record_job(args):
    d, ex = args
    return dimension_record(d, ex)


def deg1_table(d_max: int, ex: ExchangePolys, jobs: int = 1) -> List[DimensionRecord]:
    """Records for d = 1..d_max, ordered by d regardless of ``jobs``."""
    ds = list(range(1, d_max + 1))
    if jobs > 1 and len(ds) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_record_job, [(d, ex) for d in ds]))
    return [dimension_record(d, ex) for d in ds]


# degree zero


@dataclass(frozen=True)
class Deg0Entry:
    expo: Tuple[int, int, int]
    dim_space: int
    dim_sum: int
    contained: bool

    @property
    def ok(self) -> bool:
        return self.contained and self.dim_space == self.dim_sum


@dataclass
class Deg0Report:
    bound: int
    entries: List[Deg0Entry] = field(default_factory=list)

    @property
    def violations(self) -> List[Deg0Entry]:
        return [e for e in self.entries if not e.ok]

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "bound": self.bound,
            "triples_checked": len(self.entries),
            "violations": [list(e.expo) for e in self.violations],
            "entries": [
                {"expo": list(e.expo), "dim_space": e.dim_space, "dim_sum": e.dim_sum,
                 "contained": e.contained, "ok": e.ok}
                for e in self.entries
            ],
        }


def verify_deg0(bound: int, ex: ExchangePolys) -> Deg0Report:
    """Check S(i,j,k) = x S(i-1,j,k) + y S(i,j-1,k) + z S(i,j,k-1) at e = i+j+k.

    Any degree-0 element f/(x^i y^j z^k) of U outside this sum would be a
    nonconstant degree-0 element that cannot be reduced to a smaller
    denominator, so zero violations up to ``bound`` means U_0 = K there.
    """
    report = Deg0Report(bound)
    bases = {}

    def basis(i, j, k):
        if min(i, j, k) < 0:
            return []
        key = (i, j, k)
        if key not in bases:
            bases[key] = solution_space_basis(i + j + k, i, j, k, ex)
        return bases[key]

    triples = [
        (i, j, k)
        for s in range(1, 3 * bound + 1)
        for i in range(bound + 1)
        for j in range(bound + 1)
        for k in range(bound + 1)
        if i + j + k == s
    ]
    for i, j, k in triples:
        e = i + j + k
        space = basis(i, j, k)
        shifted = (
            [g.shift(1, 0, 0) for g in basis(i - 1, j, k)]
            + [g.shift(0, 1, 0) for g in basis(i, j - 1, k)]
            + [g.shift(0, 0, 1) for g in basis(i, j, k - 1)]
        )
        cs = condition_matrix(e, i, j, k, ex)
        contained = all(cs.matrix.annihilates(g.to_vector()) for g in shifted)
        dim_sum = span_rank([g.to_vector() for g in shifted])
        report.entries.append(Deg0Entry((i, j, k), len(space), dim_sum, contained))
    return report


# degree one growth chain


@dataclass
class GrowthLevel:
    d: int
    dim_prev: int
    dim: int
    embedded_ok: bool
    image_rank: int
    witness: Optional[TernaryForm]
    witness_expo: Optional[Tuple[int, int, int]]
    witness_member: bool
    witness_not_lower: bool

    @property
    def ok(self) -> bool:
        return (
            self.embedded_ok
            and self.dim > self.dim_prev
            and self.image_rank == self.dim_prev
            and self.witness is not None
            and self.witness_member
            and self.witness_not_lower
        )

    def as_dict(self) -> dict:
        return {
            "d": self.d,
            "dim_prev": self.dim_prev,
            "dim": self.dim,
            "embedded_ok": self.embedded_ok,
            "image_rank": self.image_rank,
            "witness": format_form(self.witness) if self.witness is not None else None,
            "witness_normalized_expo": list(self.witness_expo) if self.witness_expo else None,
            "witness_member": self.witness_member,
            "witness_not_lower": self.witness_not_lower,
            "ok": self.ok,
        }


@dataclass
class GrowthReport:
    levels: List[GrowthLevel]

    @property
    def dims(self) -> List[int]:
        if not self.levels:
            return []
        return [self.levels[0].dim_prev] + [lv.dim for lv in self.levels]

    @property
    def ok(self) -> bool:
        return all(lv.ok for lv in self.levels)

    def as_dict(self) -> dict:
        return {"dims": self.dims, "ok": self.ok, "levels": [lv.as_dict() for lv in self.levels]}


def _level_basis(d: int, ex: ExchangePolys) -> List[TernaryForm]:
    return solution_space_basis(3 * d + 1, d, d, d, ex)


def u1_growth(d_max: int, ex: ExchangePolys) -> GrowthReport:
    """Exhibit the strictly increasing chain S1(0) < S1(1) < ... < S1(d_max).

    S1(d) is the numerator space of degree-1 elements of U with denominator
    (xyz)^d. Multiplying numerators by xyz embeds S1(d-1) into S1(d); each
    level also yields a witness outside the image, i.e. a numerator not
    divisible by xyz, so the element needs the full denominator (xyz)^d.
    """
    levels = []
    prev = _level_basis(0, ex)
    for d in range(1, d_max + 1):
        cur = _level_basis(d, ex)
        e = 3 * d + 1
        cs = condition_matrix(e, d, d, d, ex)
        image = [g.shift(1, 1, 1) for g in prev]
        embedded_ok = all(
            cs.matrix.annihilates(h.to_vector())
            and lemma1_check(LaurentFraction(h, (d, d, d)), ex).member
            for h in image
        )
        image_vecs = [h.to_vector() for h in image]
        image_rank = span_rank(image_vecs)
        outside = [f for f in cur if span_rank(image_vecs + [f.to_vector()]) > image_rank]
        # prefer a witness that no variable divides
        witness = next((f for f in outside if f.min_exponents() == (0, 0, 0)), None)
        if witness is None and outside:
            combo = TernaryForm.zero(e)
            for n, f in enumerate(outside):
                combo = combo + f.scale(n + 1)
            witness = combo if combo.min_exponents() == (0, 0, 0) else outside[0]
        w_expo, w_member, w_not_lower = None, False, False
        if witness is not None:
            fr = LaurentFraction(witness, (d, d, d))
            w_expo = normalize(fr).expo
            w_member = lemma1_check(fr, ex).member and oracle_membership(fr, ex)
            # representable over (xyz)^(d-1) iff xyz divides the numerator
            w_not_lower = min(witness.min_exponents()) == 0
        levels.append(
            GrowthLevel(d, len(prev), len(cur), embedded_ok, image_rank, witness, w_expo, w_member, w_not_lower)
        )
        prev = cur
    return GrowthReport(levels)


# criterion / oracle cross-check


def _random_form(rng: random.Random, degree: int, density: float = 1.0) -> TernaryForm:
    coeffs = {}
    for m in monomials(degree):
        if rng.random() < density:
            coeffs[m] = rng.randint(-9, 9)
    return TernaryForm(degree, coeffs)


def _random_member(rng: random.Random, ex: ExchangePolys, max_degree: int) -> Optional[LaurentFraction]:
    """A product of cluster variables, rewritten over a random small denominator."""
    cv = cluster_variables(ex)
    fr = LaurentFraction(TernaryForm.constant(rng.randint(1, 9)))
    for _ in range(rng.randint(1, 3)):
        fr = fr * cv[rng.choice(list(cv))]
    expo = tuple(rng.randint(0, 3) for _ in range(3))
    shift = [e - s for e, s in zip(expo, fr.expo)]
    if min(shift) < 0:
        return None
    f = fr.numerator.shift(*shift)
    if f.degree > max_degree:
        return None
    return LaurentFraction(f, expo)


@dataclass
class CrosscheckReport:
    trials: int
    seed: int
    agree: int
    members: int
    mismatches: List[dict]

    @property
    def ok(self) -> bool:
        return self.agree == self.trials

    def as_dict(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "agree": self.agree,
            "members": self.members,
            "mismatches": self.mismatches,
            "ok": self.ok,
        }


def random_fractions(trials: int, seed: int, ex: ExchangePolys, max_degree: int = 9, max_expo: int = 3):
    """Seeded mix of random, constructed-member and perturbed-member fractions."""
    rng = random.Random(seed)
    out = []
    while len(out) < trials:
        kind = len(out) % 4
        expo = tuple(rng.randint(0, max_expo) for _ in range(3))
        if kind == 0:
            f = _random_form(rng, rng.randint(0, max_degree), rng.choice([0.2, 0.5, 1.0]))
            if f.is_zero():
                continue
            out.append(LaurentFraction(f, expo))
        elif kind == 1:
            fr = _random_member(rng, ex, max_degree)
            if fr is not None:
                out.append(fr)
        else:
            e = rng.randint(0, max_degree)
            basis = solution_space_basis(e, *expo, ex)
            if not basis:
                continue
            f = TernaryForm.zero(e)
            for g in basis:
                f = f + g.scale(rng.randint(-3, 3))
            if kind == 3:
                f = f + TernaryForm(e, {rng.choice(monomials(e)): rng.randint(1, 9)})
            if f.is_zero():
                continue
            out.append(LaurentFraction(f, expo))
    return out


def crosscheck(trials: int, seed: int, ex: ExchangePolys) -> CrosscheckReport:
    agree = members = 0
    mismatches = []
    for fr in random_fractions(trials, seed, ex):
        a = lemma1_check(fr, ex).member
        b = oracle_membership(fr, ex)
        members += a
        if a == b:
            agree += 1
        else:
            mismatches.append({"numerator": format_form(fr.numerator), "expo": list(fr.expo),
                               "criterion": a, "oracle": b})
    return CrosscheckReport(trials, seed, agree, members, mismatches)


def compare_assignments(d_max: int, params_list: Sequence[ParamAssignment]) -> dict:
    """Lemma-3 family dimensions under several parameter assignments."""
    table = {}
    for params in params_list:
        recs = deg1_table(d_max, exchange_polys(params))
        table[",".join(params.as_strings())] = [r.kernel_dim for r in recs]
    values = list(table.values())
    return {"dims": table, "consistent": all(v == values[0] for v in values)}
