import random
from fractions import Fraction

import pytest

import oracles
from upperclust.cluster import exchange_polys
from upperclust.field import ParamAssignment, make_params
from upperclust.grading import (
    compare_assignments,
    condition_count,
    condition_matrix,
    crosscheck,
    deg1_table,
    solution_space_basis,
    solution_space_dim,
    u1_growth,
    verify_deg0,
)
from upperclust.linalg import ExactMatrix, rational_rank
from upperclust.membership import lemma1_check, oracle_membership
from upperclust.poly import LaurentFraction, TernaryForm, monomials

DEFAULT = (2, 3, 5, 7, 11, 13)


def test_empty_system(ex):
    cs = condition_matrix(5, 0, 0, 0, ex)
    assert cs.matrix.rows == 0 and cs.matrix.cols == 21
    assert solution_space_dim(5, 0, 0, 0, ex) == 21


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_lemma3_counts(ex, d):
    cs = condition_matrix(3 * d + 1, d, d, d, ex)
    assert cs.matrix.rows == 9 * d * (d + 1) // 2 == condition_count(3 * d + 1, d, d, d)
    assert cs.matrix.cols == (3 * d + 3) * (3 * d + 2) // 2


def test_row_order(ex):
    cs = condition_matrix(7, 2, 2, 2, ex)
    assert (cs.matrix.rows, cs.matrix.cols) == (27, 36)
    axes = [lab[0] for lab in cs.row_labels]
    assert axes == sorted(axes)
    assert cs.row_labels[:9] == tuple(("x", 0, 2, n) for n in range(6)) + tuple(("x", 1, 1, n) for n in range(3))


def test_small_degree_condition_count(ex):
    # slice of degree 1 can only carry 2 conditions
    cs = condition_matrix(1, 1, 0, 0, ex)
    assert cs.matrix.rows == condition_count(1, 1, 0, 0) == 2


# frozen values; each was computed by the sympy oracle in tests/oracles.py
@pytest.mark.parametrize("e,expo,expected", [
    ((4), (1, 1, 1), 6),
    ((1), (0, 0, 0), 3),
    ((3), (1, 0, 0), 7),
    ((7), (2, 2, 2), 9),
    ((5), (2, 1, 0), 9),
    ((6), (0, 2, 3), 4),
])
def test_frozen_dimensions(ex, e, expo, expected):
    assert solution_space_dim(e, *expo, ex) == expected


def test_dimension_3100_by_hand(ex):
    # slice(f, x, 0) = c0 y^3 + c1 y^2 z + c2 y z^2 + c3 z^3 must be a multiple of 2y^3 + 3z^3:
    # c1 = c2 = 0 and 3 c0 - 2 c3 = 0, three equations on the ten coefficients
    idx = {m: n for n, m in enumerate(monomials(3))}
    rows = [[0] * 10 for _ in range(3)]
    rows[0][idx[(0, 2, 1)]] = 1
    rows[1][idx[(0, 1, 2)]] = 1
    rows[2][idx[(0, 3, 0)]], rows[2][idx[(0, 0, 3)]] = 3, -2
    assert 10 - rational_rank(ExactMatrix.from_rows(rows)) == 7 == solution_space_dim(3, 1, 0, 0, ex)


def test_against_sympy_oracle(ex):
    rng = random.Random(8)
    for _ in range(12):
        e = rng.randint(0, 8)
        expo = tuple(rng.randint(0, 3) for _ in range(3))
        assert solution_space_dim(e, *expo, ex) == oracles.solution_dim(e, expo, DEFAULT)


def test_sympy_oracle_d3():
    assert oracles.solution_dim(10, (3, 3, 3), DEFAULT) == 12


def test_basis_three_way_consistency(ex):
    for e, expo in [(4, (1, 1, 1)), (7, (2, 2, 2)), (6, (2, 0, 1)), (5, (3, 1, 0))]:
        for f in solution_space_basis(e, *expo, ex):
            fr = LaurentFraction(f, expo)
            assert lemma1_check(fr, ex).member
            assert oracle_membership(fr, ex)


def test_deg1_table(ex):
    recs = deg1_table(3, ex)
    assert [(r.d, r.ambient_dim, r.conditions, r.lower_bound) for r in recs] == [
        (1, 15, 9, 6), (2, 36, 27, 9), (3, 66, 54, 12)]
    assert [r.kernel_dim for r in recs] == [6, 9, 12]
    assert all(r.ok and r.exact_match for r in recs)
    assert deg1_table(0, ex) == []


def test_deg1_table_parallel_matches(ex):
    assert deg1_table(3, ex, jobs=2) == deg1_table(3, ex)


def test_verify_deg0_generic(ex):
    report = verify_deg0(2, ex)
    assert len(report.entries) == 26
    assert report.ok
    first = report.entries[0]
    assert first.expo in {(1, 0, 0), (0, 1, 0), (0, 0, 1)}
    assert first.dim_space == first.dim_sum == 1
    e111 = next(e for e in report.entries if e.expo == (1, 1, 1))
    assert e111.dim_space == e111.dim_sum


def degenerate(values):
    return exchange_polys(ParamAssignment(*[Fraction(v) for v in values]))


def test_verify_deg0_torsion():
    report = verify_deg0(1, degenerate((1, 1, 1, 1, 1, 1)))
    assert [e.expo for e in report.violations] == [(1, 1, 1)]
    # ratio -1 only shows up at even exponents
    report = verify_deg0(2, degenerate((1, 1, 1, 1, -1, 1)))
    assert [e.expo for e in report.violations] == [(2, 2, 2)]


def test_u1_growth_small(ex):
    report = u1_growth(2, ex)
    assert report.dims == [3, 6, 9]
    assert report.ok
    for lv in report.levels:
        assert lv.witness_expo == (lv.d, lv.d, lv.d)


def test_crosscheck_report(ex):
    report = crosscheck(40, 5, ex)
    assert report.ok and report.trials == 40 and 0 < report.members < 40
    assert crosscheck(40, 5, ex).as_dict() == report.as_dict()


def test_specialization_independence():
    res = compare_assignments(3, [make_params(DEFAULT), make_params((1, 2, 3, 4, 5, 6)),
                                  make_params(("-1/2", 5, 3, "2/7", 4, -9))])
    assert res["consistent"]
    assert list(res["dims"].values())[0] == [6, 9, 12]
