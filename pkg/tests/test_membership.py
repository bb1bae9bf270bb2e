import random

import pytest
from hypothesis import given, settings, strategies as st

from upperclust.cluster import cluster_variables, exchange_polys
from upperclust.field import make_params
from upperclust.grading import random_fractions, solution_space_basis
from upperclust.membership import (
    ZeroNumerator,
    graded_decompose,
    lemma1_check,
    normalize,
    oracle_membership,
    recheck_witness,
    ring_membership_oracle,
    upper_membership,
)
from upperclust.poly import LaurentFraction, TernaryForm, parse_form

x, y, z = (TernaryForm.variable(v) for v in "xyz")


def frac(text, expo):
    return LaurentFraction.from_text(text, expo)


def test_normalize_examples(ex):
    n = normalize(frac("x^2*y", (1, 1, 0)))
    assert n.numerator == x and n.expo == (0, 0, 0)
    p = ex.p.to_ternary()
    fr = LaurentFraction(p, (1, 0, 0))
    assert normalize(fr) is fr
    g = parse_form("y^2 + 3*x*z")
    n = normalize(LaurentFraction(g.shift(1, 1, 1), (1, 1, 1)))
    assert n.numerator == g and n.expo == (0, 0, 0)
    n = normalize(frac("x^3*y", (1, 0, 0)))
    assert n.numerator == parse_form("x^2*y") and n.expo == (0, 0, 0)
    n = normalize(frac("x^3*y + x*z^3", (2, 0, 1)))
    assert n.numerator == parse_form("x^2*y + z^3") and n.expo == (1, 0, 1)
    n = normalize(frac("y", (-1, 0, 0)))
    assert n.numerator == y and n.expo == (-1, 0, 0)
    with pytest.raises(ZeroNumerator):
        normalize(LaurentFraction(TernaryForm.zero(3), (1, 0, 0)))


def test_basic_verdicts(ex):
    assert lemma1_check(LaurentFraction(x), ex).member
    assert lemma1_check(LaurentFraction(ex.p.to_ternary(), (1, 0, 0)), ex).member
    v = lemma1_check(frac("1", (1, 0, 0)), ex)
    assert not v.member
    fc = v.failing_condition
    assert (fc.axis, fc.slice_index, fc.power) == ("x", 0, 1)
    assert not lemma1_check(frac("y^3", (1, 0, 0)), ex).member
    assert lemma1_check(frac("-4/9", (0, 0, 0)), ex).member
    assert lemma1_check(LaurentFraction(TernaryForm.zero()), ex).member


def test_cluster_variables_are_members(ex):
    cv = cluster_variables(ex)
    for name, fr in cv.items():
        assert upper_membership(fr, ex).member, name
    assert upper_membership(cv["y'"] * cv["z'"], ex).member
    assert upper_membership(cv["x'"] * cv["x'"], ex).member
    assert upper_membership(cv["x'"] * cv["y'"] * cv["z'"], ex).member


def test_xprime_over_y(ex):
    fr = LaurentFraction(ex.p.to_ternary(), (1, 1, 0))
    v = upper_membership(fr, ex)
    assert not v.member
    assert v.failing_condition.axis == "y"
    assert v.failing_condition.slice_index == 0
    assert not ring_membership_oracle(fr, "y", ex)
    assert ring_membership_oracle(fr, "x", ex)


def test_oracle_examples(ex):
    for axis in (None, "x", "y", "z"):
        assert ring_membership_oracle(LaurentFraction(x), axis, ex)
    assert not ring_membership_oracle(frac("1", (1, 0, 0)), "x", ex)
    assert ring_membership_oracle(frac("1", (1, 0, 0)), "y", ex)


def test_negative_exponents(ex):
    assert lemma1_check(frac("1", (-2, 0, 0)), ex).member
    assert oracle_membership(frac("1", (-2, 0, 0)), ex)


def test_graded_decompose(ex):
    fr = frac("x + x^2", (1, 0, 0))
    parts = graded_decompose(fr)
    assert parts[0] == LaurentFraction(TernaryForm.constant(1))
    assert parts[1] == LaurentFraction(x)
    total = parts[0] + parts[1]
    assert total == fr
    assert graded_decompose(LaurentFraction(x, (0, 1, 0)))[0] == LaurentFraction(x, (0, 1, 0))
    assert lemma1_check(fr, ex).member
    assert not lemma1_check(frac("x + 1", (1, 0, 0)), ex).member


def test_inhomogeneous_member_needs_every_component(ex):
    p = ex.p.to_ternary()
    good = LaurentFraction([p, x.shift(1, 0, 0)], (1, 0, 0))
    assert lemma1_check(good, ex).member
    bad = LaurentFraction([p, y], (1, 0, 0))
    v = lemma1_check(bad, ex)
    assert not v.member and v.component_degree == 0
    assert oracle_membership(good, ex) and not oracle_membership(bad, ex)


def test_witnesses_recheck(ex):
    for fr in random_fractions(120, 3, ex):
        v = lemma1_check(fr, ex)
        if not v.member:
            assert recheck_witness(fr, v, ex) == v.failing_condition.remainder
            assert any(v.failing_condition.remainder)


def test_criterion_agrees_with_oracle(ex):
    for fr in random_fractions(200, 1, ex):
        assert lemma1_check(fr, ex).member == oracle_membership(fr, ex)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_criterion_agrees_with_oracle_other_params(seed):
    rng = random.Random(seed)
    vals = [rng.choice([-1, 1]) * rng.randint(1, 9) for _ in range(6)]
    try:
        ex = exchange_polys(make_params(vals))
    except ValueError:
        return
    for fr in random_fractions(8, seed, ex, max_degree=7):
        assert lemma1_check(fr, ex).member == oracle_membership(fr, ex)


def _members(ex, rng, count):
    out = []
    while len(out) < count:
        e = rng.randint(0, 7)
        expo = tuple(rng.randint(0, 2) for _ in range(3))
        basis = solution_space_basis(e, *expo, ex)
        if not basis:
            continue
        f = TernaryForm.zero(e)
        for g in basis:
            f = f + g.scale(rng.randint(-2, 2))
        if not f.is_zero():
            out.append(LaurentFraction(f, expo))
    return out


def test_products_of_members(ex):
    rng = random.Random(2024)
    mem = _members(ex, rng, 200)
    for a, b in zip(mem[::2], mem[1::2]):
        prod = a * b
        assert lemma1_check(prod, ex).member
        assert oracle_membership(prod, ex)


def test_denominator_monotonicity(ex):
    rng = random.Random(99)
    for fr in _members(ex, rng, 60):
        for n in range(3):
            if fr.expo[n] >= 1:
                expo = list(fr.expo)
                expo[n] -= 1
                assert lemma1_check(LaurentFraction(fr.numerator, expo), ex).member
