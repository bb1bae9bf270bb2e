import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from upperclust.linalg import (
    BadPrime,
    ExactMatrix,
    kernel_basis,
    modular_rank,
    rank,
    rational_rank,
    span_rank,
)


def random_matrix(rng, rows, cols, target_rank=None, denom=True):
    """Random rational matrix, optionally of bounded rank (product of two factors)."""
    def entry():
        num = rng.randint(-9, 9)
        return Fraction(num, rng.randint(1, 5) if denom else 1)

    if target_rank is None:
        return ExactMatrix.from_rows([[entry() for _ in range(cols)] for _ in range(rows)], cols)
    left = [[entry() for _ in range(target_rank)] for _ in range(rows)]
    right = [[entry() for _ in range(cols)] for _ in range(target_rank)]
    prod = [[sum(left[i][t] * right[t][j] for t in range(target_rank)) for j in range(cols)]
            for i in range(rows)]
    return ExactMatrix.from_rows(prod, cols)


def test_identity_and_zero():
    assert rank(ExactMatrix.identity(5)) == 5
    assert rank(ExactMatrix.zeros(4, 6)) == 0
    assert kernel_basis(ExactMatrix.identity(5)) == []


def test_kernel_of_ones_row():
    m = ExactMatrix.from_rows([[1, 1, 1]])
    basis = kernel_basis(m)
    assert len(basis) == 2
    assert all(sum(v) == 0 for v in basis)
    assert span_rank(basis) == 2


def test_rank_matches_sympy_small():
    rng = random.Random(3)
    for _ in range(20):
        m = random_matrix(rng, rng.randint(1, 8), rng.randint(1, 8), rng.choice([None, 1, 2, 3]))
        assert rank(m) == sp.Matrix([list(r) for r in m.entries]).rank()


def test_rank_vs_naive_30x40():
    rng = random.Random(11)
    for r in (None, 5, 17, 29):
        m = random_matrix(rng, 30, 40, r)
        assert rank(m) == rational_rank(m)


def test_rank_nullity():
    rng = random.Random(5)
    for _ in range(30):
        rows, cols = rng.randint(1, 12), rng.randint(1, 12)
        m = random_matrix(rng, rows, cols, rng.choice([None, 1, 2, 4]))
        basis = kernel_basis(m)
        assert rank(m) + len(basis) == cols
        assert span_rank(basis) == len(basis)
        for v in basis:
            assert all(x == 0 for x in m.apply(v))


@settings(max_examples=50)
@given(st.integers(0, 2**32), st.integers(1, 10), st.integers(1, 10))
def test_rank_invariant_under_row_ops(seed, rows, cols):
    rng = random.Random(seed)
    m = random_matrix(rng, rows, cols, rng.choice([None, 1, 3]))
    entries = [list(r) for r in m.entries]
    rng.shuffle(entries)
    factors = [Fraction(rng.choice([-3, -1, 2, 7]), rng.randint(1, 4)) for _ in entries]
    entries = [[x * f for x in r] for r, f in zip(entries, factors)]
    assert rank(ExactMatrix.from_rows(entries, cols)) == rank(m)


def test_modular_rank_examples():
    assert modular_rank(ExactMatrix.identity(6), 101) == 6
    m = ExactMatrix.from_rows([[101, 202]])
    assert modular_rank(m, 101) == 0
    assert rank(m) == 1
    with pytest.raises(BadPrime):
        modular_rank(ExactMatrix.from_rows([[Fraction(1, 7)]]), 7)


def test_modular_rank_never_exceeds_exact():
    rng = random.Random(17)
    agree = total = 0
    for _ in range(100):
        m = random_matrix(rng, rng.randint(1, 10), rng.randint(1, 10), rng.choice([None, 2]), denom=False)
        exact = rank(m)
        for prime in (2, 3, 101):
            mod = modular_rank(m, prime)
            assert mod <= exact
            agree += mod == exact
            total += 1
    assert agree > total // 2
