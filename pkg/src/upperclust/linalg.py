"""Exact rank and kernel computations over Q.

The workhorse is fraction-free (Bareiss) elimination on an integer matrix
obtained by clearing denominators row by row. A naive rational Gaussian
elimination is kept alongside as an independent reference, and a modular
rank is available as an advisory lower bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, Sequence, Tuple


class BadPrime(ValueError):
    pass


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: Tuple[Tuple[Fraction, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int = None) -> "ExactMatrix":
        data = tuple(tuple(Fraction(x) for x in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        for r in data:
            if len(r) != cols:
                raise ValueError("ragged matrix")
        return cls(len(data), cols, data)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls.from_rows([[0] * cols for _ in range(rows)], cols)

    def apply(self, vec: Sequence) -> List[Fraction]:
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        return [sum((a * b for a, b in zip(row, vec) if a), Fraction(0)) for row in self.entries]

    def annihilates(self, vec: Sequence) -> bool:
        return all(v == 0 for v in self.apply(vec))

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]


def _integer_rows(m) -> List[List[int]]:
    entries = m.entries if isinstance(m, ExactMatrix) else m
    out = []
    for row in entries:
        row = [Fraction(x) for x in row]
        den = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def bareiss_echelon(m) -> Tuple[List[List[int]], List[int]]:
    """Fraction-free row echelon form.

    Returns the integer echelon rows (nonzero rows only) and the pivot
    columns. Pivots are chosen as the first row, in order, with a nonzero
    entry in the current column; every division is exact.
    """
    a = _integer_rows(m)
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    prev = 1
    r = 0
    pivots: List[int] = []
    for col in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][col] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[piv], a[r] = a[r], a[piv]
        prow = a[r]
        pv = prow[col]
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[col]
            if f == 0:
                if pv != prev:
                    for j in range(col + 1, ncols):
                        if row[j]:
                            row[j] = row[j] * pv // prev
            else:
                for j in range(col + 1, ncols):
                    row[j] = (pv * row[j] - f * prow[j]) // prev
                row[col] = 0
        prev = pv
        pivots.append(col)
        r += 1
    return a[:r], pivots


def rank(m) -> int:
    return len(bareiss_echelon(m)[1])


def kernel_basis(m: ExactMatrix) -> List[List[Fraction]]:
    """Basis of the right kernel, one vector per free column.

    Each vector has a 1 in its free column and 0 in the other free columns.
    """
    ncols = m.cols
    rows, pivots = bareiss_echelon(m)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, pc in zip(reversed(rows), reversed(pivots)):
            s = sum((row[j] * v[j] for j in range(pc + 1, ncols) if row[j] and v[j]), Fraction(0))
            v[pc] = -s / row[pc]
        basis.append(v)
    for v in basis:
        if not m.annihilates(v):
            raise ArithmeticError("kernel vector failed verification")
    return basis


def rational_rank(m) -> int:
    """Plain Gaussian elimination over Fractions; reference for :func:`rank`."""
    entries = m.entries if isinstance(m, ExactMatrix) else m
    a = [[Fraction(x) for x in row] for row in entries]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[piv], a[r] = a[r], a[piv]
        inv = 1 / a[r][col]
        for i in range(r + 1, nrows):
            f = a[i][col] * inv
            if f:
                for j in range(col, ncols):
                    a[i][j] -= f * a[r][j]
        r += 1
        if r == nrows:
            break
    return r


def modular_rank(m, prime: int) -> int:
    """Rank of the reduction modulo ``prime``. Never exceeds the exact rank."""
    entries = m.entries if isinstance(m, ExactMatrix) else m
    a = []
    for row in entries:
        out = []
        for x in row:
            x = Fraction(x)
            if x.denominator % prime == 0:
                raise BadPrime(f"{prime} divides the denominator of {x}")
            out.append(x.numerator * pow(x.denominator, -1, prime) % prime)
        a.append(out)
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][col]), None)
        if piv is None:
            continue
        a[piv], a[r] = a[r], a[piv]
        inv = pow(a[r][col], -1, prime)
        for i in range(r + 1, nrows):
            f = a[i][col] * inv % prime
            if f:
                for j in range(col, ncols):
                    a[i][j] = (a[i][j] - f * a[r][j]) % prime
        r += 1
        if r == nrows:
            break
    return r


def span_rank(vectors: Sequence[Sequence]) -> int:
    """Dimension of the span of a list of vectors."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return 0
    return rank(vectors)
