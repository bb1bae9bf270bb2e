"""The seed (x, y, z), its exchange polynomials and adjacent cluster variables.

The exchange matrix of the seed is

    ( 0  3 -3)
    (-3  0  3)
    ( 3 -3  0)

but only the explicit exchange binomials are used here; there is no general
mutation engine.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import ParamAssignment
from .poly import BinaryForm, LaurentFraction, TernaryForm, VARS


@dataclass(frozen=True)
class ExchangePolys:
    p: BinaryForm  # a1+ y^3 + a1- z^3
    q: BinaryForm  # a2+ z^3 + a2- x^3
    r: BinaryForm  # a3+ x^3 + a3- y^3

    def for_axis(self, axis: str) -> BinaryForm:
        return {"x": self.p, "y": self.q, "z": self.r}[axis]

    def key(self) -> tuple:
        return tuple(tuple(sorted(f.coeffs.items())) for f in (self.p, self.q, self.r))

    def items(self):
        return [("x", self.p), ("y", self.q), ("z", self.r)]


def exchange_polys(params: ParamAssignment) -> ExchangePolys:
    # vars are in cyclic order, so the "+" coefficient sits on the first variable
    return ExchangePolys(
        p=BinaryForm(("y", "z"), 3, {(3, 0): params.a1p, (0, 3): params.a1m}),
        q=BinaryForm(("z", "x"), 3, {(3, 0): params.a2p, (0, 3): params.a2m}),
        r=BinaryForm(("x", "y"), 3, {(3, 0): params.a3p, (0, 3): params.a3m}),
    )


@dataclass(frozen=True)
class AdjacentVariable:
    axis: str
    fraction: LaurentFraction

    @property
    def numerator(self) -> TernaryForm:
        return self.fraction.numerator


def adjacent_variable(axis: str, params: ParamAssignment) -> AdjacentVariable:
    """x' = p/x, y' = q/y or z' = r/z."""
    if axis not in VARS:
        raise ValueError(f"unknown axis {axis!r}")
    ex = exchange_polys(params)
    expo = tuple(1 if v == axis else 0 for v in VARS)
    return AdjacentVariable(axis, LaurentFraction(ex.for_axis(axis).to_ternary(), expo))


def cluster_variables(ex: ExchangePolys):
    """The six variables x, y, z, x', y', z' as Laurent fractions."""
    out = {v: LaurentFraction(TernaryForm.variable(v)) for v in VARS}
    for n, (axis, poly) in enumerate(ex.items()):
        expo = tuple(int(m == n) for m in range(3))
        out[axis + "'"] = LaurentFraction(poly.to_ternary(), expo)
    return out


def rotate_form(f: TernaryForm) -> TernaryForm:
    """Apply the substitution x -> y -> z -> x."""
    return TernaryForm(f.degree, {(c, a, b): v for (a, b, c), v in f.coeffs.items()})
