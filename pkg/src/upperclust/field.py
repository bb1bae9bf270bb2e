"""Exact coefficients and the generic parameter assignment.

Coefficients are :class:`fractions.Fraction` values throughout; there is no
floating point anywhere in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Coeff = Fraction
RationalLike = Union[int, str, Fraction]

PARAM_NAMES = ("a1p", "a1m", "a2p", "a2m", "a3p", "a3m")
DEFAULT_PARAMS = (2, 3, 5, 7, 11, 13)


class ParameterError(ValueError):
    """Base class for rejected parameter assignments."""


class ZeroParameter(ParameterError):
    def __init__(self, names):
        self.names = tuple(names)
        super().__init__("parameter(s) must be nonzero: " + ", ".join(self.names))


class TorsionRatio(ParameterError):
    def __init__(self, ratio: Fraction):
        self.ratio = ratio
        super().__init__(
            f"(a1p*a2p*a3p)/(a1m*a2m*a3m) = {ratio} is torsion in Q^x; "
            "the coefficients are not generic"
        )


def to_coeff(value: RationalLike) -> Coeff:
    """Convert an int, Fraction or string such as ``"3/4"`` or ``"0.25"``."""
    if isinstance(value, float):
        raise TypeError("floating point coefficients are not accepted")
    if isinstance(value, str):
        value = value.strip()
    return Fraction(value)


def format_coeff(c: Coeff) -> str:
    return str(c)


@dataclass(frozen=True)
class ParamAssignment:
    """The six exchange coefficients a1+, a1-, a2+, a2-, a3+, a3-.

    Construct through :func:`make_params`; direct construction skips the
    genericity validation and is only meant for degenerate test harnesses.
    """

    a1p: Fraction
    a1m: Fraction
    a2p: Fraction
    a2m: Fraction
    a3p: Fraction
    a3m: Fraction

    def as_tuple(self) -> tuple:
        return (self.a1p, self.a1m, self.a2p, self.a2m, self.a3p, self.a3m)

    def as_strings(self) -> list:
        return [format_coeff(v) for v in self.as_tuple()]

    def rotated(self) -> "ParamAssignment":
        """Relabel a1 -> a2 -> a3 -> a1 (matches the cyclic shift x -> y -> z -> x)."""
        return ParamAssignment(self.a3p, self.a3m, self.a1p, self.a1m, self.a2p, self.a2m)


def _ratio(values) -> Fraction:
    a1p, a1m, a2p, a2m, a3p, a3m = values
    return (a1p * a2p * a3p) / (a1m * a2m * a3m)


def make_params(values: Iterable[RationalLike]) -> ParamAssignment:
    """Validate six rationals and return a generic :class:`ParamAssignment`.

    Over Q the torsion subgroup of Q^x is {1, -1}, so the condition that no
    power of the plus-product equals the same power of the minus-product
    reduces to the single test ``ratio not in {1, -1}``.
    """
    try:
        vals = [to_coeff(v) for v in values]
    except (ValueError, ZeroDivisionError) as exc:
        raise ParameterError(f"cannot parse parameter: {exc}") from None
    if len(vals) != 6:
        raise ParameterError(f"expected 6 parameters, got {len(vals)}")
    zeros = [name for name, v in zip(PARAM_NAMES, vals) if v == 0]
    if zeros:
        raise ZeroParameter(zeros)
    ratio = _ratio(vals)
    if ratio in (1, -1):
        raise TorsionRatio(ratio)
    return ParamAssignment(*vals)


def torsion_ratio(params: ParamAssignment) -> Coeff:
    return _ratio(params.as_tuple())


def parse_params(text: str) -> ParamAssignment:
    """Parse a comma separated list such as ``"2,3,5/7,7,11,13"``."""
    return make_params(text.replace(";", ",").split(","))


def default_params() -> ParamAssignment:
    return make_params(DEFAULT_PARAMS)
