"""Homogeneous polynomials in x, y, z and binary-form slices.

Monomials are exponent triples ``(a, b, c)`` for ``x^a y^b z^c``. Within a
degree they are enumerated graded-lexicographically with x > y > z; this is
the column order of every condition matrix in the package.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .field import Coeff, format_coeff

VARS = ("x", "y", "z")
VAR_INDEX = {v: n for n, v in enumerate(VARS)}
# The two variables remaining after removing an axis, in cyclic order.
# This matches the variable pairs of p (y,z), q (z,x) and r (x,y).
COMPLEMENT = {"x": ("y", "z"), "y": ("z", "x"), "z": ("x", "y")}


class PolyError(ValueError):
    pass


class DegreeMismatch(PolyError):
    pass


class UnsupportedDivisor(PolyError):
    pass


class ParseError(PolyError):
    pass


class Monomial(NamedTuple):
    a: int
    b: int
    c: int

    @property
    def degree(self) -> int:
        return self.a + self.b + self.c


@lru_cache(maxsize=None)
def monomials(degree: int) -> Tuple[Monomial, ...]:
    """All monomials of the given degree in graded-lex order (x > y > z)."""
    if degree < 0:
        return ()
    return tuple(
        Monomial(a, b, degree - a - b)
        for a in range(degree, -1, -1)
        for b in range(degree - a, -1, -1)
    )


@lru_cache(maxsize=None)
def monomial_index(degree: int) -> Dict[Monomial, int]:
    return {m: n for n, m in enumerate(monomials(degree))}


def ambient_dim(degree: int) -> int:
    return (degree + 1) * (degree + 2) // 2 if degree >= 0 else 0


def _clean(coeffs) -> Dict[Monomial, Fraction]:
    return {Monomial(*m): Fraction(c) for m, c in coeffs.items() if c != 0}


class TernaryForm:
    """A homogeneous polynomial of fixed degree in x, y, z over Q.

    The zero form carries whatever degree it is created with, and is treated
    as compatible with every degree in :meth:`add`.
    """

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs=None):
        if degree < 0:
            raise PolyError("degree must be nonnegative")
        coeffs = _clean(coeffs or {})
        for m in coeffs:
            if m.degree != degree:
                raise DegreeMismatch(f"monomial {tuple(m)} is not of degree {degree}")
        self.degree = degree
        self.coeffs = coeffs

    # construction helpers

    @classmethod
    def zero(cls, degree: int = 0) -> "TernaryForm":
        return cls(degree)

    @classmethod
    def monomial(cls, a: int, b: int, c: int, coeff=1) -> "TernaryForm":
        return cls(a + b + c, {(a, b, c): coeff})

    @classmethod
    def constant(cls, c) -> "TernaryForm":
        return cls(0, {(0, 0, 0): c})

    @classmethod
    def variable(cls, name: str) -> "TernaryForm":
        e = [0, 0, 0]
        e[VAR_INDEX[name]] = 1
        return cls.monomial(*e)

    @classmethod
    def from_vector(cls, degree: int, vec: Sequence) -> "TernaryForm":
        mons = monomials(degree)
        if len(vec) != len(mons):
            raise PolyError(f"vector length {len(vec)} != {len(mons)}")
        return cls(degree, dict(zip(mons, vec)))

    def to_vector(self) -> List[Fraction]:
        return [self.coeffs.get(m, Fraction(0)) for m in monomials(self.degree)]

    # basic protocol

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TernaryForm):
            return NotImplemented
        if not self.coeffs and not other.coeffs:
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        if not self.coeffs:
            return hash(())
        return hash((self.degree, frozenset(self.coeffs.items())))

    def __repr__(self):
        return f"TernaryForm({self.degree}, {format_form(self)!r})"

    def __str__(self):
        return format_form(self)

    def terms(self):
        """(monomial, coeff) pairs in graded-lex order."""
        return [(m, self.coeffs[m]) for m in monomials(self.degree) if m in self.coeffs]

    # arithmetic

    def add(self, other: "TernaryForm") -> "TernaryForm":
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        if self.degree != other.degree:
            raise DegreeMismatch(f"cannot add forms of degree {self.degree} and {other.degree}")
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return TernaryForm(self.degree, out)

    def scale(self, c) -> "TernaryForm":
        c = Fraction(c)
        if c == 0:
            return TernaryForm(self.degree)
        return TernaryForm(self.degree, {m: c * v for m, v in self.coeffs.items()})

    def mul(self, other: "TernaryForm") -> "TernaryForm":
        out: Dict[Tuple[int, int, int], Fraction] = {}
        for (a1, b1, c1), u in self.coeffs.items():
            for (a2, b2, c2), v in other.coeffs.items():
                key = (a1 + a2, b1 + b2, c1 + c2)
                out[key] = out.get(key, 0) + u * v
        return TernaryForm(self.degree + other.degree, out)

    def shift(self, a: int, b: int, c: int) -> "TernaryForm":
        """Multiply by the monomial x^a y^b z^c."""
        return TernaryForm(
            self.degree + a + b + c,
            {(m.a + a, m.b + b, m.c + c): v for m, v in self.coeffs.items()},
        )

    def pow(self, n: int) -> "TernaryForm":
        out = TernaryForm.constant(1)
        for _ in range(n):
            out = out.mul(self)
        return out

    def __add__(self, other):
        return self.add(other)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self.add(other.scale(-1))

    def __mul__(self, other):
        if isinstance(other, TernaryForm):
            return self.mul(other)
        return self.scale(other)

    __rmul__ = __mul__

    def min_exponents(self) -> Tuple[int, int, int]:
        """Largest (a, b, c) with x^a y^b z^c dividing the form (zeros for 0)."""
        if not self.coeffs:
            return (0, 0, 0)
        return tuple(min(m[n] for m in self.coeffs) for n in range(3))

    def unshift(self, a: int, b: int, c: int) -> "TernaryForm":
        """Exact division by x^a y^b z^c; raises if not divisible."""
        out = {}
        for m, v in self.coeffs.items():
            key = (m.a - a, m.b - b, m.c - c)
            if min(key) < 0:
                raise PolyError(f"monomial x^{a}y^{b}z^{c} does not divide the form")
            out[key] = v
        return TernaryForm(self.degree - a - b - c, out)


def add(f: TernaryForm, g: TernaryForm) -> TernaryForm:
    return f.add(g)


def mul(f: TernaryForm, g: TernaryForm) -> TernaryForm:
    return f.mul(g)


def scale(c, f: TernaryForm) -> TernaryForm:
    return f.scale(c)


class BinaryForm:
    """A homogeneous form in two of the variables.

    ``coeffs[(i, j)]`` is the coefficient of ``u^i v^j`` where
    ``vars == (u, v)``.
    """

    __slots__ = ("vars", "degree", "coeffs")

    def __init__(self, vars: Tuple[str, str], degree: int, coeffs=None):
        u, v = vars
        if u == v or u not in VAR_INDEX or v not in VAR_INDEX:
            raise PolyError(f"bad variable pair {vars!r}")
        self.vars = (u, v)
        self.degree = degree
        self.coeffs = {(i, j): Fraction(c) for (i, j), c in (coeffs or {}).items() if c != 0}
        for i, j in self.coeffs:
            if i + j != degree or i < 0 or j < 0:
                raise DegreeMismatch(f"exponent pair {(i, j)} not of degree {degree}")

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        if not self.coeffs and not other.coeffs:
            return True
        other = other.reordered(self.vars)
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __repr__(self):
        return f"BinaryForm({self.vars}, {self.degree}, {format_form(self.to_ternary())!r})"

    def reordered(self, vars: Tuple[str, str]) -> "BinaryForm":
        if tuple(vars) == self.vars:
            return self
        if tuple(vars) != self.vars[::-1]:
            raise PolyError(f"variables {vars} do not match {self.vars}")
        return BinaryForm(vars, self.degree, {(j, i): c for (i, j), c in self.coeffs.items()})

    def to_ternary(self) -> TernaryForm:
        iu, iv = VAR_INDEX[self.vars[0]], VAR_INDEX[self.vars[1]]
        out = {}
        for (i, j), c in self.coeffs.items():
            e = [0, 0, 0]
            e[iu], e[iv] = i, j
            out[tuple(e)] = c
        return TernaryForm(self.degree, out)

    def mul(self, other: "BinaryForm") -> "BinaryForm":
        other = other.reordered(self.vars)
        out: Dict[Tuple[int, int], Fraction] = {}
        for (i1, j1), u in self.coeffs.items():
            for (i2, j2), v in other.coeffs.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + u * v
        return BinaryForm(self.vars, self.degree + other.degree, out)

    def pow(self, n: int) -> "BinaryForm":
        out = BinaryForm(self.vars, 0, {(0, 0): 1})
        for _ in range(n):
            out = out.mul(self)
        return out


def slice(f: TernaryForm, axis: str, a: int) -> BinaryForm:
    """Coefficient of ``axis^a`` in f, as a form in the two other variables."""
    u, v = COMPLEMENT[axis]
    ia, iu, iv = VAR_INDEX[axis], VAR_INDEX[u], VAR_INDEX[v]
    deg = f.degree - a
    out = {(m[iu], m[iv]): c for m, c in f.coeffs.items() if m[ia] == a}
    return BinaryForm((u, v), max(deg, 0), out)


# univariate helpers; coefficient lists are in ascending powers


def _trim(p: List[Fraction]) -> List[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_divmod(num: Sequence, den: Sequence) -> Tuple[List[Fraction], List[Fraction]]:
    """Exact univariate division over Q."""
    den = _trim([Fraction(c) for c in den])
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = _trim([Fraction(c) for c in num])
    dd = len(den) - 1
    lead = den[-1]
    if len(rem) - 1 < dd:
        return [], rem
    quot = [Fraction(0)] * (len(rem) - dd)
    for k in range(len(rem) - 1, dd - 1, -1):
        c = rem[k]
        if c == 0:
            continue
        q = c / lead
        quot[k - dd] = q
        for n, d in enumerate(den):
            rem[k - dd + n] -= q * d
    return _trim(quot), _trim(rem[:dd])


class Dehomogenized(NamedTuple):
    """Univariate image of a binary form with ``unit_var`` set to 1.

    ``coeffs[n]`` is the coefficient of ``var^n``. Given ``degree`` the
    original form is recovered by :meth:`rehomogenize`.
    """

    coeffs: List[Fraction]
    var: str
    unit_var: str
    degree: int

    def rehomogenize(self) -> BinaryForm:
        return BinaryForm(
            (self.var, self.unit_var),
            self.degree,
            {(n, self.degree - n): c for n, c in enumerate(self.coeffs) if c != 0},
        )


def dehomogenize(g: BinaryForm, unit_var: str) -> Dehomogenized:
    if unit_var not in g.vars:
        raise PolyError(f"{unit_var!r} is not a variable of {g.vars}")
    var = g.vars[0] if g.vars[1] == unit_var else g.vars[1]
    h = g.reordered((var, unit_var))
    top = max((i for i, _ in h.coeffs), default=-1)
    coeffs = [Fraction(0)] * (top + 1)
    for (i, _), c in h.coeffs.items():
        coeffs[i] = c
    return Dehomogenized(coeffs, var, unit_var, g.degree)


def _check_divisor(p: BinaryForm) -> None:
    u_pure = p.coeffs.get((p.degree, 0), 0)
    v_pure = p.coeffs.get((0, p.degree), 0)
    if p.degree < 1 or u_pure == 0 or v_pure == 0:
        raise UnsupportedDivisor(
            "divisor must have nonzero coefficients on both pure powers of its variables"
        )


def divides_power(p: BinaryForm, m: int, g: BinaryForm, unit_var: Optional[str] = None) -> bool:
    """True iff ``p**m`` divides ``g`` in the polynomial ring.

    Both forms are dehomogenized at ``unit_var`` (default: p's second
    variable). Since p is coprime to both of its variables this loses
    nothing, and the test is m rounds of exact univariate division.
    """
    _check_divisor(p)
    if m < 0:
        raise PolyError("power must be nonnegative")
    if m == 0 or g.is_zero():
        return True
    if set(g.vars) != set(p.vars):
        raise PolyError(f"variables {g.vars} do not match divisor {p.vars}")
    unit = unit_var or p.vars[1]
    den = dehomogenize(p, unit).coeffs
    cur = dehomogenize(g, unit).coeffs
    for _ in range(m):
        cur, rem = poly_divmod(cur, den)
        if rem:
            return False
    return True


def division_remainder(p: BinaryForm, m: int, g: BinaryForm, unit_var: Optional[str] = None):
    """Remainder of the dehomogenized g modulo the dehomogenized ``p**m``.

    Used to build re-checkable non-membership witnesses.
    """
    _check_divisor(p)
    unit = unit_var or p.vars[1]
    den = dehomogenize(p.pow(m), unit).coeffs
    _, rem = poly_divmod(dehomogenize(g, unit).coeffs, den)
    return rem


# text format


def format_terms(coeffs: Dict, order: Iterable) -> str:
    parts = []
    for m in order:
        c = coeffs.get(m)
        if not c:
            continue
        factors = []
        for name, e in zip(VARS, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if factors and mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([format_coeff(mag)] + factors)
        sign = "-" if c < 0 else "+"
        if not parts:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts) if parts else "0"


def format_form(f: TernaryForm) -> str:
    return format_terms(f.coeffs, monomials(f.degree))


def format_polynomial(coeffs: Dict) -> str:
    """Format a possibly inhomogeneous polynomial, highest degree first."""
    degs = sorted({sum(m) for m in coeffs}, reverse=True)
    order = [m for d in degs for m in monomials(d)]
    return format_terms(coeffs, order)


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?(?:/\d+)?)|(?P<var>[xyz])|(?P<op>[-+*^]))"
)


def _tokenize(text: str):
    pos = 0
    text = text.strip()
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at position {pos}: {text[pos:pos + 10]!r}")
        pos = m.end()
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
    return out


def parse_polynomial(text: str) -> Dict[Monomial, Fraction]:
    """Parse ``"2*y^3 + 3*z^3 - 1/2*x*y*z"`` into a monomial -> coefficient map.

    Grammar: terms joined by ``+``/``-``; a term is a ``*``-product of
    rational numbers (``3``, ``3/4``, ``0.25``) and variables with optional
    ``^n`` exponents.
    """
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty polynomial")
    out: Dict[Monomial, Fraction] = {}
    n = 0

    def expect_factor():
        nonlocal n
        if n >= len(toks):
            raise ParseError("unexpected end of input")
        kind, val = toks[n]
        n += 1
        if kind == "num":
            try:
                return Fraction(val), (0, 0, 0)
            except ZeroDivisionError:
                raise ParseError(f"zero denominator in {val!r}") from None
        if kind == "var":
            e = 1
            if n < len(toks) and toks[n] == ("op", "^"):
                n += 1
                if n >= len(toks) or toks[n][0] != "num" or not toks[n][1].isdigit():
                    raise ParseError("exponent must be a nonnegative integer")
                e = int(toks[n][1])
                n += 1
            ex = [0, 0, 0]
            ex[VAR_INDEX[val]] = e
            return Fraction(1), tuple(ex)
        raise ParseError(f"unexpected {val!r}")

    while n < len(toks):
        sign = 1
        while n < len(toks) and toks[n][0] == "op" and toks[n][1] in "+-":
            if toks[n][1] == "-":
                sign = -sign
            n += 1
        coeff, ex = expect_factor()
        coeff *= sign
        while n < len(toks) and toks[n] == ("op", "*"):
            n += 1
            c2, e2 = expect_factor()
            coeff *= c2
            ex = tuple(p + q for p, q in zip(ex, e2))
        key = Monomial(*ex)
        out[key] = out.get(key, 0) + coeff
        if n < len(toks) and not (toks[n][0] == "op" and toks[n][1] in "+-"):
            raise ParseError(f"unexpected {toks[n][1]!r}")
    return {m: c for m, c in out.items() if c != 0}


def split_by_degree(coeffs: Dict) -> List[TernaryForm]:
    """Homogeneous components in ascending degree, zeros dropped."""
    byd: Dict[int, Dict] = {}
    for m, c in coeffs.items():
        byd.setdefault(sum(m), {})[m] = c
    return [TernaryForm(d, byd[d]) for d in sorted(byd) if any(byd[d].values())]


def parse_form(text: str, degree: Optional[int] = None) -> TernaryForm:
    parts = split_by_degree(parse_polynomial(text))
    if not parts:
        return TernaryForm.zero(degree or 0)
    if len(parts) > 1:
        raise ParseError("polynomial is not homogeneous")
    if degree is not None and parts[0].degree != degree:
        raise DegreeMismatch(f"expected degree {degree}, got {parts[0].degree}")
    return parts[0]


class LaurentFraction:
    """``numerator / (x^i y^j z^k)`` with a polynomial numerator.

    The numerator is held as homogeneous components of distinct degrees.
    Negative exponents mean the monomial multiplies the numerator.
    """

    __slots__ = ("parts", "expo")

    def __init__(self, numerator, expo=(0, 0, 0)):
        if isinstance(numerator, TernaryForm):
            forms = [numerator]
        elif isinstance(numerator, dict):
            forms = split_by_degree(numerator)
        else:
            forms = list(numerator)
        merged: Dict[int, TernaryForm] = {}
        for f in forms:
            if f.is_zero():
                continue
            merged[f.degree] = merged[f.degree].add(f) if f.degree in merged else f
        self.parts = tuple(merged[d] for d in sorted(merged) if not merged[d].is_zero())
        self.expo = tuple(int(e) for e in expo)
        if len(self.expo) != 3:
            raise PolyError("expo must be a triple")

    @classmethod
    def from_text(cls, text: str, expo=(0, 0, 0)) -> "LaurentFraction":
        return cls(parse_polynomial(text), expo)

    def is_zero(self) -> bool:
        return not self.parts

    def is_homogeneous(self) -> bool:
        return len(self.parts) <= 1

    @property
    def numerator(self) -> TernaryForm:
        """The numerator form; only defined for homogeneous fractions."""
        if len(self.parts) > 1:
            raise PolyError("fraction is not homogeneous")
        return self.parts[0] if self.parts else TernaryForm.zero()

    def numerator_coeffs(self) -> Dict[Monomial, Fraction]:
        out = {}
        for f in self.parts:
            out.update(f.coeffs)
        return out

    @property
    def degree(self) -> int:
        """Total degree of a homogeneous fraction."""
        return self.numerator.degree - sum(self.expo)

    def _over(self, expo) -> List[TernaryForm]:
        # numerator rewritten over the larger denominator expo
        sh = [e - s for e, s in zip(expo, self.expo)]
        return [f.shift(*sh) for f in self.parts]

    def __add__(self, other: "LaurentFraction") -> "LaurentFraction":
        expo = tuple(max(a, b) for a, b in zip(self.expo, other.expo))
        return LaurentFraction(self._over(expo) + other._over(expo), expo)

    def __mul__(self, other: "LaurentFraction") -> "LaurentFraction":
        prods = [f.mul(g) for f in self.parts for g in other.parts]
        return LaurentFraction(prods, tuple(a + b for a, b in zip(self.expo, other.expo)))

    def __eq__(self, other):
        if not isinstance(other, LaurentFraction):
            return NotImplemented
        expo = tuple(max(a, b) for a, b in zip(self.expo, other.expo))
        return LaurentFraction(self._over(expo)).parts == LaurentFraction(other._over(expo)).parts

    def __hash__(self):
        raise TypeError("LaurentFraction is unhashable")

    def __repr__(self):
        return f"LaurentFraction({format_polynomial(self.numerator_coeffs())!r}, {self.expo})"
