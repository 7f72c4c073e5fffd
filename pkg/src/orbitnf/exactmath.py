"""Exact rational arithmetic and polynomials over the rationals.

Scalars are :class:`fractions.Fraction`, which is always kept in lowest
terms with a positive denominator. :class:`PolyQ` is a small dense
univariate polynomial ring on top of it.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

_RAT_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


class ParseError(ValueError):
    """Raised for malformed rational text."""


def rat_parse(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (optional leading minus) into a reduced Fraction."""
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}")
    m = _RAT_RE.match(text)
    if m is None:
        raise ParseError(f"malformed rational: {text!r}")
    num, den = m.group(1), m.group(2)
    if den is None:
        return Fraction(int(num))
    if int(den) == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den))


def as_rational(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return rat_parse(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def rat_to_json(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def rat_from_json(value: Union[str, int]) -> Fraction:
    return as_rational(value)


class PolyQ:
    """Dense polynomial with Fraction coefficients; ``coeffs[k]`` multiplies x**k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def const(cls, c: RationalLike) -> "PolyQ":
        return cls([c])

    @classmethod
    def linear(cls, root: RationalLike) -> "PolyQ":
        """The monic linear factor x - root."""
        return cls([-as_rational(root), 1])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PolyQ):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "PolyQ") -> "PolyQ":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return PolyQ(out)

    def __neg__(self) -> "PolyQ":
        return PolyQ(-c for c in self.coeffs)

    def __sub__(self, other: "PolyQ") -> "PolyQ":
        return self + (-other)

    def __mul__(self, other: Union["PolyQ", RationalLike]) -> "PolyQ":
        if not isinstance(other, PolyQ):
            s = as_rational(other)
            return PolyQ(c * s for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolyQ()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return PolyQ(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PolyQ":
        if k < 0:
            raise ValueError("negative exponent")
        result = PolyQ.const(1)
        for _ in range(k):
            result = result * self
        return result

    def __call__(self, x: RationalLike) -> Fraction:
        return poly_eval(self, x)

    def divmod(self, divisor: "PolyQ") -> tuple["PolyQ", "PolyQ"]:
        """Exact long division: returns (quotient, remainder)."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = divisor.degree
        lead = divisor.leading()
        if len(rem) - 1 < dd:
            return PolyQ(), PolyQ(rem)
        quot = [Fraction(0)] * (len(rem) - dd)
        for k in range(len(rem) - 1 - dd, -1, -1):
            q = rem[k + dd] / lead
            quot[k] = q
            if q:
                for j, c in enumerate(divisor.coeffs):
                    rem[k + j] -= q * c
        return PolyQ(quot), PolyQ(rem[:dd])

    def __repr__(self) -> str:
        return f"PolyQ({poly_to_str(self)})"


def poly_to_str(p: PolyQ, var: str = "x") -> str:
    if p.is_zero():
        return "0"
    terms = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = rat_to_json(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{rat_to_json(mag)}*{mono}"
        terms.append((sign, body))
    first_sign, first_body = terms[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def poly_from_roots(roots: Iterable[tuple[RationalLike, int]]) -> PolyQ:
    """Monic product of (x - root)**multiplicity."""
    result = PolyQ.const(1)
    for root, mult in roots:
        if mult < 1:
            raise ValueError(f"multiplicity must be positive, got {mult}")
        result = result * PolyQ.linear(root) ** mult
    return result


def poly_arith(a: PolyQ, b: PolyQ, op: str) -> PolyQ:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_eval(p: PolyQ, x: RationalLike) -> Fraction:
    x = as_rational(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def poly_eq(a: PolyQ, b: PolyQ) -> bool:
    return a.coeffs == b.coeffs


def prod_linear(values: Sequence[RationalLike]) -> PolyQ:
    """Product of (x - v) over the given values (each taken once)."""
    return poly_from_roots((v, 1) for v in values)
