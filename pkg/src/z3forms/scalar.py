"""Exact arithmetic in the field Q(j), the rationals extended by a primitive
cube root of unity.

Elements are stored in the power basis {1, j} as ``a + b*j`` with exact
rational components; the reduction ``j**2 == -1 - j`` is applied on every
product, so no ``j**2`` component is ever stored.  Conjugation is the
Q-linear involution fixing the rationals and sending ``j`` to ``j**2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

RationalLike = Union[int, Fraction]


@dataclass(frozen=True)
class Scalar:
    """An exact element ``a + b*j`` of Q(j) with ``j**2 = -1 - j``."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: Scalar) -> Scalar:
        return Scalar(self.a + other.a, self.b + other.b)

    def __sub__(self, other: Scalar) -> Scalar:
        return Scalar(self.a - other.a, self.b - other.b)

    def __neg__(self) -> Scalar:
        return Scalar(-self.a, -self.b)

    def __mul__(self, other: Scalar) -> Scalar:
        a, b, c, d = self.a, self.b, other.a, other.b
        # (a + b j)(c + d j) = ac + (ad + bc) j + bd j^2, with j^2 = -1 - j.
        return Scalar(a * c - b * d, a * d + b * c - b * d)

    def conjugate(self) -> Scalar:
        """The involution j -> j^2, i.e. a + b*j -> (a - b) - b*j."""
        return Scalar(self.a - self.b, -self.b)

    def norm(self) -> Fraction:
        """Multiplicative norm x * conjugate(x) = a^2 - a*b + b^2 (rational, >= 0)."""
        return self.a * self.a - self.a * self.b + self.b * self.b

    def inverse(self) -> Scalar:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero Scalar")
        n = self.norm()
        c = self.conjugate()
        return Scalar(c.a / n, c.b / n)

    def __truediv__(self, other: Scalar) -> Scalar:
        return self * other.inverse()

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    # -- numeric embedding ----------------------------------------------------

    def embed_complex(self) -> tuple[float, float]:
        """Floating (real, imaginary) pair under j = (-1 + i*sqrt(3)) / 2."""
        re = float(self.a) - float(self.b) / 2.0
        im = float(self.b) * math.sqrt(3.0) / 2.0
        return (re, im)

    # -- rendering -----------------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        if (self.a, self.b) == (0, 1):
            return "j"
        if (self.a, self.b) == (-1, -1):
            return "j^2"
        parts: list[str] = []
        if self.a != 0:
            parts.append(str(self.a))
        if self.b != 0:
            if self.b == 1:
                jpart = "j"
            elif self.b == -1:
                jpart = "-j"
            else:
                jpart = f"{self.b}*j"
            parts.append(jpart)
        text = parts[0]
        for p in parts[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        return text

    def __repr__(self) -> str:
        return f"Scalar({self.a!r}, {self.b!r})"


ZERO = Scalar(0)
ONE = Scalar(1)
J = Scalar(0, 1)
J2 = J * J  # == Scalar(-1, -1)


def scalar(a: RationalLike, b: RationalLike = 0) -> Scalar:
    """Build a Scalar from rational components."""
    return Scalar(Fraction(a), Fraction(b))


def jpow(s: int) -> Scalar:
    """j raised to an integer power (period 3)."""
    s %= 3
    if s == 0:
        return ONE
    return J if s == 1 else J2


# Functional aliases mirroring the operation-style API.

def add(x: Scalar, y: Scalar) -> Scalar:
    return x + y


def mul(x: Scalar, y: Scalar) -> Scalar:
    return x * y


def conjugate(x: Scalar) -> Scalar:
    return x.conjugate()


def embed_complex(x: Scalar) -> tuple[float, float]:
    return x.embed_complex()
