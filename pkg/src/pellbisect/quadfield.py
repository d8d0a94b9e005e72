"""Exact arithmetic in real quadratic fields Q(sqrt(d)).

Elements are a + b*sqrt(d) with rational coordinates over a fixed square-free
d > 1.  Everything is exact: no floating point anywhere, comparisons against
sqrt(d) go through integer square roots.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt, lcm

Rat = Fraction

_SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


class NotSquareFreeError(ValueError):
    """Field index d must be a square-free integer > 1."""


class FieldMismatchError(ValueError):
    """Operands live in different quadratic fields."""


@lru_cache(maxsize=None)
def is_squarefree(n: int) -> bool:
    if n < 1 or n % 4 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        f += 2
    return True


def check_field_index(d: int) -> int:
    if d <= 1 or not is_squarefree(d):
        raise NotSquareFreeError(f"need a square-free integer > 1, got {d}")
    return d


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def isqrt_ceil(n: int) -> int:
    """Smallest integer >= sqrt(n) for n >= 0."""
    if n <= 0:
        return 0
    r = isqrt(n)
    return r if r * r == n else r + 1


class RingTag(enum.Enum):
    """Subrings of Q(sqrt(d)) used for integrality tests.

    ZSQRTD is Z[sqrt(d)].  OK is the full ring of integers, which adds the
    half-odd coordinates (u + v*sqrt(d))/2, u, v odd, when d = 1 mod 4.
    """

    ZSQRTD = "Z[sqrt(d)]"
    OK = "O_K"


@dataclass(frozen=True)
class QuadElem:
    """a + b*sqrt(d), immutable, with canonical reduced coordinates."""

    d: int
    a: Fraction
    b: Fraction

    def __post_init__(self) -> None:
        check_field_index(self.d)
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @classmethod
    def from_int_pair(cls, d: int, x: int, y: int) -> QuadElem:
        return cls(d, Fraction(x), Fraction(y))

    def _check_same_field(self, other: QuadElem) -> None:
        if self.d != other.d:
            raise FieldMismatchError(f"cannot mix sqrt({self.d}) with sqrt({other.d})")

    def __add__(self, other: QuadElem | int | Fraction) -> QuadElem:
        if isinstance(other, (int, Fraction)):
            return QuadElem(self.d, self.a + other, self.b)
        if isinstance(other, QuadElem):
            self._check_same_field(other)
            return QuadElem(self.d, self.a + other.a, self.b + other.b)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> QuadElem:
        return QuadElem(self.d, -self.a, -self.b)

    def __sub__(self, other: QuadElem | int | Fraction) -> QuadElem:
        return self + (-other if isinstance(other, QuadElem) else -Fraction(other))

    def __rsub__(self, other: int | Fraction) -> QuadElem:
        return (-self) + other

    def __mul__(self, other: QuadElem | int | Fraction) -> QuadElem:
        if isinstance(other, (int, Fraction)):
            return QuadElem(self.d, self.a * other, self.b * other)
        if isinstance(other, QuadElem):
            self._check_same_field(other)
            a1, a2, b1, b2 = self.a, self.b, other.a, other.b
            return QuadElem(self.d, a1 * b1 + self.d * a2 * b2, a1 * b2 + a2 * b1)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other: QuadElem | int | Fraction) -> QuadElem:
        if isinstance(other, (int, Fraction)):
            return QuadElem(self.d, self.a / other, self.b / other)
        if isinstance(other, QuadElem):
            self._check_same_field(other)
            n = other.norm()
            if n == 0:
                raise ZeroDivisionError("division by zero element")
            return self * other.conj() / n
        return NotImplemented

    def __pow__(self, k: int) -> QuadElem:
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadElem(self.d, Fraction(1), Fraction(0))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> QuadElem:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero-norm element has no inverse")
        return self.conj() / n

    def conj(self) -> QuadElem:
        return QuadElem(self.d, self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def int_coords(self) -> tuple[int, int]:
        """(x, y) as plain integers; raises if not in Z[sqrt(d)]."""
        if self.a.denominator != 1 or self.b.denominator != 1:
            raise ValueError(f"{self} does not have integer coordinates")
        return int(self.a), int(self.b)

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"QuadElem(d={self.d}, {self.a}, {self.b})"


def in_ring(alpha: QuadElem, tag: RingTag) -> bool:
    """Membership test for Z[sqrt(d)] or the full integer ring O_K."""
    ad, bd = alpha.a.denominator, alpha.b.denominator
    if ad == 1 and bd == 1:
        return True
    if tag is RingTag.OK and alpha.d % 4 == 1:
        # reduced fractions with denominator 2 have odd numerators already
        return ad == 2 and bd == 2
    return False


def exact_div(alpha: QuadElem, beta: QuadElem, tag: RingTag) -> QuadElem | None:
    """gamma with beta*gamma == alpha and gamma in the given ring, else None."""
    if beta.norm() == 0:
        raise ZeroDivisionError("zero-norm divisor")
    gamma = alpha / beta
    return gamma if in_ring(gamma, tag) else None


def _int_part_str(x: int, y: int, d: int, ascii_mode: bool) -> str:
    root = f"sqrt({d})" if ascii_mode else f"√{d}"
    if y == 0:
        return str(x)
    coeff = "" if abs(y) == 1 else (f"{abs(y)}*" if ascii_mode else str(abs(y)))
    ypart = f"{coeff}{root}"
    if x == 0:
        return ypart if y > 0 else f"-{ypart}"
    sign = "+" if y > 0 else "-"
    return f"{x}{sign}{ypart}"


def render(alpha: QuadElem, ascii_mode: bool = False) -> str:
    """Textual form like "35+6√34" or "(1+√5)/2", reduced."""
    lcd = lcm(alpha.a.denominator, alpha.b.denominator)
    x = int(alpha.a * lcd)
    y = int(alpha.b * lcd)
    core = _int_part_str(x, y, alpha.d, ascii_mode)
    if lcd == 1:
        return core
    return f"({core})/{lcd}"


def render_rat(q: Fraction) -> str:
    """Reduced "p/q" with positive denominator, integers without "/1"."""
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def render_signed_power(sign: int, p: int, l: int, ascii_mode: bool = False) -> str:
    """Signed prime power, e.g. -3^2 (ascii) or -3²."""
    body = str(p) if l == 1 else (f"{p}^{l}" if ascii_mode else f"{p}{str(l).translate(_SUPERSCRIPTS)}")
    return body if sign > 0 else f"-{body}"
