"""Rational angle bisectors of two origin lines with rational slopes.

The slopes a, b of the lines and the slope c of an angle bisector satisfy
(a-c)^2 (b^2+1) = (b-c)^2 (a^2+1); everything here produces or checks exact
rational solutions of that equation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm

from .pellcore import PellContext, factorize
from .quadfield import QuadElem


class NoRationalBisector(ValueError):
    """The bisectors of the given slope pair have irrational slopes."""


class TrivialPairError(ValueError):
    """|a| = |b|: the bisector directions are axis-aligned or degenerate."""


def verify_star(a: Fraction, b: Fraction, c: Fraction) -> bool:
    """Exact check of (a-c)^2 (b^2+1) == (b-c)^2 (a^2+1)."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    return (a - c) ** 2 * (b * b + 1) == (b - c) ** 2 * (a * a + 1)


@dataclass(frozen=True)
class BisectorTriple:
    a: Fraction
    b: Fraction
    c: Fraction
    trivial: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        object.__setattr__(self, "c", Fraction(self.c))
        object.__setattr__(self, "trivial", abs(self.a) == abs(self.b))
        if not verify_star(self.a, self.b, self.c):
            raise ValueError(f"({self.a}, {self.b}, {self.c}) is not a bisector triple")


@dataclass(frozen=True)
class PairClassification:
    """a and b as x-components of rational points on x^2 - d y^2 = -1.

    d = 1 marks the Pythagorean case (a^2+1 and b^2+1 are rational squares).
    """

    d: int
    a2: Fraction
    b2: Fraction


def _squarefree_kernel(n: int) -> int:
    kernel = 1
    for p, e in factorize(n).items():
        if e % 2:
            kernel *= p
    return kernel


def classify_pair(a: Fraction, b: Fraction) -> PairClassification:
    """Find the common d with a^2+1 = d a2^2 and b^2+1 = d b2^2, if any."""
    a, b = Fraction(a), Fraction(b)
    if abs(a) == abs(b):
        raise TrivialPairError("|a| = |b| is a trivial pair")
    den = lcm(a.denominator, b.denominator)
    na = int(a * den) ** 2 + den * den
    nb = int(b * den) ** 2 + den * den
    da, db = _squarefree_kernel(na), _squarefree_kernel(nb)
    if da != db:
        raise NoRationalBisector(
            f"slopes {a} and {b} lead to distinct square-free kernels {da} and {db}"
        )
    a2 = Fraction(isqrt(na // da), den)
    b2 = Fraction(isqrt(nb // da), den)
    assert a * a + 1 == da * a2 * a2 and b * b + 1 == da * b2 * b2
    return PairClassification(d=da, a2=a2, b2=b2)


def from_pell_points(
    a1: Fraction, a2: Fraction, b1: Fraction, b2: Fraction, d: int
) -> tuple[Fraction | None, Fraction | None]:
    """The two candidate bisector slopes from two points on x^2 - d y^2 = -1.

    Each branch is None when its denominator vanishes (b2 = -a2 and b2 = a2
    respectively).
    """
    a1, a2, b1, b2 = (Fraction(v) for v in (a1, a2, b1, b2))
    for x, y in ((a1, a2), (b1, b2)):
        if x * x - d * y * y != -1:
            raise ValueError(f"({x}, {y}) is not on x^2 - {d} y^2 = -1")
    c_plus = (a1 * b2 + a2 * b1) / (b2 + a2) if b2 != -a2 else None
    c_minus = (a1 * b2 - a2 * b1) / (b2 - a2) if b2 != a2 else None
    return c_plus, c_minus


def bisect(a: Fraction, b: Fraction) -> tuple[Fraction, Fraction]:
    """Both bisector slopes (c+, c-) for a non-trivial rational pair.

    The two are perpendicular: c+ * c- = -1 exactly.
    """
    a, b = Fraction(a), Fraction(b)
    cls = classify_pair(a, b)
    c_plus, c_minus = from_pell_points(a, cls.a2, b, cls.b2, cls.d)
    # a2, b2 > 0 and |a| != |b| rule both degenerate denominators out
    assert c_plus is not None and c_minus is not None
    assert c_plus * c_minus == -1
    return c_plus, c_minus


def case1_generate(l: int, m: int, n: int) -> tuple[BisectorTriple, BisectorTriple]:
    """Pythagorean-parametrized triples: both bisector choices for
    a = (l^2-n^2)/2ln, b = (m^2-n^2)/2mn."""
    if abs(l) == abs(m):
        raise ValueError("need |l| != |m|")
    if l * m == n * n:
        raise ValueError("need l*m != n^2")
    if l * m * n == 0:
        raise ValueError("need l, m, n nonzero")
    a = Fraction(l * l - n * n, 2 * l * n)
    b = Fraction(m * m - n * n, 2 * m * n)
    # l + m = 0 would zero this denominator, but |l| != |m| already forbids it
    c_plus = Fraction(l * m - n * n, (l + m) * n)
    c_minus = Fraction(-(l + m) * n, l * m - n * n)
    return BisectorTriple(a, b, c_plus), BisectorTriple(a, b, c_minus)


def case2_generate(
    ctx: PellContext, alpha: QuadElem, beta: QuadElem
) -> tuple[BisectorTriple, BisectorTriple]:
    """Triples from two norm -1 elements of Q(sqrt(d)): a and b are the
    rational parts, the bisector slope is the ratio of sqrt(d)-parts of
    alpha*beta and alpha+beta."""
    if alpha.d != ctx.d or beta.d != ctx.d:
        raise ValueError("alpha and beta must live in the context's field")
    if alpha.norm() != -1 or beta.norm() != -1:
        raise ValueError("need N(alpha) = N(beta) = -1")
    if beta in (alpha, -alpha) or beta in (alpha.conj(), -alpha.conj()):
        raise ValueError("beta = +-alpha or +-alpha' is degenerate")
    a, b = alpha.a, beta.a
    c_plus = (alpha * beta).b / (alpha + beta).b
    c_minus = -1 / c_plus
    return BisectorTriple(a, b, c_plus), BisectorTriple(a, b, c_minus)


def integral_generate(ctx: PellContext, m: int, n: int) -> BisectorTriple:
    """Integral triple (f_(2m-1)(2n-1), f_(2m-1)(2n+1), g_(2m-1)2n / g_(2m-1))
    built from the solutions f_k + g_k sqrt(d) = eps^k; needs an integrally
    solvable negative Pell equation."""
    if not ctx.neg_pell_integral:
        raise ValueError(f"x^2 - {ctx.d} y^2 = -1 has no integral solutions")
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    k = 2 * m - 1
    powers = {i: ctx.eps**i for i in (k * (2 * n - 1), k * (2 * n + 1), k * 2 * n, k)}
    a = powers[k * (2 * n - 1)].a
    b = powers[k * (2 * n + 1)].a
    c = powers[k * 2 * n].b / powers[k].b
    assert c.denominator == 1
    return BisectorTriple(a, b, c)


def integral_generate2(n: int) -> BisectorTriple:
    """The extra d = 2 integral family (f_2n-1, -f_2n+1, f_2n)."""
    if n < 1:
        raise ValueError("n must be positive")
    eps = QuadElem.from_int_pair(2, 1, 1)
    f = {k: (eps**k).a for k in (2 * n - 1, 2 * n, 2 * n + 1)}
    return BisectorTriple(f[2 * n - 1], -f[2 * n + 1], f[2 * n])
