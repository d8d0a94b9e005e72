"""The prime spectrum of |x^2 - d y^2| = p^l: which primes admit strictly
primitive solutions of a prime-power modulus, the minimal exponent l_p, and
the fundamental element xi_p for each of them."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

from .pellcore import PellContext, is_prime, make_context, primes_upto, splits
from .quadfield import QuadElem, is_square


@dataclass(frozen=True)
class XiEntry:
    """Fundamental solution data for one prime: |x^2 - d y^2| = p^l.

    The stored (x, y) is the positive solution with minimal y under the sign
    convention: when x^2 - d y^2 = -1 is integrally solvable only the
    + equation competes, otherwise both signs do.
    """

    d: int
    p: int
    l: int
    x: int
    y: int
    norm_sign: int

    def __post_init__(self) -> None:
        assert self.x > 0 and self.y > 0
        assert self.x * self.x - self.d * self.y * self.y == self.norm_sign * self.p**self.l
        assert gcd(self.x, self.d * self.y) == 1

    @property
    def elem(self) -> QuadElem:
        return QuadElem.from_int_pair(self.d, self.x, self.y)


@dataclass(frozen=True)
class Spectrum:
    """Entries for all spectrum primes up to pmax, in increasing order."""

    d: int
    pmax: int
    entries: tuple[XiEntry, ...]

    def get(self, p: int) -> XiEntry | None:
        if p > self.pmax:
            raise ValueError(f"spectrum only covers primes <= {self.pmax}, asked for {p}")
        for e in self.entries:
            if e.p == p:
                return e
        return None

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(e.p for e in self.entries)

    @property
    def s_minus(self) -> frozenset[int]:
        return frozenset(e.p for e in self.entries if e.norm_sign == -1)


def in_s(ctx: PellContext, p: int) -> bool:
    """Closed-form membership: the split primes, plus 2 when d = 5 mod 8 and
    the fundamental unit has half-integer coordinates."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2 and ctx.d % 8 == 5 and not ctx.eta_in_zd:
        return True
    return splits(ctx.d, p)


def _search_fundamental(ctx: PellContext, p: int, l: int) -> tuple[int, int, int] | None:
    """Minimal-y strictly primitive solution of |x^2-dy^2| = p^l, or None.

    y is bounded by (f1 + g1*ceil(sqrt(d))) * p^ceil(l/2): every solution
    class has a representative within one eps-multiplication of its minimal
    member, and that window is comfortably inside this bound.
    """
    d = ctx.d
    target = p**l
    y_bound = (ctx.f1 + ctx.g1 * (isqrt(d) + 1)) * p ** ((l + 1) // 2)
    signs = (1,) if ctx.neg_pell_integral else (1, -1)
    for y in range(1, y_bound + 1):
        t = d * y * y
        for sign in signs:
            x2 = t + sign * target
            if x2 > 0 and is_square(x2):
                x = isqrt(x2)
                if x > 0 and gcd(x, d * y) == 1:
                    return x, y, sign
    return None


@lru_cache(maxsize=None)
def _xi_cached(d: int, p: int) -> XiEntry | None:
    ctx = make_context(d)
    if not in_s(ctx, p):
        return None
    if p == 2 and d % 8 == 5:
        # half-coordinate unit exists here, which pins l_2 = 2
        levels: list[int] = [2]
    else:
        # the class-structure bound: 3h covers the index-3 unit subgroup for
        # d = 1 mod 4, and +2 covers the forced cofactor 2 at p = 2
        levels = list(range(1, 3 * ctx.h + 3))
    for l in levels:
        hit = _search_fundamental(ctx, p, l)
        if hit is not None:
            x, y, sign = hit
            return XiEntry(d=d, p=p, l=l, x=x, y=y, norm_sign=sign)
    raise AssertionError(f"no fundamental element found for d={d}, p={p} within level bound")


def xi(ctx: PellContext, p: int) -> XiEntry | None:
    """Fundamental element for p, or None when p is outside the spectrum."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return _xi_cached(ctx.d, p)


def spectrum(ctx: PellContext, pmax: int) -> Spectrum:
    """All spectrum entries with p <= pmax, ordered by p."""
    if pmax < 2:
        raise ValueError("pmax must be at least 2")
    entries = []
    for p in primes_upto(pmax):
        entry = _xi_cached(ctx.d, p)
        if entry is not None:
            entries.append(entry)
    return Spectrum(d=ctx.d, pmax=pmax, entries=tuple(entries))
