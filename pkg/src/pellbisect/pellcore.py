"""Per-d invariants of Q(sqrt(d)): continued fraction of sqrt(d), fundamental
unit, fundamental |x^2 - d y^2| = 1 solution, splitting tests, class number,
and negative-Pell solvability flags."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from .quadfield import QuadElem, check_field_index, is_square


def is_prime(n: int) -> bool:
    """Deterministic trial division; inputs here are desk-scale."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [p for p in range(2, n + 1) if sieve[p]]


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division, {p: exponent}."""
    if n <= 0:
        raise ValueError("factorize wants a positive integer")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) for odd prime p: 1, -1 or 0."""
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


@dataclass(frozen=True)
class CFExpansion:
    """Periodic continued fraction of sqrt(d): [a0; period repeating]."""

    a0: int
    period: tuple[int, ...]


def continued_fraction_sqrt(d: int) -> CFExpansion:
    """Exact expansion via the integer (P, Q) recurrence."""
    check_field_index(d)
    a0 = isqrt(d)
    p, q = a0, d - a0 * a0
    start = (p, q)
    terms = []
    while True:
        a = (a0 + p) // q
        terms.append(a)
        p = a * q - p
        q = (d - p * p) // q
        if (p, q) == start:
            break
    assert terms[-1] == 2 * a0
    return CFExpansion(a0, tuple(terms))


def _convergent(cf: CFExpansion, k: int) -> tuple[int, int]:
    """k-th convergent numerator/denominator, k=0 being a0 itself."""
    h0, h1 = 1, cf.a0
    k0, k1 = 0, 1
    for i in range(k):
        a = cf.period[i % len(cf.period)]
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
    return h1, k1


@dataclass(frozen=True)
class PellContext:
    """Everything the solvers need to know about a single d."""

    d: int
    disc: int
    eta: QuadElem
    eps: QuadElem
    norm_eta: int
    eta_in_zd: bool
    neg_pell_integral: bool
    neg_pell_rational: bool
    h: int

    @property
    def f1(self) -> int:
        return int(self.eps.a)

    @property
    def g1(self) -> int:
        return int(self.eps.b)


def _half_coordinate_unit(d: int, g1: int) -> QuadElem | None:
    """Smallest unit (u + v*sqrt(d))/2 with odd v, if any exists below eps.

    Only relevant for d = 1 mod 4; scans v ascending so the first hit is the
    fundamental unit of O_K.  Checks u^2 = d v^2 - 4 before + 4 so the smaller
    u wins at equal v (d = 5 admits both).
    """
    for v in range(1, g1 + 1, 2):
        t = d * v * v
        for delta in (-4, 4):
            u2 = t + delta
            if u2 > 0 and is_square(u2):
                return QuadElem(d, Fraction(isqrt(u2), 2), Fraction(v, 2))
    return None


@lru_cache(maxsize=None)
def make_context(d: int) -> PellContext:
    """Build the per-d bundle; memoized, safe for concurrent readers."""
    check_field_index(d)
    cf = continued_fraction_sqrt(d)
    f1, g1 = _convergent(cf, len(cf.period) - 1)
    eps = QuadElem.from_int_pair(d, f1, g1)
    norm_eps = int(eps.norm())
    assert norm_eps in (1, -1)

    eta = eps
    eta_in_zd = True
    if d % 4 == 1:
        half = _half_coordinate_unit(d, g1)
        if half is not None:
            eta = half
            eta_in_zd = False
            assert eta ** 3 == eps
    norm_eta = int(eta.norm())
    assert norm_eta == norm_eps

    neg_pell_integral = norm_eta == -1
    disc = d if d % 4 == 1 else 4 * d
    h_plus = _narrow_class_number(disc)
    if neg_pell_integral:
        h = h_plus
    else:
        assert h_plus % 2 == 0
        h = h_plus // 2
    return PellContext(
        d=d,
        disc=disc,
        eta=eta,
        eps=eps,
        norm_eta=norm_eta,
        eta_in_zd=eta_in_zd,
        neg_pell_integral=neg_pell_integral,
        neg_pell_rational=_neg_pell_rational(d),
        h=h,
    )


def pell_sequence(d: int, n: int) -> tuple[int, int]:
    """(f_n, g_n) with f_n + g_n*sqrt(d) = eps^n; strictly increasing in n."""
    if n <= 0:
        raise ValueError("n must be a positive integer")
    ctx = make_context(d)
    f, g = ctx.f1, ctx.g1
    fn, gn = f, g
    for _ in range(n - 1):
        fn, gn = f * fn + d * g * gn, f * gn + g * fn
    return fn, gn


def splits(d: int, p: int) -> bool:
    """True iff p splits in Q(sqrt(d))."""
    check_field_index(d)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return d % 8 == 1
    if d % p == 0:
        return False
    return legendre(d, p) == 1


def class_number(d: int) -> int:
    """Ideal class number h of Q(sqrt(d))."""
    return make_context(d).h


def neg_pell_rational(d: int) -> bool:
    """True iff x^2 - d y^2 = -1 has a rational solution."""
    check_field_index(d)
    return _neg_pell_rational(d)


def _neg_pell_rational(d: int) -> bool:
    return all(p == 2 or p % 4 == 1 for p in factorize(d))


def _divisors(n: int) -> list[int]:
    small, large = [], []
    f = 1
    while f * f <= n:
        if n % f == 0:
            small.append(f)
            if f != n // f:
                large.append(n // f)
        f += 1
    return small + large[::-1]


def _reduced_forms(D: int) -> set[tuple[int, int, int]]:
    """All reduced primitive indefinite forms (a, b, c) of discriminant D.

    Reduced means 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b,
    decided exactly with integer squares (D is never a perfect square here).
    """
    forms: set[tuple[int, int, int]] = set()
    s = isqrt(D)
    for b in range(1, s + 1):
        if (D - b) % 2:
            continue
        prod = (D - b * b) // 4  # = |a*c|, with a*c < 0
        for a_abs in _divisors(prod):
            t = 2 * a_abs
            if (t + b) ** 2 > D and (t <= b or (t - b) ** 2 < D):
                for a in (a_abs, -a_abs):
                    c = (b * b - D) // (4 * a)
                    if gcd(gcd(a_abs, b), abs(c)) == 1:
                        forms.add((a, b, c))
    return forms


def _rho(form: tuple[int, int, int], D: int, s: int) -> tuple[int, int, int]:
    """Reduction-step neighbour; permutes the reduced forms in cycles."""
    _, b, c = form
    m = 2 * abs(c)
    r = s - ((s + b) % m)
    return (c, r, (r * r - D) // (4 * c))


def _narrow_class_number(D: int) -> int:
    """Number of rho-cycles of reduced forms = narrow class number h+."""
    forms = _reduced_forms(D)
    s = isqrt(D)
    cycles = 0
    while forms:
        cycles += 1
        start = min(forms)
        f = start
        while True:
            forms.discard(f)
            f = _rho(f, D, s)
            if f == start:
                break
    return cycles
