"""Existence, generation and decomposition of strictly primitive integral
solutions of |x^2 - d y^2| = z, plus the scaled decomposition for square
moduli.

A solution is built from three kinds of exact factors: a unit power eta^n,
per-prime fundamental elements xi_p (or their conjugates) for spectrum
primes, and, when the prime parts left over after peeling xi powers only
become principal jointly, a single residual "core" element found by a
bounded window search.  The core also covers the forced cofactor-2 shapes
at p = 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from .pellcore import PellContext, factorize, make_context
from .quadfield import QuadElem, RingTag, exact_div, in_ring, is_square, render_rat
from .spectrum import Spectrum, XiEntry, xi


@dataclass(frozen=True)
class XiPower:
    """One xi_p^exp factor; conj selects the conjugate element.

    For p = 2 with d = 1 mod 8 the base element is xi_2 / 2 (the half
    coordinate generator) and the mandatory cofactor 2 is carried by the
    representation's m flag.
    """

    p: int
    exp: int
    conj: bool = False


@dataclass(frozen=True)
class CoreFactor:
    """Residual factor for prime parts that are only jointly principal."""

    modulus: int
    x: int
    y: int
    conj: bool = False


@dataclass(frozen=True)
class Representation:
    d: int
    sign: int = 1
    m: int = 0
    n: int = 0
    terms: tuple[XiPower, ...] = ()
    core: CoreFactor | None = None
    scale: Fraction = Fraction(1)

    def term(self, p: int) -> XiPower | None:
        for t in self.terms:
            if t.p == p:
                return t
        return None

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "sign": self.sign,
            "m": self.m,
            "n": self.n,
            "terms": [{"p": t.p, "exp": t.exp, "conj": t.conj} for t in self.terms],
            "core": None
            if self.core is None
            else {
                "modulus": self.core.modulus,
                "x": self.core.x,
                "y": self.core.y,
                "conj": self.core.conj,
            },
            "scale": render_rat(self.scale),
        }


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    problems: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class ExistenceVerdict:
    exists: bool
    case_tags: dict[int, str] = field(default_factory=dict)
    witness_exponents: dict[int, int] = field(default_factory=dict)
    core_modulus: int = 1
    core_witness: tuple[int, int, int] | None = None


def _entry_base(ctx: PellContext, entry: XiEntry, conj: bool) -> QuadElem:
    base = entry.elem
    if entry.p == 2 and ctx.d % 8 == 1:
        base = base / 2
    return base.conj() if conj else base


def evaluate_representation(rep: Representation) -> QuadElem:
    """Exact product sign * 2^m * eta^n * prod(xi powers) * core * scale."""
    ctx = make_context(rep.d)
    out = ctx.eta**rep.n * (2**rep.m) * rep.sign
    for t in rep.terms:
        entry = xi(ctx, t.p)
        if entry is None:
            raise ValueError(f"prime {t.p} is not in the spectrum of d={rep.d}")
        out = out * _entry_base(ctx, entry, t.conj) ** t.exp
    if rep.core is not None:
        core = QuadElem.from_int_pair(rep.d, rep.core.x, rep.core.y)
        out = out * (core.conj() if rep.core.conj else core)
    return out * rep.scale


def solution_y_bound(ctx: PellContext, modulus: int) -> int:
    """Window guaranteed to contain a representative of every solution class."""
    d = ctx.d
    return (ctx.f1 + ctx.g1 * (isqrt(d) + 1)) * (isqrt(max(modulus - 1, 0)) + 1)


@lru_cache(maxsize=None)
def _fundamental_window(d: int, modulus: int) -> tuple[tuple[int, int, int], ...]:
    """All strictly primitive (x, y, sign) with |x^2-dy^2| = modulus and y
    inside the class window; empty means no strictly primitive solutions."""
    ctx = make_context(d)
    hits = []
    for y in range(1, solution_y_bound(ctx, modulus) + 1):
        t = d * y * y
        for sign in (1, -1):
            x2 = t + sign * modulus
            if x2 > 0 and is_square(x2):
                x = isqrt(x2)
                if x > 0 and gcd(x, d * y) == 1:
                    hits.append((x, y, sign))
    return tuple(sorted(hits, key=lambda h: (h[1], h[0], -h[2])))


def _case_tag(ctx: PellContext, spec: Spectrum, p: int) -> str:
    in_spectrum = spec.get(p) is not None
    if ctx.d % 8 == 5 and ctx.eta_in_zd:
        return "B1" if (p != 2 and in_spectrum) else "B2"
    if p == 2:
        if in_spectrum:
            return "A1" if ctx.eta_in_zd else "A1'"
        return "A2" if ctx.eta_in_zd else "A2'"
    return "A1" if in_spectrum else "A2"


def _two_adic_admissible(ctx: PellContext, e: int) -> bool:
    """Proven congruence constraints on ord_2(z) for strictly primitive
    solutions; everything else is decided by the window search."""
    if e == 0:
        return True
    d = ctx.d
    if d % 2 == 0:
        return False
    if d % 4 == 3:
        return e <= 1
    if d % 8 == 5:
        return e == 2
    return e >= 3  # d = 1 mod 8


@dataclass(frozen=True)
class _PeelPlan:
    m: int
    xi_exponents: dict[int, int]
    core_modulus: int


def _peel_plan(ctx: PellContext, spec: Spectrum, z: int) -> _PeelPlan | None:
    """Split z into xi-peelable prime powers and the residual core modulus.

    Returns None when a proven congruence condition already rules z out.
    """
    m = 0
    exponents: dict[int, int] = {}
    core = 1
    for p, e in sorted(factorize(z).items()):
        entry = spec.get(p)
        if p == 2:
            if not _two_adic_admissible(ctx, e):
                return None
            if e == 0:
                continue
            if entry is None:
                core *= 2**e
            elif ctx.d % 8 == 5:
                exponents[p] = 1  # e == 2 and l_2 == 2 here
            else:
                h_rel = entry.l - 2
                if (e - 2) % h_rel == 0:
                    m = 1
                    exponents[p] = (e - 2) // h_rel
                else:
                    core *= 2**e
        else:
            if entry is None:
                return None  # inert or ramified odd prime cannot divide z
            q, r = divmod(e, entry.l)
            if q:
                exponents[p] = q
            if r:
                core *= p**r
    return _PeelPlan(m=m, xi_exponents=exponents, core_modulus=core)


def strict_exists(ctx: PellContext, spec: Spectrum, z: int) -> ExistenceVerdict:
    """Decide strictly primitive solvability of |x^2 - d y^2| = z.

    Per-prime congruence conditions run first; prime parts that resist xi
    peeling are then settled exactly by the bounded class-window search.
    """
    if z <= 1:
        raise ValueError("z must be an integer > 1")
    tags = {p: _case_tag(ctx, spec, p) for p in factorize(z)}
    plan = _peel_plan(ctx, spec, z)
    if plan is None:
        return ExistenceVerdict(exists=False, case_tags=tags)
    witness = None
    if plan.core_modulus > 1:
        window = _fundamental_window(ctx.d, plan.core_modulus)
        if not window:
            return ExistenceVerdict(
                exists=False, case_tags=tags, core_modulus=plan.core_modulus
            )
        witness = window[0]
    return ExistenceVerdict(
        exists=True,
        case_tags=tags,
        witness_exponents=plan.xi_exponents,
        core_modulus=plan.core_modulus,
        core_witness=witness,
    )


def _normalize(elem: QuadElem) -> tuple[int, int]:
    x, y = elem.int_coords()
    if y < 0:
        x, y = -x, -y
    return x, y


def generate_strict(ctx, spec: Spectrum, z: int, n_range) -> list[tuple[int, int]]:
    """All strictly primitive solutions reachable with unit exponent in
    n_range, normalized to y >= 0, deduplicated and sorted by (y, x)."""
    verdict = strict_exists(ctx, spec, z)
    if not verdict.exists:
        raise ValueError(f"|x^2-{ctx.d}y^2| = {z} has no strictly primitive solutions")
    plan = _peel_plan(ctx, spec, z)
    assert plan is not None

    factor_choices: list[list[QuadElem]] = []
    for p, e in sorted(plan.xi_exponents.items()):
        entry = spec.get(p)
        assert entry is not None
        base = _entry_base(ctx, entry, False)
        factor_choices.append([base**e, (base.conj()) ** e])
    if plan.core_modulus > 1:
        cores = []
        for cx, cy, _ in _fundamental_window(ctx.d, plan.core_modulus):
            cores.append(QuadElem.from_int_pair(ctx.d, cx, cy))
            cores.append(QuadElem.from_int_pair(ctx.d, cx, -cy))
        factor_choices.append(cores)

    stems = [QuadElem(ctx.d, Fraction(2**plan.m), Fraction(0))]
    for choices in factor_choices:
        stems = [s * c for s in stems for c in choices]

    results: set[tuple[int, int]] = set()
    for n in n_range:
        unit = ctx.eta**n
        for stem in stems:
            for sign in (1, -1):
                cand = stem * unit * sign
                if not in_ring(cand, RingTag.ZSQRTD):
                    continue
                x, y = cand.int_coords()
                if y == 0 or gcd(x, ctx.d * y) != 1:
                    continue
                assert abs(x * x - ctx.d * y * y) == z
                results.add(_normalize(cand))
    return sorted(results, key=lambda xy: (xy[1], xy[0]))


def _unit_exponent(ctx: PellContext, u: QuadElem) -> tuple[int, int]:
    """Write a unit u of O_K as sign * eta^n by exact division, no logs."""
    if abs(u.norm()) != 1:
        raise ValueError(f"residual {u} is not a unit; inconsistent decomposition")
    n = 0
    metric = max(abs(u.a), abs(u.b))
    for _ in range(10_000):
        if u.b == 0:
            return n, int(u.a)
        down, up = u / ctx.eta, u * ctx.eta
        if max(abs(down.a), abs(down.b)) <= max(abs(up.a), abs(up.b)):
            u, n = down, n + 1
        else:
            u, n = up, n - 1
        new_metric = max(abs(u.a), abs(u.b))
        assert u.b == 0 or new_metric < metric, "unit recovery failed to shrink"
        metric = new_metric
    raise AssertionError("unit recovery did not terminate")


def decompose_strict(ctx, spec: Spectrum, x: int, y: int) -> Representation:
    """Canonical factorization of a strictly primitive solution.

    Peels xi powers per prime (preferring the unconjugated element), then the
    residual core, and finally identifies the leftover unit +-eta^n.
    """
    d = ctx.d
    value = x * x - d * y * y
    z = abs(value)
    if z <= 1:
        raise ValueError("need |x^2 - d y^2| > 1")
    if gcd(x, d * y) != 1:
        raise ValueError(f"({x}, {y}) is not strictly primitive for d={d}")
    plan = _peel_plan(ctx, spec, z)
    assert plan is not None, "a live solution contradicts the congruence prefilter"

    alpha = QuadElem.from_int_pair(d, x, y)
    terms: list[XiPower] = []
    # peel odd primes first: the quotient only stays integral until the
    # cofactor 2 hidden in the p = 2 factor comes off
    for p, e in sorted(plan.xi_exponents.items(), key=lambda pe: (pe[0] == 2, pe[0])):
        entry = spec.get(p)
        assert entry is not None
        for conj in (False, True):
            divisor = (2**plan.m if p == 2 and d % 8 == 1 else 1) * _entry_base(
                ctx, entry, conj
            ) ** e
            quotient = exact_div(alpha, divisor, RingTag.OK)
            if quotient is not None:
                alpha = quotient
                terms.append(XiPower(p=p, exp=e, conj=conj))
                break
        else:
            raise AssertionError(f"neither conjugate of xi_{p}^{e} divides the input")
    terms.sort(key=lambda t: t.p)

    core: CoreFactor | None = None
    if plan.core_modulus > 1:
        for cx, cy, _ in _fundamental_window(d, plan.core_modulus):
            rho = QuadElem.from_int_pair(d, cx, cy)
            for conj in (False, True):
                quotient = exact_div(alpha, rho.conj() if conj else rho, RingTag.OK)
                if quotient is not None and abs(quotient.norm()) == 1:
                    alpha = quotient
                    core = CoreFactor(modulus=plan.core_modulus, x=cx, y=cy, conj=conj)
                    break
            if core is not None:
                break
        else:
            raise AssertionError("no window element divides the residual core")

    n, sign = _unit_exponent(ctx, alpha)
    rep = Representation(d=d, sign=sign, m=plan.m, n=n, terms=tuple(terms), core=core)
    assert evaluate_representation(rep) == QuadElem.from_int_pair(d, x, y)
    return rep


def decompose_square(ctx, spec: Spectrum, x: int, y: int) -> Representation:
    """Factorization of any integral solution of |x^2 - d y^2| = z^2: the
    gcd cofactor becomes the scale, the strictly primitive core is peeled."""
    value = x * x - ctx.d * y * y
    z2 = abs(value)
    z = isqrt(z2)
    if z2 <= 1 or z * z != z2:
        raise ValueError("|x^2 - d y^2| must be a perfect square > 1")
    g = gcd(x, y)
    cx, cy = x // g, y // g
    if z == g:
        n, sign = _unit_exponent(ctx, QuadElem.from_int_pair(ctx.d, cx, cy))
        rep = Representation(d=ctx.d, sign=sign, n=n, scale=Fraction(g))
    else:
        rep = replace(decompose_strict(ctx, spec, cx, cy), scale=Fraction(g))
    assert evaluate_representation(rep) == QuadElem.from_int_pair(ctx.d, x, y)
    return rep


def _strict_core_modulus(ctx: PellContext, rep: Representation) -> int:
    """|norm| of the representation without its scale factor."""
    z = 4**rep.m
    for t in rep.terms:
        entry = xi(ctx, t.p)
        if entry is None:
            raise ValueError(f"prime {t.p} is not in the spectrum of d={rep.d}")
        l = entry.l - 2 if (t.p == 2 and ctx.d % 8 == 1) else entry.l
        z *= t.p ** (l * t.exp)
    if rep.core is not None:
        z *= rep.core.modulus
    return z


def validate_representation(rep: Representation) -> ValidationReport:
    """Structural checks: spectrum membership, the unit-exponent congruence
    for odd moduli, and the parity/cap conditions when a scale is present."""
    ctx = make_context(rep.d)
    problems: list[str] = []
    if rep.sign not in (1, -1):
        problems.append(f"sign must be +-1, got {rep.sign}")
    if rep.m not in (0, 1):
        problems.append(f"m must be 0 or 1, got {rep.m}")
    membership_ok = True
    for t in rep.terms:
        if t.exp < 0:
            problems.append(f"negative exponent at p={t.p}")
        if xi(ctx, t.p) is None:
            problems.append(f"p={t.p} is outside the spectrum of d={rep.d}")
            membership_ok = False
    if not membership_ok:
        return ValidationReport(False, tuple(problems))

    z_core = _strict_core_modulus(ctx, rep)
    if rep.scale.denominator == 1:
        # integral context: odd modulus with a half-coordinate unit forces
        # the unit exponent into the cube subgroup
        if z_core % 2 == 1 and not ctx.eta_in_zd and rep.n % 3 != 0:
            problems.append("unit exponent must be divisible by 3 for odd moduli")
        if rep.scale != 1:
            if not is_square(z_core):
                problems.append("scaled representations need a square core modulus")
            else:
                z_total = isqrt(z_core) * int(rep.scale)
                for t in rep.terms:
                    entry = xi(ctx, t.p)
                    assert entry is not None
                    e_total = 0
                    zt = z_total
                    while zt % t.p == 0:
                        e_total += 1
                        zt //= t.p
                    if t.p == 2 and not ctx.eta_in_zd and rep.n % 3 != 0:
                        cap = e_total - 1
                    elif t.p == 2 and ctx.d % 8 == 1:
                        cap = max(2 * e_total - 2, 0)
                    else:
                        cap = 2 * e_total // entry.l
                    if t.exp > cap:
                        problems.append(f"exponent at p={t.p} exceeds its cap {cap}")
    else:
        # rational context: the scale must exactly cancel the core modulus
        if not is_square(z_core) or rep.scale != Fraction(1, isqrt(z_core)):
            problems.append("scale must be the inverse square root of the core modulus")
    return ValidationReport(not problems, tuple(problems))
