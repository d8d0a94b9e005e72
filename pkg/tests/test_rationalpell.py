from fractions import Fraction as F

import pytest

from pellbisect.oracle import SearchBox, brute_rational_pell
from pellbisect.pellcore import make_context
from pellbisect.rationalpell import RationalPellPoint, decompose_rational, generate_rational
from pellbisect.solver import Representation, XiPower
from pellbisect.spectrum import spectrum


def ctx_spec(d, pmax=97):
    ctx = make_context(d)
    return ctx, spectrum(ctx, pmax)


def test_generate_examples():
    ctx, spec = ctx_spec(2)
    pt = generate_rational(ctx, spec, Representation(d=2, n=-1, terms=(XiPower(7, 2),)))
    assert (pt.x, pt.y, pt.r) == (F(1, 7), F(5, 7), 1)

    ctx, spec = ctx_spec(34)
    pt = generate_rational(ctx, spec, Representation(d=34, terms=(XiPower(3, 1),)))
    assert (pt.x, pt.y, pt.r) == (F(5, 3), F(1, 3), 1)

    ctx, spec = ctx_spec(2)
    pt = generate_rational(ctx, spec, Representation(d=2, terms=(XiPower(7, 2),)))
    assert (pt.x, pt.y, pt.r) == (F(11, 7), F(6, 7), 0)


def test_generate_rejects_odd_parity():
    ctx, spec = ctx_spec(34)
    with pytest.raises(ValueError, match="parity"):
        generate_rational(ctx, spec, Representation(d=34, terms=(XiPower(47, 1),)))


def test_point_invariant_enforced():
    with pytest.raises(ValueError):
        RationalPellPoint(2, F(1, 2), F(1, 2), 1)


def test_decompose_examples():
    ctx, spec = ctx_spec(34)
    rep = decompose_rational(ctx, spec, RationalPellPoint(34, F(5, 3), F(1, 3), 1))
    assert rep.n == 0 and rep.terms == (XiPower(3, 1, False),)
    assert rep.scale == F(1, 3)

    ctx, spec = ctx_spec(2)
    rep = decompose_rational(ctx, spec, RationalPellPoint(2, F(1, 7), F(5, 7), 1))
    assert rep.n == -1 and rep.terms == (XiPower(7, 2, False),)

    rep = decompose_rational(ctx, spec, RationalPellPoint(2, F(1), F(0), 0))
    assert rep.n == 0 and rep.terms == () and rep.scale == 1


def test_decompose_integral_point_is_a_unit_power():
    ctx, spec = ctx_spec(5)
    rep = decompose_rational(ctx, spec, RationalPellPoint(5, F(2), F(1), 1))
    assert rep.terms == () and rep.n == 3  # 2 + sqrt(5) = eta^3


def test_parity_law():
    """r flips with the unit exponent exactly when the negative Pell equation
    is integrally solvable, and with one extra negative-norm factor pair
    otherwise; bumping a term exponent by 2 never changes r."""
    ctx, spec = ctx_spec(2)
    base = Representation(d=2, n=0, terms=(XiPower(7, 2),))
    assert generate_rational(ctx, spec, base).r == 0
    assert generate_rational(ctx, spec, Representation(d=2, n=1, terms=(XiPower(7, 2),))).r == 1
    assert generate_rational(ctx, spec, Representation(d=2, n=0, terms=(XiPower(7, 4),))).r == 0

    ctx, spec = ctx_spec(34)
    assert generate_rational(ctx, spec, Representation(d=34, terms=(XiPower(3, 1),))).r == 1
    assert generate_rational(ctx, spec, Representation(d=34, terms=(XiPower(3, 3),))).r == 1
    assert generate_rational(
        ctx, spec, Representation(d=34, terms=(XiPower(3, 1), XiPower(5, 1)))
    ).r == 0
    assert generate_rational(
        ctx, spec, Representation(d=34, n=1, terms=(XiPower(3, 1),))
    ).r == 1  # unit has norm +1 here, so n cannot flip r


@pytest.mark.parametrize("d", (2, 5, 13, 34))
def test_desk_scale_roundtrip(d):
    ctx, spec = ctx_spec(d)
    box = SearchBox(y_bound=400, denominator_bound=12)
    for x, y in brute_rational_pell(d, 1, box):
        pt = RationalPellPoint(d, x, y, 1)
        rep = decompose_rational(ctx, spec, pt)
        back = generate_rational(ctx, spec, rep)
        assert (back.x, back.y, back.r) == (x, y, 1)


def test_no_rational_negative_points_when_forbidden():
    # 3 = 3 mod 4: the negative equation has no rational points at all
    assert brute_rational_pell(3, 1, SearchBox(y_bound=200, denominator_bound=25)) == []


@pytest.mark.parametrize("d", (3, 7, 15, 21))
def test_generator_cannot_reach_r1_when_forbidden(d):
    """Without a rational negative-Pell point, every negative-norm spectrum
    entry has odd level, so the evenness constraint forces r = 0."""
    ctx, spec = ctx_spec(d, pmax=31)
    for e in spec.entries:
        if e.norm_sign == -1:
            assert e.l % 2 == 1
        exp = 2 if e.l % 2 else 1
        pt = generate_rational(
            ctx, spec, Representation(d=d, terms=(XiPower(e.p, exp),))
        )
        assert pt.r == 0
