import math

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from wpscoh.fglcore import (
    CoefficientRing,
    RingElement,
    TruncatedSeries,
    fgl_for,
    multiplicative_r_series_closed,
    r_series,
    r_series_iterated,
    render,
    render_series,
    substitute,
    theory_ring,
    var_name,
)

u, v, z = sp.symbols("u v z")


def to_sympy(x: RingElement):
    out = 0
    for mono, c in x.terms.items():
        term = sp.Integer(c)
        for name, e in mono:
            sym = z if name == "z" else sp.Symbol(name.replace(":", "_"))
            term *= sym**e
        out += term
    return sp.expand(out)


def series_to_sympy(f: TruncatedSeries):
    return sp.expand(sum(to_sympy(c) * u**e[0] for e, c in f.terms.items()))


def sympy_law(ring: CoefficientRing):
    F = u + v
    if ring.variant == "ktheory":
        F += z * u * v
    elif ring.variant == "generic":
        for s in range(2, ring.bound + 1):
            for i in range(1, s):
                F += sp.Symbol(var_name(i, s - i).replace(":", "_")) * u**i * v**(s - i)
    return F


def sympy_r_series(ring, r, prec):
    """Left recursion F(u, [r-1](u)) expanded and truncated by sympy."""
    F = sympy_law(ring)
    cur = sp.Integer(0)
    for _ in range(r):
        cur = sp.expand(F.subs({v: cur}, simultaneous=True))
        cur = sum(cur.coeff(u, k) * u**k for k in range(1, prec + 1))
    return sp.expand(cur)


RINGS = [CoefficientRing.integral(), CoefficientRing.ktheory(), CoefficientRing.generic(3),
         CoefficientRing.generic(4)]


@pytest.mark.parametrize("ring", RINGS, ids=lambda r: r.label())
@pytest.mark.parametrize("r", [0, 1, 2, 3, 5])
def test_r_series_matches_sympy(ring, r):
    law = fgl_for(ring)
    ours = r_series(law, r, 4)
    assert series_to_sympy(ours) == sympy_r_series(ring, r, 4)


def test_generic_three_series():
    law = fgl_for(CoefficientRing.generic(3))
    assert render_series(r_series(law, 3, 4)) == \
        "3*u + 3*aE*u^2 + (8*a21 + aE^2)*u^3 + 7*aE*a21*u^4"


def test_two_series_low_order():
    # [r](u) = r u + C(r,2) a u^2 + ... for a law u + v + a u v + ...
    for r in range(1, 7):
        f = r_series(fgl_for(CoefficientRing.generic(2)), r, 2)
        assert render(f.coefficient(2)) == (f"{math.comb(r, 2)}*aE" if r > 2 else
                                           ("aE" if r == 2 else "0"))


@given(st.integers(0, 40), st.integers(1, 6))
@settings(max_examples=60, deadline=None)
def test_multiplicative_closed_form(r, prec):
    law = fgl_for(CoefficientRing.ktheory())
    assert r_series(law, r, prec) == multiplicative_r_series_closed(r, prec)


@given(st.integers(1, 8), st.integers(1, 8))
@settings(max_examples=40, deadline=None)
def test_homomorphism(a, b):
    for ring in (CoefficientRing.integral(), CoefficientRing.ktheory()):
        law = fgl_for(ring)
        assert law.evaluate(r_series(law, a, 5), r_series(law, b, 5), 5) == r_series(law, a + b, 5)


def test_doubling_agrees_with_recursion():
    for ring in (CoefficientRing.integral(), CoefficientRing.ktheory()):
        law = fgl_for(ring)
        for r in range(20):
            assert r_series(law, r, 5) == r_series_iterated(law, r, 5)


def test_additive_is_linear():
    law = fgl_for(CoefficientRing.integral())
    assert render_series(r_series(law, 7, 5)) == "7*u"


class TestRingElement:
    def test_arithmetic(self):
        zz = RingElement.var("z")
        x = zz * 3 + 2
        assert (x * x - (zz**2 * 9 + zz * 12 + 4)).is_zero()
        assert x.exact_div(1) == x
        with pytest.raises(ArithmeticError):
            (zz * 3).exact_div(2)

    def test_laurent(self):
        zz = RingElement.var("z")
        inv = RingElement.var("z", -1)
        assert zz * inv == RingElement.const(1)
        assert inv.degree() == -2

    def test_degrees(self):
        a = RingElement.var(var_name(2, 1))
        assert a.degree() == 4
        assert RingElement.var(var_name(1, 1)).degree() == 2


class TestSeries:
    def test_grading_enforced(self):
        with pytest.raises(ValueError):
            TruncatedSeries(1, {(2,): RingElement.const(1)}, None, 2)

    def test_substitute(self):
        law = fgl_for(CoefficientRing.ktheory())
        two, three = r_series(law, 2, 5), r_series(law, 3, 5)
        assert substitute(two, three, 5) == r_series(law, 6, 5)

    def test_truncation(self):
        f = TruncatedSeries.variable(3)
        assert (f * f * f * f).is_zero()


def test_theory_ring_default_bound():
    assert theory_ring("generic", 3).bound == 6
    assert theory_ring("generic", 3, 4).bound == 4
    assert theory_ring("ktheory", 3).variant == "ktheory"
