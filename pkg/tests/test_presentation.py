import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wpscoh.fglcore import CoefficientRing, RingElement
from wpscoh.presentation import (
    ThomPresentation,
    build_presentation,
    is_tail_form,
    kawasaki_ring,
    presentation_for,
    rational_form,
    rational_inverse,
    tail,
    thom_scalars,
    verify_divisive_iso,
)
from wpscoh.weights import WeightError, WeightVector, kawasaki_invariants


def divisive_vectors(max_len=5, max_q=5):
    def build(qs):
        c = [1]
        for q in qs:
            c.append(c[-1] * q)
        return WeightVector(tuple(c))
    return st.lists(st.integers(1, max_q), min_size=1, max_size=max_len - 1).map(build)


def z(k):
    return RingElement.var("z", k)


class TestRelations:
    def test_1124_generic(self):
        pres = build_presentation((1, 1, 2, 4), "generic")
        assert [r.render() for r in pres.relations()] == [
            "w1^2*w2*w3", "(w2^2 - 2*w1*w2)*w3", "w3^2 - 2*w2*w3 - aE*w2^2*w3"]

    def test_1113_generic(self):
        pres = build_presentation((1, 1, 1, 3), "generic")
        assert [r.render() for r in pres.relations()] == [
            "w1^2*w2*w3", "(w2^2 - w1*w2)*w3", "w3^2 - 3*w2*w3 - 3*aE*w2^2*w3"]

    def test_integral_relations(self):
        pres = build_presentation((1, 2, 4, 8), "integral")
        assert [r.render() for r in pres.relations()] == [
            "w1^2*w2*w3", "(w2^2 - 2*w1*w2)*w3", "w3^2 - 2*w2*w3"]

    def test_rank_one(self):
        pres = build_presentation((1, 5), "ktheory")
        assert [r.render() for r in pres.relations()] == ["w1^2"]
        assert pres.table[1][1] == {}

    def test_not_divisive(self):
        with pytest.raises(WeightError, match="1,1,60"):
            ThomPresentation((3, 4, 5), CoefficientRing.integral())

    def test_star_routing(self):
        pres, notice = presentation_for((3, 4, 5), "integral")
        assert pres.chi.coords == (1, 1, 60) and "1,1,60" in notice
        with pytest.raises(WeightError):
            presentation_for((3, 4, 5), route_star=False)


class TestNormalForm:
    @pytest.mark.parametrize("n", [2, 3, 4])
    @pytest.mark.parametrize("r", [2, 3, 4, 5, 6])
    def test_wn_squared_ktheory(self, n, r):
        pres = build_presentation((1,) * n + (r,), "ktheory")
        want = {s + 1: z(s - 1) * math.comb(r, s) for s in range(1, min(r, n - 1) + 1)}
        assert pres.power_of_wn(2) == want

    def test_tail_helpers(self):
        assert tail(3, 2) == (0, 1, 1)
        assert is_tail_form((0, 1, 1)) and not is_tail_form((1, 0, 1))

    def test_1124_generic_products(self):
        pres = build_presentation((1, 1, 2, 4), "generic")
        assert pres.render_product(1, 1) == "u1*u1 = 2 u2 + 2*aE u3"
        assert pres.render_product(2, 1) == "u2*u1 = 4 u3"

    def test_1114_ktheory(self):
        pres = build_presentation((1, 1, 1, 4), "ktheory")
        assert pres.table[1][1] == {2: RingElement.const(4), 3: z(1) * 6}


@pytest.mark.parametrize("theory", ["integral", "ktheory", "generic"])
@given(chi=divisive_vectors(max_len=5))
@settings(max_examples=25, deadline=None)
def test_tables_associative_and_homogeneous(theory, chi):
    pres = build_presentation(chi, theory)
    pres.check_homogeneity()
    assert pres.is_associative()
    # u_0 is the unit
    for k in range(pres.n + 1):
        assert pres.table[0][k] == {k: RingElement.const(1)}


@given(chi=divisive_vectors(max_len=5, max_q=6))
@settings(max_examples=60, deadline=None)
def test_thom_matches_kawasaki(chi):
    rep = verify_divisive_iso(chi)
    assert rep.ok
    assert rep.scalars == list(kawasaki_ring(chi).mj)


def test_thom_scalars_1124():
    assert thom_scalars((1, 1, 2, 4)) == [1, 1, 2, 8]


def test_kawasaki_ring_1234():
    kr = kawasaki_ring((1, 2, 3, 4))
    assert kr.v1_power(2) == 6 and kr.v1_power(3) == 72
    assert kr.constant(1, 1) == 6


@given(st.lists(st.integers(1, 40), min_size=2, max_size=5))
@settings(max_examples=80, deadline=None)
def test_kawasaki_powers_match_mj(coords):
    kr = kawasaki_ring(coords)
    inv = kawasaki_invariants(kr.chi)
    for j in range(1, kr.n + 1):
        assert kr.v1_power(j) == inv.mj[j - 1]


@given(chi=divisive_vectors(max_len=5))
@settings(max_examples=30, deadline=None)
def test_rational_form(chi):
    for theory in ("integral", "ktheory"):
        assert rational_form(build_presentation(chi, theory)).ok


def test_rational_inverse():
    inv = rational_inverse(build_presentation((1, 1, 2, 4), "integral"))
    assert inv[3] == {3: Fraction(1, 8)}
