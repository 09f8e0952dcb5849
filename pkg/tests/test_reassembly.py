import math

import pytest
from hypothesis import given, settings, strategies as st

from wpscoh import lattice
from wpscoh.reassembly import (
    UnsupportedShape,
    assemble,
    colimit_check,
    index_multiplicativity,
    integral_images,
    intersect,
    k_images,
    primary_parts,
    r_series_t,
    relation_holds,
    ring_map_failures,
)
from wpscoh.weights import WeightVector, kawasaki_invariants, normalise

small_primes = st.sampled_from([2, 3, 5, 7])


@st.composite
def p_primary(draw, max_n=4, max_k=3):
    p = draw(small_primes)
    n = draw(st.integers(1, max_n))
    ks = sorted(draw(st.lists(st.integers(0, max_k), min_size=n - 1, max_size=n - 1)))
    return WeightVector((1, 1) + tuple(p**k for k in ks))


@st.composite
def coprime_weights(draw, max_n=3):
    n = draw(st.integers(1, max_n))
    pool = [2, 3, 4, 5, 7, 8, 9, 11, 13, 25, 27]
    chosen = []
    for _ in range(n + 1):
        c = draw(st.sampled_from(pool + [1]))
        if c != 1 and any(math.gcd(c, d) > 1 for d in chosen):
            c = 1
        chosen.append(c)
    return WeightVector(tuple(chosen))


class Test345:
    def test_integral(self):
        ring = assemble((3, 4, 5), "integral")
        assert ring.generators == [[60], [60]]
        assert ring.relations[2] == [(60, 2)]

    def test_ktheory(self):
        ring = assemble((3, 4, 5), "ktheory")
        assert ring.lattice.basis(1) == [[60, 30], [0, 60]]
        assert ring.lattice.contains(1, [60, 90])
        assert ring.lattice.contains(1, [0, 60])
        # leading coefficient 60 at t, but 60 t alone is not a class of P(3,4,5)
        assert not ring.lattice.contains(1, [60, 0])
        assert ring.lattice.contains(2, [60])
        assert ring.relations[2] == [(60, 2)]

    def test_relation_in_other_basis(self):
        # y1 = 60 t + 90 t^2 is another generator of the same degree-2 lattice
        assert relation_holds((3, 4, 5), "ktheory", [0, 60, 90], [0, 0, 60], 2, 60)
        assert relation_holds((3, 4, 5), "ktheory", [0, 60, 30], [0, 0, 60], 2, 60)
        assert not relation_holds((3, 4, 5), "ktheory", [0, 60, 91], [0, 0, 60], 2, 60)

    def test_render(self):
        text = assemble((3, 4, 5), "ktheory").render()
        assert "y1 = 60 x + 30 z x^2" in text and "y1^2 = 60 y2" in text


def test_r_series_t():
    assert r_series_t(4, 3) == [0, 4, 6, 4]


@given(p_primary())
@settings(max_examples=60, deadline=None)
def test_k_images_form_a_ring_map(pi):
    ki = k_images(pi)
    assert not ring_map_failures(ki)
    assert list(ki.images[1]) == r_series_t(max(pi), pi.n)


@given(p_primary())
@settings(max_examples=60, deadline=None)
def test_k_filtration_quotients_are_integral(pi):
    # the HNF pivots of the degree-2j K-lattice are l_j, ..., l_n of pi
    ki = k_images(pi)
    lj = kawasaki_invariants(pi).lj
    for j in range(1, pi.n + 1):
        basis = ki.lattice.basis(j)
        assert [row[c] for row, c in zip(basis, lattice.pivots(basis))] == list(lj[j - 1:])


@given(p_primary())
@settings(max_examples=40, deadline=None)
def test_integral_images_are_lj(pi):
    L = integral_images(pi)
    assert [L.basis(j)[0][0] for j in range(1, pi.n + 1)] == list(kawasaki_invariants(pi).lj)


@given(st.lists(st.integers(1, 60), min_size=2, max_size=5))
@settings(max_examples=80, deadline=None)
def test_integral_assembly_recovers_kawasaki(coords):
    norm = normalise(coords)
    ring = assemble(coords, "integral")
    inv = kawasaki_invariants(norm)
    assert [g[0] for g in ring.generators] == list(inv.lj)
    for j in range(2, norm.n + 1):
        assert ring.relations[j] == [(inv.mj[j - 1], j)]


@given(coprime_weights())
@settings(max_examples=60, deadline=None)
def test_k_assembly_is_the_intersection(chi):
    ring = assemble(chi, "ktheory")
    n = ring.lattice.n
    parts = [k_images(pi, n).lattice for pi in primary_parts(chi).values()]
    # every generator lies in each part, and its leading coefficient is l_j
    for j in range(1, n + 1):
        vec = ring.vector_full(j)[j:]
        assert all(P.contains(j, vec) for P in parts)
        assert vec[0] == kawasaki_invariants(normalise(chi)).lj[j - 1]
    # y1^j is an integral combination of generators
    for j in range(2, n + 1):
        assert ring.relations[j]


def test_intersection_laws():
    a = integral_images((1, 1, 4))
    b = integral_images((1, 1, 3))
    assert intersect([a, b]) == intersect([b, a])
    assert intersect([a, a]) == a
    assert index_multiplicativity(a, b)


def test_k_rejects_non_coprime():
    with pytest.raises(UnsupportedShape, match="pairwise coprime"):
        assemble((1, 1, 2, 2), "ktheory")


def test_unknown_theory():
    with pytest.raises(UnsupportedShape):
        assemble((3, 4, 5), "generic")


class TestColimit:
    @pytest.mark.parametrize("chi", [(3, 4, 5), (1, 2, 3), (1, 2, 6), (2, 3, 5, 7), (1, 2, 3, 4)])
    def test_examples(self, chi):
        rep = colimit_check(chi)
        assert rep.ok
        n = normalise(chi).n
        assert all(rep.ranks[d] == (1 if d <= n else 0) for d in rep.ranks)
        assert not any(rep.torsion.values())

    def test_two_parts_by_hand(self):
        # P(1,3,4): parts (1,1,4) and (1,1,3); degree 1 is Z^2 / (the x-relation) = Z
        rep = colimit_check((1, 3, 4))
        assert rep.ranks[1] == 1 and rep.ranks[2] == 1 and rep.ranks[3] == 0

    def test_single_prime(self):
        rep = colimit_check((1, 1, 8))
        assert rep.ok and rep.ranks == {0: 1, 1: 1, 2: 1}

    def test_trivial(self):
        assert colimit_check((1, 1, 1)).ok
