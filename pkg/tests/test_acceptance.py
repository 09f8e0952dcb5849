"""Acceptance criteria, one marked group per criterion.

Run ``pytest tests/test_acceptance.py`` to get a PASS/FAIL line per
criterion in the terminal summary.
"""
import math
import time

import pytest

from wpscoh.fglcore import RingElement
from wpscoh.homology import assemble_homology, dualize
from wpscoh.presentation import build_presentation, kawasaki_ring, verify_divisive_iso
from wpscoh.reassembly import assemble, colimit_check, relation_holds
from wpscoh.weights import extraction, insertion, lens_cohomology, p_content
from wpscoh import verify

C1 = pytest.mark.criterion(1, "P(3,4,5) suite")
C2 = pytest.mark.criterion(2, "relation sets for (1,1,2,4) and (1,1,1,3)")
C3 = pytest.mark.criterion(3, "diagonals of (1,1,1,r)")
C4 = pytest.mark.criterion(4, "w_n^2 for (1,...,1,r) in K-theory")
C5 = pytest.mark.criterion(5, "Thom/Kawasaki isomorphism, exhaustive")
C6 = pytest.mark.criterion(6, "seeded property suite")
C7 = pytest.mark.criterion(7, "lens spaces")
C8 = pytest.mark.criterion(8, "limit/colimit agreement")


@pytest.fixture
def stopwatch():
    t0 = time.perf_counter()
    yield lambda: time.perf_counter() - t0


@C1
def test_345_suite(stopwatch):
    chi = (3, 4, 5)
    kr = kawasaki_ring(chi)
    assert kr.mj[1:] == (1, 60) and kr.constant(1, 1) == 60
    ring = assemble(chi, "integral")
    assert ring.relations[2] == [(60, 2)]

    kring = assemble(chi, "ktheory")
    L = kring.lattice
    # 60 t^2 is in degree 4 and in degree 2 (as z * y2); degree 2 has leading coefficient 60 at t
    assert L.contains(2, [60]) and L.contains(1, [0, 60])
    assert L.basis(1)[0][0] == 60 and L.index(1) == 60 * 60
    assert kring.relations[2] == [(60, 2)]
    # the relation holds for the HNF generators and for 60t + 90t^2, 60t^2
    y1, y2 = kring.vector_full(1), kring.vector_full(2)
    assert relation_holds(chi, "ktheory", y1, y2, 2, 60)
    assert relation_holds(chi, "ktheory", [0, 60, 90], [0, 0, 60], 2, 60)

    hom = assemble_homology(chi, "ktheory")
    assert hom.generators == [[1, 0, 0], [0, 1, 0], [0, 0, 60]]

    assert [p_content(chi, p).coords for p in (2, 3, 5)] == [(1, 4, 1), (3, 1, 1), (1, 1, 5)]
    assert [extraction(chi, p).exponents for p in (2, 3, 5)] == [(5, 15, 3), (20, 5, 4), (4, 3, 12)]
    assert [insertion(chi, p).exponents for p in (2, 3, 5)] == [(3, 1, 5), (1, 4, 5), (3, 4, 1)]
    assert stopwatch() < 1.0


@C2
def test_generic_relation_sets(stopwatch):
    a = [r.render() for r in build_presentation((1, 1, 2, 4), "generic").relations()]
    b = [r.render() for r in build_presentation((1, 1, 1, 3), "generic").relations()]
    assert a == ["w1^2*w2*w3", "(w2^2 - 2*w1*w2)*w3", "w3^2 - 2*w2*w3 - aE*w2^2*w3"]
    assert b == ["w1^2*w2*w3", "(w2^2 - w1*w2)*w3", "w3^2 - 3*w2*w3 - 3*aE*w2^2*w3"]
    assert stopwatch() < 1.0


@C3
@pytest.mark.parametrize("r", [2, 3, 4, 5, 7])
def test_111r_diagonals(r):
    coalg = dualize(build_presentation((1, 1, 1, r), "generic"))
    one = RingElement.const(1)
    aE = RingElement.var("a:1:1")
    assert coalg.diagonal[2] == {(2, 0): one, (1, 1): RingElement.const(r), (0, 2): one}
    assert coalg.diagonal[3] == {
        (3, 0): one,
        (2, 1): RingElement.const(r),
        (1, 1): aE * math.comb(r, 2),
        (1, 2): RingElement.const(r),
        (0, 3): one,
    }


@C4
@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("r", [2, 3, 4, 5, 6])
def test_ktheory_wn_squared(n, r):
    # w_n^2 = sum_s C(r,s) z^{s-1} w_{n-s} ... w_n, and w_{n-s}...w_n = u_{s+1} (zero once s >= n)
    pres = build_presentation((1,) * n + (r,), "ktheory")
    want = {s + 1: RingElement.var("z", s - 1) * math.comb(r, s) for s in range(1, r + 1) if s + 1 <= n}
    assert pres.power_of_wn(2) == want


def divisive_family():
    smooth = sorted(2**a * 3**b * 5**c for a in range(4) for b in range(4) for c in range(4)
                    if 2**a * 3**b * 5**c <= 64)
    out = []

    def extend(chain, n):
        if len(chain) == n + 1:
            out.append(tuple(chain))
            return
        for s in smooth:
            if s % chain[-1] == 0:
                extend(chain + [s], n)

    for n in range(1, 5):
        extend([1], n)
    return out


@C5
def test_thom_kawasaki_exhaustive(stopwatch):
    family = divisive_family()
    # includes every (1,1,p^k2,...,p^kn) with k2 <= ... <= kn <= 3, p in {2,3,5}
    for p in (2, 3, 5):
        for k in range(4):
            assert (1, 1, p**k) in family or p**k > 64
    failures = [chi for chi in family if not verify_divisive_iso(chi, raise_on_failure=False).ok]
    assert not failures
    assert stopwatch() < 30.0


@C6
def test_property_suite(stopwatch):
    report = verify.run(seed=verify.DEFAULT_SEED, samples=1000, max_n=5, max_coord=100)
    print(report.render())
    assert report.ok, report.render()
    assert stopwatch() < 60.0


@C6
def test_property_suite_is_deterministic():
    a = verify.run(seed=3, samples=40, only=["mj-multiplicativity"])
    b = verify.run(seed=3, samples=40, only=["mj-multiplicativity"])
    assert a.to_json() == b.to_json()


@C7
def test_lens_spaces():
    assert lens_cohomology((1, 1, 2)).groups() == {0: "Z", 2: "Z/2", 3: "Z"}
    assert lens_cohomology((1, 2, 4)).groups() == {0: "Z", 2: "Z/2", 3: "Z"}


@C8
def test_colimit(stopwatch):
    for chi in [(3, 4, 5), (1, 2, 3), (1, 2, 6)]:
        rep = colimit_check(chi)
        assert rep.ok, rep.render()
        assert not any(rep.torsion.values())
    assert stopwatch() < 5.0
