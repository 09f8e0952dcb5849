"""Reassembling E*(P(chi)+) from its p-primary parts inside E*(CP^n+).

Each p-primary part embeds in E*(CP^n+) through e(pi)^*; the ring of P(chi)
is the intersection of these images (the limit), and also the tensor
product of the parts over E*(CP^n+) (the colimit).

Coordinates.  Integral cohomology uses the x^j coordinate in degree 2j,
so each degree carries a rank-one lattice.  K-theory uses t = z x: the
degree-2j part of K*(CP^n+) is z^{-j} Z[t]/(t^{n+1}), and a class of degree
2j is recorded by the integer coefficients of t^j..t^n.  The lattice in
degree 2j is spanned by the images of u_j, ..., u_n.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product as iproduct

from wpscoh import lattice
from wpscoh.fglcore import CoefficientRing, RingElement
from wpscoh.presentation import ConsistencyError, ThomPresentation, build_presentation, kawasaki_ring
from wpscoh.weights import (
    WeightError,
    WeightVector,
    as_weights,
    is_pairwise_coprime,
    lcm_all,
    normalise,
    p_content,
    p_primary_normal_form,
)


class UnsupportedShape(WeightError):
    """The requested theory/weight combination is outside what is implemented."""


@dataclass(frozen=True)
class GradedLattice:
    """Per-degree integer lattices inside E*(CP^n+).

    ``degrees[j-1]`` is the HNF basis of the degree-2j lattice, as rows of
    length 1 (integral) or n - j + 1 (K-theory, coefficients of t^j..t^n).
    """

    n: int
    theory: str
    degrees: tuple[tuple[tuple[int, ...], ...], ...]

    @classmethod
    def from_rows(cls, n: int, theory: str, per_degree) -> "GradedLattice":
        return cls(n, theory, tuple(tuple(tuple(r) for r in lattice.hnf(rows))
                                    for rows in per_degree))

    def basis(self, j: int) -> list[list[int]]:
        return [list(r) for r in self.degrees[j - 1]]

    def index(self, j: int) -> int:
        return lattice.index(self.basis(j))

    def rank(self, j: int) -> int:
        return len(self.degrees[j - 1])

    def contains(self, j: int, vec) -> bool:
        return lattice.contains(self.basis(j), vec)


def _check_shape(pi: WeightVector, n: int) -> WeightVector:
    pi = p_primary_normal_form(pi) if len(pi.primes()) <= 1 else pi
    if pi.n != n:
        raise WeightError(f"{pi} has length {len(pi)}, expected {n + 1}")
    return pi


# --------------------------------------------------------------------------
# images of the p-primary parts


def integral_images(pi, n: int | None = None) -> GradedLattice:
    """Degree-2j lattice Z * p^{k(n)+...+k(n-j+1)} x^j of a p-primary part."""
    pi = as_weights(pi)
    n = pi.n if n is None else n
    pi = _check_shape(pi, n)
    ps = pi.primes()
    rows = []
    for j in range(1, n + 1):
        if ps:
            p = ps[0]
            ks = [_log(c, p) for c in pi.coords]
            gen = p ** sum(ks[n - h] for h in range(j))
        else:
            gen = 1
        rows.append([[gen]])
    return GradedLattice.from_rows(n, "integral", rows)


def _log(c: int, p: int) -> int:
    k = 0
    while c > 1:
        c //= p
        k += 1
    return k


def _tpoly_mul(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * (n + 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                out[i + j] += x * y
    return out


def _tpoly_pow(a: list[int], k: int, n: int) -> list[int]:
    out = [1] + [0] * n
    for _ in range(k):
        out = _tpoly_mul(out, a, n)
    return out


def r_series_t(r: int, n: int) -> list[int]:
    """(1 + t)^r - 1 truncated at t^n: the multiplicative r-series with z = 1."""
    return [0] + [math.comb(r, s) for s in range(1, n + 1)]


@dataclass(frozen=True)
class KImages:
    pi: WeightVector
    presentation: ThomPresentation = field(repr=False)
    images: tuple[tuple[int, ...], ...]  # image of u_k as t^0..t^n coefficients
    lattice: GradedLattice


def int_coefficient(c: RingElement) -> int:
    """Integer part of c = a z^k; the power of z is fixed by degree."""
    if c.is_zero():
        return 0
    (mono, val), = c.terms.items()
    if any(v != "z" for v, _ in mono):
        raise ValueError(f"{c} is not a multiple of a power of z")
    return val


def k_images(pi, n: int | None = None) -> KImages:
    """Images of u_0..u_n under e(pi)^*: K*(P(pi)+) -> K*(CP^n+), with t = z x.

    u_1 = w_n goes to [l](t) = (1 + t)^l - 1.  The remaining images are
    solved top-down from w_n^j = sum_{m>=j} M[j][m] u_m, dividing by the
    diagonal entry; any inexact division is reported as an unsupported shape.
    """
    pi = as_weights(pi)
    n = pi.n if n is None else n
    pi = _check_shape(pi, n)
    pres = build_presentation(pi, CoefficientRing.ktheory())
    l = lcm_all(pi)
    base = r_series_t(l, n)
    images: list[list[int] | None] = [None] * (n + 1)
    images[0] = [1] + [0] * n
    for j in range(n, 0, -1):
        row = pres.power_of_wn(j)
        rhs = _tpoly_pow(base, j, n)
        for m, c in row.items():
            if m > j:
                rhs = [a - int_coefficient(c) * b for a, b in zip(rhs, images[m])]
        d = int_coefficient(row.get(j, RingElement()))
        if d == 0:
            raise UnsupportedShape(f"w_n^{j} has no u{j} component for {pi}")
        q = []
        for a in rhs:
            qq, rr = divmod(a, d)
            if rr:
                raise UnsupportedShape(
                    f"unsupported weight shape {pi}: image of u{j} is not integral")
            q.append(qq)
        images[j] = q
    per_degree = [[images[k][j:] for k in range(j, n + 1)] for j in range(1, n + 1)]
    lat = GradedLattice.from_rows(n, "ktheory", per_degree)
    return KImages(pi, pres, tuple(tuple(v) for v in images), lat)


def ring_map_failures(ki: KImages) -> list[tuple[int, int]]:
    """Pairs (j, k) where image(u_j) image(u_k) != sum_m c^m_jk image(u_m)."""
    n = ki.pi.n
    bad = []
    for j in range(n + 1):
        for k in range(j, n + 1):
            lhs = _tpoly_mul(list(ki.images[j]), list(ki.images[k]), n)
            rhs = [0] * (n + 1)
            for m, c in ki.presentation.table[j][k].items():
                rhs = [a + int_coefficient(c) * b for a, b in zip(rhs, ki.images[m])]
            if lhs != rhs:
                bad.append((j, k))
    return bad


# --------------------------------------------------------------------------
# intersection and assembly


def intersect(lattices: list[GradedLattice]) -> GradedLattice:
    """Degreewise intersection, returned in canonical HNF."""
    if not lattices:
        raise ValueError("nothing to intersect")
    n, theory = lattices[0].n, lattices[0].theory
    for L in lattices[1:]:
        if L.n != n or L.theory != theory:
            raise ValueError("lattices live in different ambient rings")
    per_degree = []
    for j in range(1, n + 1):
        per_degree.append(lattice.intersect_all([L.basis(j) for L in lattices]))
    return GradedLattice.from_rows(n, theory, per_degree)


@dataclass
class AssembledRing:
    """Generators y_1..y_n of the intersection and the relations y_1^j = sum c y_m."""

    chi: WeightVector
    theory: str
    parts: dict[int, WeightVector]
    lattice: GradedLattice
    generators: list[list[int]]  # y_j in degree-2j coordinates
    relations: dict[int, list[tuple[int, int]]]  # j -> [(coeff, m)]

    def vector_full(self, j: int) -> list[int]:
        """y_j as x^0..x^n (integral) or t^0..t^n (K-theory) coefficients."""
        n = self.lattice.n
        if self.theory == "integral":
            return [self.generators[j - 1][0] if i == j else 0 for i in range(n + 1)]
        return [0] * j + list(self.generators[j - 1])

    def relation_coefficient(self, j: int) -> int:
        return dict((m, c) for c, m in self.relations[j]).get(j, 0)

    def render(self) -> str:
        lines = [f"{'H' if self.theory == 'integral' else 'K'}*(P({self.chi})+) "
                 f"as an intersection inside E*(CP^{self.lattice.n}+)"]
        lines.append("parts: " + ", ".join(f"{p}: ({w})" for p, w in self.parts.items()))
        for j in range(1, self.lattice.n + 1):
            lines.append(f"  y{j} = {render_class(self.theory, j, self.vector_full(j))}")
        for j in range(2, self.lattice.n + 1):
            rhs = " + ".join(f"{c} y{m}" for c, m in self.relations[j]) or "0"
            lines.append(f"  y1^{j} = {rhs}")
        return "\n".join(lines)


def render_class(theory: str, degree: int, vec: list[int]) -> str:
    terms = []
    for m, c in enumerate(vec):
        if not c:
            continue
        zpow = m - degree if theory == "ktheory" else 0
        z = "" if zpow == 0 else ("z" if zpow == 1 else f"z^{zpow}")
        x = "" if m == 0 else ("x" if m == 1 else f"x^{m}")
        body = " ".join(s for s in (str(c), z, x) if s)
        terms.append(body)
    return " + ".join(terms).replace("+ -", "- ") or "0"


def primary_parts(chi) -> dict[int, WeightVector]:
    chi = normalise(chi)
    return {p: p_primary_normal_form(p_content(chi, p)) for p in chi.primes()}


def _require_k_shape(chi: WeightVector) -> None:
    if not is_pairwise_coprime(chi):
        raise UnsupportedShape(
            f"K-theory reassembly needs pairwise coprime weights after normalisation; "
            f"{chi} is not")


def assemble(chi, theory: str = "integral") -> AssembledRing:
    original = as_weights(chi)
    chi = normalise(original)
    n = chi.n
    parts = primary_parts(chi)
    if theory == "integral":
        lats = [integral_images(pi, n) for pi in parts.values()]
    elif theory == "ktheory":
        _require_k_shape(chi)
        lats = []
        for pi in parts.values():
            ki = k_images(pi, n)
            if ring_map_failures(ki):
                raise ConsistencyError(f"images for {pi} do not form a ring map")
            lats.append(ki.lattice)
    else:
        raise UnsupportedShape(f"reassembly is implemented for integral and ktheory, not {theory}")
    if lats:
        L = intersect(lats)
    else:
        L = _cpn_lattice(n, theory)
    # the first HNF row in degree 2j has its pivot at x^j (or t^j)
    gens = [L.basis(j)[0] for j in range(1, n + 1)]
    ring = AssembledRing(original, theory, parts, L, gens, {})
    for j in range(1, n + 1):
        ring.relations[j] = _relation(ring, j)
    return ring


def _cpn_lattice(n: int, theory: str) -> GradedLattice:
    if theory == "integral":
        return GradedLattice.from_rows(n, theory, [[[1]] for _ in range(n)])
    return GradedLattice.from_rows(
        n, theory, [[[1 if i == k else 0 for i in range(j, n + 1)] for k in range(j, n + 1)]
                    for j in range(1, n + 1)])


def _relation(ring: AssembledRing, j: int) -> list[tuple[int, int]]:
    """Integer coefficients of y_1^j in the generators y_j..y_n."""
    n = ring.lattice.n
    y1 = ring.vector_full(1)
    power = _tpoly_pow(y1, j, n)
    if ring.theory == "integral":
        coeffs = [power[j] // ring.generators[j - 1][0]]
        if power[j] % ring.generators[j - 1][0]:
            raise ConsistencyError(f"y1^{j} is not an integral multiple of y{j}")
        return [(coeffs[0], j)]
    basis = [ring.vector_full(m)[j:] for m in range(j, n + 1)]
    coords = lattice.coordinates(basis, power[j:])
    if coords is None:
        raise ConsistencyError(f"y1^{j} does not lie in the assembled lattice")
    return [(c, m) for c, m in zip(coords, range(j, n + 1)) if c]


def relation_holds(chi, theory: str, y1: list[int], yj: list[int], j: int, coeff: int) -> bool:
    """Basis-independent check that y1^j = coeff * yj for given classes.

    ``y1`` and ``yj`` are full coefficient vectors (x^0..x^n or t^0..t^n);
    both must lie in the assembled ring.
    """
    ring = assemble(chi, theory)
    n = ring.lattice.n
    for d, v in ((1, y1), (j, yj)):
        if any(v[:d]) or not ring.lattice.contains(d, v[d:] if theory == "ktheory" else [v[d]]):
            return False
    return _tpoly_pow(y1, j, n) == [coeff * a for a in yj]


# --------------------------------------------------------------------------
# the colimit (tensor product) description


@dataclass
class ColimitReport:
    chi: WeightVector
    parts: dict[int, WeightVector]
    ranks: dict[int, int]
    torsion: dict[int, list[int]]
    limit_ranks: dict[int, int]
    ok: bool

    def render(self) -> str:
        lines = [f"colimit check for {self.chi}: {'ok' if self.ok else 'FAILED'}"]
        for d in sorted(self.ranks):
            lines.append(f"  degree {2 * d}: rank {self.ranks[d]}, torsion {self.torsion[d] or 'none'}"
                         f" (limit rank {self.limit_ranks.get(d, 0)})")
        return "\n".join(lines)


def _x_action(pi: WeightVector, n: int) -> list[int]:
    """a_j with x * v_j = a_j v_{j+1} in H*(P(pi)+), where x acts through v_1."""
    kr = kawasaki_ring(pi)
    return [kr.constant(1, j) for j in range(n + 1)]


def colimit_check(chi) -> ColimitReport:
    """Tensor the integral parts over Z[x]/(x^{n+1}) and inspect each degree."""
    chi = normalise(chi)
    n = chi.n
    parts = primary_parts(chi)
    actions = [_x_action(pi, n) for pi in parts.values()]
    m = len(actions)
    ranks: dict[int, int] = {}
    torsion: dict[int, list[int]] = {}
    if m == 0:
        ranks = {d: 1 for d in range(n + 1)}
        torsion = {d: [] for d in range(n + 1)}
    else:
        for d in range(m * n + 1):
            gens = [t for t in iproduct(range(n + 1), repeat=m) if sum(t) == d]
            pos = {t: i for i, t in enumerate(gens)}
            rows = []
            if d > 0:
                for t in iproduct(range(n + 1), repeat=m):
                    if sum(t) != d - 1:
                        continue
                    for a in range(m - 1):
                        row = [0] * len(gens)
                        for idx, sign in ((a, 1), (a + 1, -1)):
                            if t[idx] < n:
                                s = list(t)
                                s[idx] += 1
                                row[pos[tuple(s)]] += sign * actions[idx][t[idx]]
                        rows.append(row)
            r, tors = lattice.cokernel(rows, len(gens))
            ranks[d], torsion[d] = r, tors
    limit = assemble(chi, "integral").lattice
    limit_ranks = {0: 1, **{j: limit.rank(j) for j in range(1, n + 1)}}
    ok = all(
        ranks.get(d, 0) == limit_ranks.get(d, 0) and not torsion.get(d)
        for d in set(ranks) | set(limit_ranks)
    )
    return ColimitReport(chi, parts, ranks, torsion, limit_ranks, ok)


def index_multiplicativity(a: GradedLattice, b: GradedLattice) -> bool:
    """For coprime indices the intersection index is the product, degreewise."""
    c = intersect([a, b])
    return all(c.index(j) == a.index(j) * b.index(j) for j in range(1, a.n + 1))
