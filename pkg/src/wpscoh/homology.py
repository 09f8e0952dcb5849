"""Homology coalgebras E_*(P(chi)+) dual to the cohomology presentations.

The basis b_0..b_n is dual to u_0..u_n, so the diagonal is the transpose of
the multiplication table: e_{j,k,l} = c^j_{kl}.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from wpscoh import lattice
from wpscoh.fglcore import CoefficientRing, RingElement, render_coefficient
from wpscoh.presentation import ConsistencyError, KawasakiRing, ThomPresentation, build_presentation
from wpscoh.reassembly import UnsupportedShape, int_coefficient, _require_k_shape, assemble, primary_parts
from wpscoh.weights import WeightVector, as_weights, normalise

Table = list  # list[list[dict[int, RingElement]]]


def _label(j: int) -> str:
    return "1" if j == 0 else f"b{j}"


@dataclass
class CoalgebraPresentation:
    n: int
    label: str
    diagonal: dict[int, dict[tuple[int, int], RingElement]]

    def coefficient(self, j: int, k: int, l: int) -> RingElement:
        return self.diagonal[j].get((k, l), RingElement())

    def terms(self, j: int) -> list[tuple[int, int, RingElement]]:
        return [(k, l, c) for (k, l), c in sorted(self.diagonal[j].items(), key=lambda t: (-t[0][0], -t[0][1]))]

    def render_delta(self, j: int) -> str:
        out = ""
        for idx, (k, l, c) in enumerate(self.terms(j)):
            sign, text = render_coefficient(c)
            body = f"{_label(k)}⊗{_label(l)}"
            if text:
                body = f"{text} {body}"
            if idx == 0:
                out = ("-" if sign == "-" else "") + body
            else:
                out += f" {sign} {body}"
        return f"δ({_label(j)}) = {out or '0'}"

    def render(self) -> str:
        return "\n".join([f"E_*({self.label})"] + [self.render_delta(j) for j in range(self.n + 1)])

    # -- invariants ----------------------------------------------------------

    def counit_ok(self) -> bool:
        one = RingElement.const(1)
        for j in range(self.n + 1):
            if self.coefficient(j, j, 0) != one or self.coefficient(j, 0, j) != one:
                return False
            for (k, l) in self.diagonal[j]:
                if (k == 0 or l == 0) and (k, l) not in ((j, 0), (0, j)):
                    return False
        return True

    def cocommutative(self) -> bool:
        return all(c == self.coefficient(j, l, k)
                   for j, d in self.diagonal.items() for (k, l), c in d.items())

    def homogeneous(self) -> bool:
        return all(c.degrees() == {2 * (j - k - l)}
                   for j, d in self.diagonal.items() for (k, l), c in d.items())

    def coassociativity_failures(self) -> list[int]:
        bad = []
        for j in range(self.n + 1):
            left: dict[tuple[int, int, int], RingElement] = {}
            right: dict[tuple[int, int, int], RingElement] = {}
            for (k, l), c in self.diagonal[j].items():
                for (a, b), d in self.diagonal[k].items():
                    _acc(left, (a, b, l), c * d)
                for (a, b), d in self.diagonal[l].items():
                    _acc(right, (k, a, b), c * d)
            if left != right:
                bad.append(j)
        return bad

    def to_json(self) -> dict:
        return {
            "basis": [{"degree": 2 * j, "label": _label(j)} for j in range(self.n + 1)],
            "diagonal": [
                {"j": j, "terms": [{"k": k, "l": l, "coeff": str(c)} for k, l, c in self.terms(j)]}
                for j in range(self.n + 1)
            ],
        }


def _acc(d: dict, key, val: RingElement) -> None:
    v = d.get(key, RingElement()) + val
    if v:
        d[key] = v
    else:
        d.pop(key, None)


def dualize(pres: ThomPresentation | KawasakiRing) -> CoalgebraPresentation:
    """Transpose the multiplication table into the homology diagonal."""
    n = pres.n
    table: Table = pres.table
    diag: dict[int, dict[tuple[int, int], RingElement]] = {j: {} for j in range(n + 1)}
    for k in range(n + 1):
        for l in range(n + 1):
            for j, c in table[k][l].items():
                if c:
                    diag[j][(k, l)] = c
    if isinstance(pres, ThomPresentation):
        label = f"P({pres.chi}); {pres.theory.label()}"
    else:
        label = f"P({pres.chi}); integral (Kawasaki)"
    return CoalgebraPresentation(n, label, diag)


def cpn_coalgebra(n: int, theory: str = "integral") -> CoalgebraPresentation:
    one = RingElement.const(1)
    diag = {j: {(i, j - i): one for i in range(j + 1)} for j in range(n + 1)}
    return CoalgebraPresentation(n, f"CP^{n}; {theory}", diag)


def duality_failures(pres: ThomPresentation | KawasakiRing,
                     coalg: CoalgebraPresentation | None = None) -> list[tuple[int, int, int]]:
    """Triples (a, b, j) where <u_a u_b, b_j> differs from sum e_{j,k,l} <u_a,b_k><u_b,b_l>."""
    coalg = dualize(pres) if coalg is None else coalg
    n = pres.n
    bad = []
    for a in range(n + 1):
        for b in range(n + 1):
            prod = pres.table[a][b]
            for j in range(n + 1):
                lhs = prod.get(j, RingElement())
                rhs = RingElement()
                for (k, l), e in coalg.diagonal[j].items():
                    if k == a and l == b:
                        rhs = rhs + e
                if lhs != rhs:
                    bad.append((a, b, j))
    return bad


# --------------------------------------------------------------------------
# pushforward along e(pi): CP^n -> P(pi)


@dataclass(frozen=True)
class PushforwardMatrix:
    """M[i][j] = coefficient of u_j in w_n^i, with powers of z dropped (t = z x)."""

    pi: WeightVector
    theory: str
    matrix: tuple[tuple[int, ...], ...]

    def image(self, j: int) -> list[int]:
        """psi_*(b_j) as coefficients of b_0..b_n."""
        return [self.matrix[i][j] for i in range(len(self.matrix))]

    def images(self) -> list[list[int]]:
        return [self.image(j) for j in range(len(self.matrix))]


def pushforward(pi, theory: str | CoefficientRing = "ktheory") -> PushforwardMatrix:
    pi = as_weights(pi)
    ring = CoefficientRing.ktheory() if theory == "ktheory" else (
        CoefficientRing.integral() if theory == "integral" else theory)
    if not isinstance(ring, CoefficientRing) or ring.variant == "generic":
        raise UnsupportedShape("pushforward matrices are implemented for integral and ktheory")
    pres = build_presentation(pi, ring)
    n = pi.n
    M = []
    for i in range(n + 1):
        row = pres.power_of_wn(i)
        M.append(tuple(int_coefficient(row.get(j, RingElement())) for j in range(n + 1)))
    return PushforwardMatrix(pi, ring.variant, tuple(M))


# --------------------------------------------------------------------------
# assembling homology across primes


@dataclass
class HomologyAssembly:
    chi: WeightVector
    theory: str
    generators: list[list[int]]  # y_j as b_0..b_n coefficients, top term in b_j
    diagonal: dict[int, dict[tuple[int, int], int]]

    @property
    def n(self) -> int:
        return len(self.generators) - 1

    def pivot(self, j: int) -> int:
        return self.generators[j][j]

    def render_generator(self, j: int) -> str:
        terms = []
        for i, c in enumerate(self.generators[j]):
            if c:
                b = _label(i)
                terms.append(b if c == 1 else f"{c} {b}" if b != "1" else str(c))
        return " + ".join(terms).replace("+ -", "- ")

    def render(self) -> str:
        t = "H" if self.theory == "integral" else "K"
        lines = [f"{t}_*(P({self.chi})+) inside {t}_*(CP^{self.n}+): "
                 + "<" + ", ".join(self.render_generator(j) for j in range(self.n + 1)) + ">"]
        for j in range(self.n + 1):
            terms = [f"{c} y{k}⊗y{l}" if c != 1 else f"y{k}⊗y{l}"
                     for (k, l), c in sorted(self.diagonal[j].items(), key=lambda t: (-t[0][0], -t[0][1]))]
            lines.append((f"  δ(y{j}) = " + " + ".join(terms)).replace("+ -", "- "))
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "chi": list(self.chi.coords),
            "theory": self.theory,
            "basis": [{"degree": 2 * j, "label": f"y{j}", "vector": self.generators[j]}
                      for j in range(self.n + 1)],
            "diagonal": [{"j": j, "terms": [{"k": k, "l": l, "coeff": c}
                                            for (k, l), c in sorted(self.diagonal[j].items())]}
                         for j in range(self.n + 1)],
        }


def _rev(v):
    return list(reversed(v))


def homology_lattice(chi, theory: str) -> list[list[int]]:
    """Generators y_0..y_n of the intersection of the pushforward images."""
    chi = normalise(chi)
    n = chi.n
    parts = primary_parts(chi)
    lats = []
    for pi in parts.values():
        pf = pushforward(pi, theory)
        # reversed coordinates put the pivot of each row at its top degree
        lats.append(lattice.hnf([_rev(v) for v in pf.images()]))
    if not lats:
        lats = [[_rev([int(i == j) for i in range(n + 1)]) for j in range(n + 1)]]
    basis = lattice.intersect_all(lats)
    if len(basis) != n + 1:
        raise ConsistencyError(f"homology intersection for {chi} is not of full rank")
    gens = [_rev(r) for r in basis]
    gens.sort(key=lambda v: max(i for i, c in enumerate(v) if c))
    return gens


def assemble_homology(chi, theory: str = "ktheory") -> HomologyAssembly:
    """Intersect the pushforward images and restrict the CP^n diagonal to them."""
    chi = as_weights(chi)
    if theory == "ktheory":
        _require_k_shape(normalise(chi))
    elif theory != "integral":
        raise UnsupportedShape(f"homology assembly is implemented for integral and ktheory, not {theory}")
    Y = homology_lattice(chi, theory)
    n = len(Y) - 1
    # invert the upper-triangular change of basis b -> y
    Yinv = _inverse(Y)
    diagonal: dict[int, dict[tuple[int, int], int]] = {}
    for j, y in enumerate(Y):
        # delta(y) in b-coordinates: C[a][b] = sum_i y_i [a + b = i]
        C = [[y[a + b] if a + b <= n else 0 for b in range(n + 1)] for a in range(n + 1)]
        # C = sum D[k][l] Y[k]^T Y[l], so D = Yinv^T C Yinv
        D = _matmul(_matmul(_transpose(Yinv), C), Yinv)
        terms = {}
        for k in range(n + 1):
            for l in range(n + 1):
                d = D[k][l]
                if d.denominator != 1:
                    raise ConsistencyError(
                        f"the CP^{n} diagonal does not close on the intersection for {chi}")
                if d:
                    terms[(k, l)] = int(d)
        diagonal[j] = terms
    return HomologyAssembly(chi, theory, Y, diagonal)


def _transpose(A):
    return [list(r) for r in zip(*A)]


def _matmul(A, B):
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), Fraction(0))
             for j in range(len(B[0]))] for i in range(len(A))]


def _inverse(Y: list[list[int]]) -> list[list[Fraction]]:
    n = len(Y)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(Y)]
    for c in range(n):
        p = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [x / piv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


@dataclass
class IndexReport:
    chi: WeightVector
    theory: str
    cohomology: list[int]
    homology: list[int]
    l: int
    ok: bool


def index_agreement(chi, theory: str = "ktheory") -> IndexReport:
    """Per degree j: (cohomology index) * (homology index) = l(chi)^j.

    The cohomology lattice sits inside Z x^j (or t^j) with index d_j, the
    homology lattice inside Z b_j with index h_j; the Kronecker pairing of
    y_j with its dual is then l^j for the normalised weights.
    """
    from wpscoh.weights import lcm_all

    ring = assemble(chi, theory)
    hom = assemble_homology(chi, theory)
    n = ring.lattice.n
    l = lcm_all(normalise(chi))
    d = [ring.vector_full(j)[j] for j in range(1, n + 1)]
    h = [hom.pivot(j) for j in range(1, n + 1)]
    ok = all(d[j - 1] * h[j - 1] == l ** j for j in range(1, n + 1))
    return IndexReport(as_weights(chi), theory, d, h, l, ok)
