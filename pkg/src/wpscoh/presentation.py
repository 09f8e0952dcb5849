"""Cohomology rings of weighted projective spaces as explicit presentations.

For divisive chi the ring E*(P(chi)+) is generated over E_* by the tail
monomials u_k = w_{n-k+1} ... w_n subject to the relations

    w_i^2 * w_{i+1} ... w_n  =  [q_i](w_{i-1}) * w_i ... w_n,   w_0 = 0,

where [q](u) is the q-series of the theory's formal group law and
q_i = chi_i / chi_{i-1}.  ``normal_form`` rewrites any tail-form polynomial
onto the basis u_0..u_n; the multiplication table is read off from it.

For arbitrary normalised chi, ``kawasaki_ring`` models H*(P(chi)+) as the
sub-lattice of Z[x]/(x^{n+1}) spanned by l_j x^j.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping

from wpscoh.fglcore import (
    CoefficientRing,
    FormalGroupLaw,
    RingElement,
    TruncatedSeries,
    fgl_for,
    render_coefficient,
    theory_ring,
)
from wpscoh.weights import (
    WeightError,
    WeightVector,
    as_weights,
    is_divisive,
    kawasaki_invariants,
    normalise,
    star_form,
)

Mono = tuple  # exponents (e_1, ..., e_n) of w_1..w_n
Poly = dict  # Mono -> RingElement


class ConsistencyError(ArithmeticError):
    """An internal cross-check failed (associativity, integrality, ...)."""


def is_tail_form(mono: Mono) -> bool:
    """True if the support of mono is empty or an interval ending at n."""
    n = len(mono)
    support = [i for i, e in enumerate(mono) if e > 0]
    if not support:
        return True
    return support == list(range(support[0], n))


def tail(n: int, k: int) -> Mono:
    """Exponents of u_k = w_{n-k+1} ... w_n."""
    return tuple(1 if i >= n - k else 0 for i in range(n))


def mono_degree(mono: Mono) -> int:
    return 2 * sum(mono)


def render_mono(mono: Mono) -> str:
    parts = []
    for i, e in enumerate(mono, start=1):
        if e == 1:
            parts.append(f"w{i}")
        elif e > 1:
            parts.append(f"w{i}^{e}")
    return "*".join(parts) or "1"


def _add_term(poly: Poly, mono: Mono, c: RingElement) -> None:
    cur = poly.get(mono)
    new = c if cur is None else cur + c
    if new:
        poly[mono] = new
    elif cur is not None:
        del poly[mono]


def render_poly(terms: list[tuple[Mono, RingElement]]) -> str:
    out = ""
    for idx, (mono, c) in enumerate(terms):
        sign, text = render_coefficient(c)
        m = render_mono(mono) if any(mono) else ""
        body = "*".join(x for x in (text, m) if x) or "1"
        if idx == 0:
            out = ("-" if sign == "-" else "") + body
        else:
            out += f" {sign} {body}"
    return out or "0"


@dataclass(frozen=True)
class Relation:
    """(w_i^2 - sum_s c_s w_{i-1}^s w_i) * w_{i+1} ... w_n, as in the ideal J^E."""

    index: int
    leading: Mono
    terms: tuple[tuple[Mono, RingElement], ...]  # full signed polynomial
    inner: tuple[tuple[Mono, RingElement], ...]  # before multiplying by the tail
    tail_factor: Mono

    def as_dict(self) -> dict[Mono, RingElement]:
        return dict(self.terms)

    def render(self) -> str:
        if not any(self.tail_factor) or len(self.inner) == 1:
            return render_poly(list(self.terms))
        return f"({render_poly(list(self.inner))})*{render_mono(self.tail_factor)}"


class ThomPresentation:
    """E*(P(chi)+) for divisive chi over one of the supported theories.

    The basis is u_0..u_n with u_k in cohomological degree 2k;
    ``table[j][k]`` maps m to the coefficient c^m_{jk} of u_m in u_j * u_k.
    """

    def __init__(self, chi, theory: CoefficientRing):
        chi = as_weights(chi)
        if not is_divisive(chi):
            raise WeightError(
                f"{chi} is not divisive; use star_form({chi}) = {star_form(chi)}")
        self.chi = chi
        self.n = chi.n
        self.theory = theory
        self.law: FormalGroupLaw = fgl_for(theory)
        self.q = tuple(chi[j] // chi[j - 1] for j in range(1, len(chi)))
        self._series: dict[int, TruncatedSeries] = {}
        self.rewrites = 0

    # -- relation series -------------------------------------------------

    def q_series(self, i: int) -> TruncatedSeries:
        """[q_i](u) through the largest exponent that can survive in degree <= 2n."""
        q = self.q[i - 1]
        if q not in self._series:
            self._series[q] = self.law.r_series(q, max(1, self.n))
        return self._series[q]

    def relation_series(self) -> list[TruncatedSeries]:
        return [self.q_series(i) for i in range(1, self.n + 1)]

    def relations(self) -> list[Relation]:
        """Generators of J^E with terms of w-degree above 2n dropped.

        Rewriting never lowers the w-degree and the basis stops at degree 2n,
        so such monomials reduce to zero in every supported theory.
        """
        n = self.n
        out = []
        for i in range(1, n + 1):
            tail_factor = tuple(1 if j > i else 0 for j in range(1, n + 1))
            lead_inner = tuple(2 if j == i else 0 for j in range(1, n + 1))
            inner = [(lead_inner, RingElement.const(1))]
            if i > 1:
                for (s,), c in sorted(self.q_series(i).terms.items()):
                    if s > i - 1:
                        continue
                    mono = tuple(s if j == i - 1 else (1 if j == i else 0)
                                 for j in range(1, n + 1))
                    inner.append((mono, -c))
            full = [(tuple(a + b for a, b in zip(m, tail_factor)), c) for m, c in inner]
            out.append(Relation(i, full[0][0], tuple(full), tuple(inner), tail_factor))
        return out

    # -- rewriting -------------------------------------------------------

    def normal_form(self, poly: Mapping[Mono, RingElement] | Mono) -> dict[int, RingElement]:
        """Rewrite a tail-form polynomial onto the basis; returns {k: coeff of u_k}.

        Strategy: take the largest i with e_i >= 2 and replace w_i^2 by
        [q_i](w_{i-1}) w_i.  Each step lowers (e_n, ..., e_1)
        lexicographically, and never lowers the w-degree, so monomials of
        w-degree above 2n are discarded on sight.
        """
        n = self.n
        if isinstance(poly, tuple):
            poly = {poly: RingElement.const(1)}
        work: Poly = {}
        for mono, c in poly.items():
            mono = tuple(mono)
            if len(mono) != n:
                raise ValueError(f"monomial {mono} does not have {n} exponents")
            if not is_tail_form(mono):
                raise ValueError(f"{render_mono(mono)} is not in tail form")
            c = RingElement.coerce(c)
            if c and mono_degree(mono) <= 2 * n:
                _add_term(work, mono, c)
        result: dict[int, RingElement] = {}
        while work:
            mono = max(work, key=lambda m: m[::-1])
            c = work.pop(mono)
            i = max((j for j, e in enumerate(mono) if e >= 2), default=None)
            if i is None:
                k = sum(mono)
                cur = result.get(k, RingElement()) + c
                if cur:
                    result[k] = cur
                else:
                    result.pop(k, None)
                continue
            self.rewrites += 1
            if i == 0:
                continue  # [q_1](w_0) = 0
            series = self.q_series(i + 1)
            for (s,), coeff in series.terms.items():
                new = list(mono)
                new[i] -= 1
                new[i - 1] += s
                new = tuple(new)
                if mono_degree(new) > 2 * n:
                    continue
                assert new[::-1] < mono[::-1], "rewrite failed to decrease the order"
                _add_term(work, new, c * coeff)
        return dict(sorted(result.items()))

    def product_monomial(self, j: int, k: int) -> Mono:
        a, b = tail(self.n, j), tail(self.n, k)
        return tuple(x + y for x, y in zip(a, b))

    def multiply_basis(self, j: int, k: int) -> dict[int, RingElement]:
        return self.normal_form(self.product_monomial(j, k))

    @cached_property
    def table(self) -> list[list[dict[int, RingElement]]]:
        n = self.n
        tab = [[None] * (n + 1) for _ in range(n + 1)]
        for j in range(n + 1):
            for k in range(j, n + 1):
                tab[j][k] = tab[k][j] = self.multiply_basis(j, k)
        return tab

    def structure_constant(self, m: int, j: int, k: int) -> RingElement:
        return self.table[j][k].get(m, RingElement())

    def multiply(self, a: Mapping[int, RingElement], b: Mapping[int, RingElement]) -> dict[int, RingElement]:
        """Product of two basis expansions using the multiplication table."""
        out: dict[int, RingElement] = {}
        for j, cj in a.items():
            for k, ck in b.items():
                for m, c in self.table[j][k].items():
                    val = out.get(m, RingElement()) + cj * ck * c
                    if val:
                        out[m] = val
                    else:
                        out.pop(m, None)
        return dict(sorted(out.items()))

    def power_of_wn(self, i: int) -> dict[int, RingElement]:
        """Basis expansion of w_n^i."""
        n = self.n
        if n == 0:
            return {0: RingElement.const(1)} if i == 0 else {}
        mono = tuple(i if j == n - 1 else 0 for j in range(n))
        return self.normal_form(mono)

    # -- checks ------------------------------------------------------------

    def check_homogeneity(self) -> None:
        for j in range(self.n + 1):
            for k in range(self.n + 1):
                for m, c in self.table[j][k].items():
                    want = 2 * (m - j - k)
                    if c.degrees() != {want}:
                        raise ConsistencyError(
                            f"c^{m}_{j}{k} = {c} is not homogeneous of degree {want}")

    def associativity_failures(self) -> list[tuple[int, int, int]]:
        bad = []
        n = self.n
        for i in range(n + 1):
            for j in range(n + 1):
                for k in range(n + 1):
                    left = self.multiply(self.table[i][j], {k: RingElement.const(1)})
                    right = self.multiply({i: RingElement.const(1)}, self.table[j][k])
                    if left != right:
                        bad.append((i, j, k))
        return bad

    def is_associative(self) -> bool:
        return not self.associativity_failures()

    # -- rendering -----------------------------------------------------------

    def render_product(self, j: int, k: int) -> str:
        terms = []
        for m, c in self.table[j][k].items():
            sign, text = render_coefficient(c)
            body = f"{text} u{m}" if text else f"u{m}"
            terms.append((sign, body))
        rhs = ""
        for idx, (sign, body) in enumerate(terms):
            if idx == 0:
                rhs = ("-" if sign == "-" else "") + body
            else:
                rhs += f" {sign} {body}"
        return f"u{j}*u{k} = {rhs or '0'}"

    def render(self) -> str:
        lines = [f"E*(P({self.chi})+) over {self.theory.label()}",
                 "basis: " + ", ".join(f"u{k} (deg {2 * k})" for k in range(self.n + 1)),
                 "relations:"]
        lines += [f"  {r.render()}" for r in self.relations()]
        lines.append("products:")
        for j in range(1, self.n + 1):
            for k in range(1, j + 1):
                lines.append(f"  {self.render_product(j, k)}")
        return "\n".join(lines)


def build_presentation(chi, theory: CoefficientRing | str = "integral",
                       truncation: int | None = None) -> ThomPresentation:
    chi = as_weights(chi)
    if isinstance(theory, str):
        theory = theory_ring(theory, chi.n, truncation)
    return ThomPresentation(chi, theory)


# --------------------------------------------------------------------------
# the Kawasaki ring


@dataclass(frozen=True)
class KawasakiRing:
    """H*(P(chi)+) as the lattice spanned by v_j = l_j x^j in Z[x]/(x^{n+1})."""

    chi: WeightVector
    lj: tuple[int, ...]  # l_0 = 1, l_1, ..., l_n
    mj: tuple[int, ...]  # m_0 = 1, m_1, ..., m_n

    @property
    def n(self) -> int:
        return self.chi.n

    @property
    def embedding(self) -> tuple[int, ...]:
        return self.lj

    def constant(self, i: int, j: int) -> int:
        """Coefficient of v_{i+j} in v_i v_j (zero beyond degree 2n)."""
        if i + j > self.n:
            return 0
        q, r = divmod(self.lj[i] * self.lj[j], self.lj[i + j])
        if r:
            raise ConsistencyError(f"l_{i} l_{j} not divisible by l_{i + j} for {self.chi}")
        return q

    @cached_property
    def table(self) -> list[list[dict[int, RingElement]]]:
        n = self.n
        return [[({i + j: RingElement.const(self.constant(i, j))} if i + j <= n else {})
                 for j in range(n + 1)] for i in range(n + 1)]

    def v1_power(self, j: int) -> int:
        """The integer m with v_1^j = m v_j, computed from the table."""
        c = 1
        for k in range(1, j):
            c *= self.constant(1, k)
        return c

    def render(self) -> str:
        lines = [f"H*(P({self.chi})+) = Z[v1..v{self.n}] / (v1^j - m_j v_j)",
                 "embedding: " + ", ".join(f"v{j} -> {self.lj[j]} x^{j}"
                                           for j in range(1, self.n + 1)),
                 "relations: " + ", ".join(f"v1^{j} = {self.mj[j]} v{j}"
                                           for j in range(2, self.n + 1))]
        for i in range(1, self.n + 1):
            for j in range(1, i + 1):
                if i + j <= self.n:
                    lines.append(f"  v{i}*v{j} = {self.constant(i, j)} v{i + j}")
        return "\n".join(lines)


def kawasaki_ring(chi) -> KawasakiRing:
    chi = normalise(chi)
    inv = kawasaki_invariants(chi)
    ring = KawasakiRing(chi, (1,) + inv.lj, (1,) + inv.mj)
    for i in range(ring.n + 1):
        for j in range(ring.n + 1 - i):
            ring.constant(i, j)
    return ring


# --------------------------------------------------------------------------
# cross-checks between the two descriptions


def thom_scalars(chi) -> list[int]:
    """prod_{h=1}^{j-1} chi_n / chi_{n-h} for j = 0..n (the w_n^j = S_j u_j scalars)."""
    chi = as_weights(chi)
    n = chi.n
    out = []
    for j in range(n + 1):
        s = 1
        for h in range(1, j):
            s *= chi[n] // chi[n - h]
        out.append(s)
    return out


@dataclass
class IsoReport:
    chi: WeightVector
    scalars: list[int]
    powers: list[dict[int, RingElement]]
    kawasaki: KawasakiRing
    ok: bool
    problems: list[str] = field(default_factory=list)

    def render(self) -> str:
        head = f"Thom/Kawasaki isomorphism for {self.chi}: {'ok' if self.ok else 'FAILED'}"
        body = [f"  w_n^{j} = {self.scalars[j]} u{j}" for j in range(1, len(self.scalars))]
        return "\n".join([head] + body + [f"  ! {p}" for p in self.problems])


def verify_divisive_iso(chi, raise_on_failure: bool = True) -> IsoReport:
    """Compare the integral Thom presentation of a divisive chi with Kawasaki's ring."""
    chi = as_weights(chi)
    pres = build_presentation(chi, "integral")
    scalars = thom_scalars(chi)
    kr = kawasaki_ring(chi)
    problems = []
    powers = []
    for j in range(pres.n + 1):
        got = pres.power_of_wn(j)
        powers.append(got)
        want = {j: RingElement.const(scalars[j])}
        if got != want:
            problems.append(f"w_n^{j} = {_fmt(got)}, expected {scalars[j]} u{j}")
        if scalars[j] != kr.mj[j]:
            problems.append(f"scalar {scalars[j]} != m_{j} = {kr.mj[j]}")
    for i in range(pres.n + 1):
        for j in range(pres.n + 1):
            want = {i + j: RingElement.const(kr.constant(i, j))} if i + j <= pres.n else {}
            got = pres.table[i][j]
            if got != want:
                problems.append(f"u{i}*u{j} = {_fmt(got)} but v{i}*v{j} = {_fmt(want)}")
    report = IsoReport(chi, scalars, powers, kr, not problems, problems)
    if problems and raise_on_failure:
        raise ConsistencyError(report.render())
    return report


def _fmt(expansion: Mapping[int, RingElement]) -> str:
    if not expansion:
        return "0"
    return " + ".join(f"({c}) u{k}" for k, c in expansion.items())


@dataclass
class RationalReport:
    chi: WeightVector
    scalars: list[RingElement]
    ok: bool
    problems: list[str] = field(default_factory=list)

    def render(self) -> str:
        lines = [f"rational form for {self.chi}: {'ok' if self.ok else 'FAILED'}"]
        for j, s in enumerate(self.scalars):
            lines.append(f"  u{j} = w_n^{j} / ({s})")
        return "\n".join(lines + [f"  ! {p}" for p in self.problems])


def rational_form(pres: ThomPresentation) -> RationalReport:
    """Check that w_n^0..w_n^n span the algebra rationally.

    The matrix expressing w_n^i in the u-basis must be upper triangular with
    non-zero diagonal; inverting it writes every u_j as a rational
    combination of powers of w_n, so the rational algebra is E_Q[w_n]/(w_n^{n+1}).
    """
    n = pres.n
    problems = []
    diag = []
    for i in range(n + 1):
        row = pres.power_of_wn(i)
        if any(m < i for m in row):
            problems.append(f"w_n^{i} has components below degree {2 * i}")
        d = row.get(i, RingElement())
        if d.is_zero():
            problems.append(f"w_n^{i} has no u{i} component")
        diag.append(d)
    top = pres.power_of_wn(n + 1)
    if top:
        problems.append(f"w_n^{n + 1} = {_fmt(top)} is non-zero")
    return RationalReport(pres.chi, diag, not problems, problems)


def rational_inverse(pres: ThomPresentation) -> list[dict[int, Fraction]]:
    """For integral theory: u_j as a Q-combination of the powers w_n^i."""
    n = pres.n
    M = [[Fraction(pres.power_of_wn(i).get(j, RingElement()).constant())
          for j in range(n + 1)] for i in range(n + 1)]
    inv = []
    for j in range(n + 1):
        # solve sum_i a_i M[i][:] = e_j by back substitution (M upper triangular)
        a = [Fraction(0)] * (n + 1)
        for i in range(j, -1, -1):
            acc = Fraction(1 if i == j else 0) - sum(a[k] * M[k][i] for k in range(i + 1, j + 1))
            a[i] = acc / M[i][i]
        inv.append({i: a[i] for i in range(n + 1) if a[i]})
    return inv


def lj_divisibility_ok(chi) -> bool:
    inv = kawasaki_invariants(chi)
    lj = (1,) + inv.lj
    n = len(lj) - 1
    return all((lj[i] * lj[j]) % lj[i + j] == 0
               for i in range(1, n + 1) for j in range(1, n + 1 - i))


def presentation_for(chi, theory="integral", truncation=None, route_star: bool = True):
    """Build a presentation, routing non-divisive input through star_form.

    Returns (presentation, notice) where notice is None or a message
    explaining the substitution.
    """
    chi = as_weights(chi)
    notice = None
    if not is_divisive(chi):
        if not route_star:
            raise WeightError(f"{chi} is not divisive")
        star = star_form(chi)
        notice = f"{chi} is not divisive; computing with its divisive form {star}"
        chi = star
    return build_presentation(chi, theory, truncation), notice
