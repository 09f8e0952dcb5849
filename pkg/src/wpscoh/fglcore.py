"""Exact graded coefficient rings, truncated power series and formal group laws.

Three coefficient rings are supported:

* ``integral``: Z concentrated in degree 0 (additive law),
* ``ktheory``: Z[z, 1/z] with z in homological degree 2 (multiplicative law),
* ``generic``: Z[a_ij] on symbols a_ij = a_ji, 2 <= i + j <= D, with a_ij of
  homological degree 2(i + j - 1) (unital, commutative law, no associativity
  imposed).

All arithmetic is over Python integers.  Ring elements are sparse maps from
monomials (sorted tuples of ``(variable, exponent)``) to integers; the
variable ``"z"`` may carry negative exponents.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

THEORIES = ("integral", "ktheory", "generic")

Monomial = tuple  # tuple[tuple[str, int], ...]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted((v, e) for v, e in exps.items() if e))


def var_degree(name: str) -> int:
    """Homological degree of a coefficient-ring generator."""
    if name == "z":
        return 2
    if name.startswith("a:"):
        _, i, j = name.split(":")
        return 2 * (int(i) + int(j) - 1)
    raise KeyError(name)


def var_name(i: int, j: int) -> str:
    i, j = max(i, j), min(i, j)
    return f"a:{i}:{j}"


def render_var(name: str) -> str:
    if name == "z":
        return "z"
    _, i, j = name.split(":")
    if (i, j) == ("1", "1"):
        return "aE"
    if len(i) == 1 and len(j) == 1:
        return f"a{i}{j}"
    return f"a{i}_{j}"


class RingElement:
    """An element of one of the coefficient rings, stored sparsely."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        self.terms: dict[Monomial, int] = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c: int) -> "RingElement":
        return cls({(): int(c)})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "RingElement":
        return cls({((name, power),) if power else (): 1})

    @classmethod
    def coerce(cls, x) -> "RingElement":
        if isinstance(x, RingElement):
            return x
        return cls.const(int(x))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = RingElement.const(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = RingElement.coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return RingElement(out)

    __radd__ = __add__

    def __neg__(self):
        return RingElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-RingElement.coerce(other))

    def __rsub__(self, other):
        return RingElement.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return RingElement({m: c * other for m, c in self.terms.items()})
        other = RingElement.coerce(other)
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return RingElement(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = RingElement.const(1)
        for _ in range(k):
            out = out * self
        return out

    def exact_div(self, d: int) -> "RingElement":
        out = {}
        for m, c in self.terms.items():
            q, r = divmod(c, d)
            if r:
                raise ArithmeticError(f"{self} is not divisible by {d}")
            out[m] = q
        return RingElement(out)

    def constant(self) -> int:
        """The integer coefficient, for elements with a single monomial."""
        if not self.terms:
            return 0
        if len(self.terms) != 1:
            raise ValueError(f"{self} is not a single monomial")
        return next(iter(self.terms.values()))

    def degrees(self) -> set[int]:
        return {sum(var_degree(v) * e for v, e in m) for m in self.terms}

    def degree(self) -> int | None:
        """Homological degree, or None for zero; raises if inhomogeneous."""
        ds = self.degrees()
        if not ds:
            return None
        if len(ds) > 1:
            raise ValueError(f"inhomogeneous element {self}")
        return ds.pop()

    def min_z_power(self) -> int:
        return min((dict(m).get("z", 0) for m in self.terms), default=0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: (_mono_key(mc[0]), mc[1]))

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"RingElement({render(self)!r})"


def _mono_key(m: Monomial):
    deg = sum(var_degree(v) * e for v, e in m)
    return (deg, tuple((render_var(v), e) for v, e in m))


def render_monomial(m: Monomial) -> str:
    parts = []
    for v, e in m:
        name = render_var(v)
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def render(x: RingElement) -> str:
    """Canonical text such as ``3*aE``, ``z^2`` or ``aE^2 + 8*a21``."""
    if x.is_zero():
        return "0"
    out = ""
    for i, (m, c) in enumerate(x.sorted_terms()):
        mono = render_monomial(m)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out


def render_coefficient(x: RingElement) -> tuple[str, str]:
    """Split x into (sign, text) suitable as a multiplier of a product.

    ``2 -> ('+', '2')``, ``-aE -> ('-', 'aE')``, ``aE^2 + 8*a21 ->
    ('+', '(aE^2 + 8*a21)')``; unit coefficients give an empty text.
    """
    items = x.sorted_terms()
    if len(items) == 1:
        m, c = items[0]
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        mono = render_monomial(m)
        if not mono:
            return sign, "" if mag == 1 else str(mag)
        return sign, mono if mag == 1 else f"{mag}*{mono}"
    return "+", f"({render(x)})"


# --------------------------------------------------------------------------
# coefficient rings


@dataclass(frozen=True)
class CoefficientRing:
    """One of the three supported coefficient rings.

    ``bound`` is the generation bound D of the generic ring; it is ignored by
    the other two variants.
    """

    variant: str
    bound: int = 2

    def __post_init__(self):
        if self.variant not in THEORIES:
            raise ValueError(f"unknown theory {self.variant!r}; expected one of {THEORIES}")
        if self.variant == "generic" and self.bound < 2:
            raise ValueError("the generic ring needs a generation bound D >= 2")

    @classmethod
    def integral(cls):
        return cls("integral")

    @classmethod
    def ktheory(cls):
        return cls("ktheory")

    @classmethod
    def generic(cls, bound: int = 2):
        return cls("generic", bound)

    def generators(self) -> list[str]:
        if self.variant == "ktheory":
            return ["z"]
        if self.variant == "generic":
            return [var_name(i, j) for s in range(2, self.bound + 1)
                    for i in range(1, s) for j in [s - i] if i >= j]
        return []

    def one(self) -> RingElement:
        return RingElement.const(1)

    def zero(self) -> RingElement:
        return RingElement()

    def is_connective(self) -> bool:
        return self.variant != "ktheory"

    def check(self, x: RingElement) -> None:
        allowed = set(self.generators())
        for m in x.terms:
            for v, e in m:
                if v not in allowed:
                    raise ValueError(f"{render_var(v)} does not belong to the {self.variant} ring")
                if e < 0 and v != "z":
                    raise ValueError(f"negative power of {render_var(v)}")

    def label(self) -> str:
        return self.variant if self.variant != "generic" else f"generic(D={self.bound})"


# --------------------------------------------------------------------------
# truncated power series


class TruncatedSeries:
    """A power series in one or two variables with exact ring coefficients.

    ``terms`` maps exponent tuples to non-zero ring elements; when
    ``truncation`` is set, all terms of total exponent above it are dropped.
    ``degree`` is the cohomological degree of the series, each variable
    counting 2: the coefficient of an exponent e then has homological
    degree 2|e| - degree.
    """

    __slots__ = ("nvars", "terms", "truncation", "degree")

    def __init__(self, nvars: int, terms: Mapping[tuple, RingElement] | None = None,
                 truncation: int | None = None, degree: int = 2):
        if nvars not in (1, 2):
            raise ValueError("series have one or two variables")
        self.nvars = nvars
        self.truncation = truncation
        self.degree = degree
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} does not match {nvars} variables")
            if truncation is not None and sum(e) > truncation:
                continue
            c = RingElement.coerce(c)
            if c:
                clean[e] = c
        self.terms = clean
        self.check_grading()

    def check_grading(self) -> None:
        for e, c in self.terms.items():
            want = 2 * sum(e) - self.degree
            for d in c.degrees():
                if d != want:
                    raise ValueError(
                        f"coefficient {c} of exponent {e} has degree {d}, expected {want}")

    @classmethod
    def variable(cls, truncation=None):
        return cls(1, {(1,): RingElement.const(1)}, truncation)

    @classmethod
    def zero(cls, nvars=1, truncation=None):
        return cls(nvars, {}, truncation)

    def coefficient(self, *e) -> RingElement:
        return self.terms.get(tuple(e), RingElement())

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def _trunc(self, other):
        ts = [t for t in (self.truncation, other.truncation) if t is not None]
        return min(ts) if ts else None

    def __add__(self, other: "TruncatedSeries"):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, RingElement()) + c
        return TruncatedSeries(self.nvars, out, self._trunc(other), self.degree)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "TruncatedSeries":
        c = RingElement.coerce(c)
        shift = c.degree() or 0
        return TruncatedSeries(self.nvars, {e: v * c for e, v in self.terms.items()},
                               self.truncation, self.degree - shift)

    def __mul__(self, other: "TruncatedSeries"):
        trunc = self._trunc(other)
        out: dict[tuple, RingElement] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if trunc is not None and sum(e) > trunc:
                    continue
                out[e] = out.get(e, RingElement()) + c1 * c2
        return TruncatedSeries(self.nvars, out, trunc, self.degree + other.degree)

    def power(self, k: int, truncation: int | None = None) -> "TruncatedSeries":
        t = truncation if truncation is not None else self.truncation
        out = TruncatedSeries(self.nvars, {(0,) * self.nvars: RingElement.const(1)}, t, 0)
        for _ in range(k):
            out = out * self
            out.truncation = t
        return out

    def truncate(self, precision: int) -> "TruncatedSeries":
        return TruncatedSeries(self.nvars, self.terms, precision, self.degree)

    def constant_term(self) -> RingElement:
        return self.terms.get((0,) * self.nvars, RingElement())

    def max_exponent(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def coefficients(self, precision: int | None = None) -> list[RingElement]:
        """Univariate coefficient list c_0..c_precision."""
        if self.nvars != 1:
            raise ValueError("coefficient lists are for univariate series")
        top = self.max_exponent() if precision is None else precision
        return [self.coefficient(k) for k in range(top + 1)]

    def __str__(self):
        return render_series(self)

    def __repr__(self):
        return f"TruncatedSeries({render_series(self)!r})"


def render_series(f: TruncatedSeries, names=("u", "v")) -> str:
    """Sorted sum ``c * u^k`` with coefficients rendered canonically."""
    if f.is_zero():
        return "0"
    if f.nvars == 2 and names == ("u", "v"):
        names = ("u1", "u2")
    pieces = []
    for e in sorted(f.terms, key=lambda e: (sum(e), tuple(-x for x in e))):
        c = f.terms[e]
        mono = "*".join(
            (names[i] if k == 1 else f"{names[i]}^{k}") for i, k in enumerate(e) if k)
        sign, text = render_coefficient(c)
        body = "*".join(x for x in (text, mono) if x) or "1"
        pieces.append((sign, body))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def substitute(f: TruncatedSeries, g: TruncatedSeries, precision: int) -> TruncatedSeries:
    """f(g(u)) for univariate f, g with g(0) = 0, exact through ``precision``."""
    if f.nvars != 1 or g.nvars != 1:
        raise ValueError("substitute expects univariate series")
    if not g.constant_term().is_zero():
        raise ValueError("cannot substitute a series with non-zero constant term")
    out = TruncatedSeries(1, {(0,): f.coefficient(0)} if f.coefficient(0) else {}, precision,
                          f.degree)
    gpow = TruncatedSeries(1, {(0,): RingElement.const(1)}, precision, 0)
    for k in range(1, precision + 1):
        gpow = gpow * g
        gpow.truncation = precision
        c = f.coefficient(k)
        if c:
            out = out + gpow.scale(c)
    out.truncation = precision
    return TruncatedSeries(1, out.terms, precision, f.degree)


# --------------------------------------------------------------------------
# formal group laws


@dataclass(frozen=True)
class FormalGroupLaw:
    ring: CoefficientRing
    F: TruncatedSeries = field(compare=False)

    def evaluate(self, g: TruncatedSeries, h: TruncatedSeries, precision: int) -> TruncatedSeries:
        """F(g(u), h(u)) as a univariate series through ``precision``."""
        for s in (g, h):
            if not s.constant_term().is_zero():
                raise ValueError("arguments of a formal group law need zero constant term")
        top_i = max((e[0] for e in self.F.terms), default=0)
        top_j = max((e[1] for e in self.F.terms), default=0)
        gp = _powers(g, min(top_i, precision), precision)
        hp = _powers(h, min(top_j, precision), precision)
        out = TruncatedSeries.zero(1, precision)
        for (i, j), c in self.F.terms.items():
            if i + j > precision or i >= len(gp) or j >= len(hp):
                continue
            term = gp[i] * hp[j]
            term.truncation = precision
            out = out + term.scale(c)
        return TruncatedSeries(1, out.terms, precision, 2)

    def r_series(self, r: int, precision: int) -> TruncatedSeries:
        return r_series(self, r, precision)

    def __str__(self):
        return render_series(self.F)


def _powers(g: TruncatedSeries, top: int, precision: int) -> list[TruncatedSeries]:
    out = [TruncatedSeries(1, {(0,): RingElement.const(1)}, precision, 0)]
    for _ in range(top):
        nxt = out[-1] * g
        out.append(TruncatedSeries(1, nxt.terms, precision, nxt.degree))
    return out


def fgl_for(ring: CoefficientRing) -> FormalGroupLaw:
    one = RingElement.const(1)
    terms = {(1, 0): one, (0, 1): one}
    if ring.variant == "ktheory":
        terms[(1, 1)] = RingElement.var("z")
    elif ring.variant == "generic":
        for s in range(2, ring.bound + 1):
            for i in range(1, s):
                terms[(i, s - i)] = RingElement.var(var_name(i, s - i))
    trunc = ring.bound if ring.variant == "generic" else None
    return FormalGroupLaw(ring, TruncatedSeries(2, terms, trunc, 2))


def r_series(law: FormalGroupLaw, r: int, precision: int) -> TruncatedSeries:
    """[r](u) exactly through u^precision.

    For the additive and multiplicative laws [a + b](u) = F([a](u), [b](u)),
    so binary doubling costs O(log r) evaluations of F.  The generic law has
    free coefficients and is not associative, so it keeps the left recursion
    [r](u) = F(u, [r-1](u)).
    """
    if r < 0:
        raise ValueError("r-series are computed for non-negative r")
    if precision < 1:
        raise ValueError("precision must be at least 1")
    if law.ring.variant == "generic":
        return r_series_iterated(law, r, precision)
    cur = TruncatedSeries.zero(1, precision)
    base = TruncatedSeries.variable(precision)
    while r:
        if r & 1:
            cur = law.evaluate(cur, base, precision) if not cur.is_zero() else base
        r >>= 1
        if r:
            base = law.evaluate(base, base, precision)
    if law.ring.variant == "ktheory":
        for c in cur.terms.values():
            assert c.min_z_power() >= 0, "negative z-power in an r-series"
    return cur


def r_series_iterated(law: FormalGroupLaw, r: int, precision: int) -> TruncatedSeries:
    """[r](u) = F(u, [r-1](u)) applied r times; the defining recursion."""
    u = TruncatedSeries.variable(precision)
    cur = TruncatedSeries.zero(1, precision)
    for _ in range(r):
        cur = law.evaluate(u, cur, precision)
    return cur


def multiplicative_r_series_closed(r: int, precision: int) -> TruncatedSeries:
    """z^-1((1 + z u)^r - 1) through u^precision, from the binomial theorem."""
    terms = {(s,): RingElement({(("z", s - 1),) if s > 1 else (): math.comb(r, s)})
             for s in range(1, min(r, precision) + 1)}
    return TruncatedSeries(1, terms, precision, 2)


def theory_ring(name: str, n: int, truncation: int | None = None) -> CoefficientRing:
    """The coefficient ring for a theory name on a weight vector of length n+1.

    The generic ring defaults to generation bound 2n, which covers every
    coefficient that can reach cohomological degree <= 2n.
    """
    if name == "generic":
        return CoefficientRing.generic(truncation or max(2, 2 * n))
    return CoefficientRing(name)


def iter_terms(f: TruncatedSeries) -> Iterable[tuple[int, RingElement]]:
    for (k,), c in sorted(f.terms.items()):
        yield k, c
