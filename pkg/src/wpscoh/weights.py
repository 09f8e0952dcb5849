"""Arithmetic of weight vectors.

Invariants (gcd, lcm, Kawasaki's h_J, l_j, m_j), divisibility classes,
normalisation, p-primary decomposition, the maps e(chi/omega) between
weighted projective spaces, and the cohomology of weighted lens spaces.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from typing import Iterable, Sequence

from sympy import factorint

from wpscoh import _kernels


class WeightError(ValueError):
    """Raised for malformed or unsupported weight vectors."""


@dataclass(frozen=True)
class WeightVector:
    """A sequence (chi_0, ..., chi_n) of positive integers."""

    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        if not coords:
            raise WeightError("a weight vector needs at least one coordinate")
        if any(c < 1 for c in coords):
            raise WeightError(f"weights must be positive integers, got {coords}")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def parse(cls, text: str) -> "WeightVector":
        """Parse the comma-separated form used on the command line, e.g. ``3,4,5``."""
        parts = [p.strip() for p in str(text).split(",")]
        if not parts or any(not p for p in parts):
            raise WeightError(f"cannot parse weight vector {text!r}")
        try:
            values = [int(p) for p in parts]
        except ValueError:
            raise WeightError(f"cannot parse weight vector {text!r}") from None
        return cls(tuple(values))

    @classmethod
    def ones(cls, length: int) -> "WeightVector":
        return cls((1,) * length)

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __mul__(self, other: "WeightVector") -> "WeightVector":
        _check_lengths(self, other)
        return WeightVector(tuple(a * b for a, b in zip(self, other)))

    def __str__(self):
        return ",".join(str(c) for c in self.coords)

    def primes(self) -> list[int]:
        ps: set[int] = set()
        for c in self.coords:
            ps.update(factorint(c))
        return sorted(ps)


def as_weights(chi) -> WeightVector:
    if isinstance(chi, WeightVector):
        return chi
    if isinstance(chi, str):
        return WeightVector.parse(chi)
    return WeightVector(tuple(chi))


def _check_lengths(a: WeightVector, b: WeightVector):
    if len(a) != len(b):
        raise WeightError(f"weight vectors of different lengths: {a} and {b}")


def gcd_all(values: Iterable[int]) -> int:
    return reduce(math.gcd, values, 0)


def lcm_all(values: Iterable[int]) -> int:
    return reduce(math.lcm, values, 1)


def valuation(c: int, p: int) -> int:
    v = 0
    while c % p == 0:
        c //= p
        v += 1
    return v


# --------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class DivisibilityClass:
    normalised: bool
    weakly_divisive: bool
    divisive: bool
    p_primary: int | None = None
    q_sequence: tuple[int, ...] | None = None


def is_normalised(chi) -> bool:
    chi = as_weights(chi)
    if len(chi) == 1:
        return chi.coords == (1,)
    return all(
        gcd_all(c for i, c in enumerate(chi) if i != j) == 1 for j in range(len(chi))
    )


def is_divisive(chi) -> bool:
    chi = as_weights(chi)
    return all(chi[j] % chi[j - 1] == 0 for j in range(1, len(chi)))


def classify(chi) -> tuple[int, int, DivisibilityClass]:
    """Return ``(g, l, DivisibilityClass)`` for chi."""
    chi = as_weights(chi)
    g = gcd_all(chi)
    l = lcm_all(chi)
    weakly = all(chi[-1] % c == 0 for c in chi.coords[:-1])
    divisive = is_divisive(chi)
    ps = chi.primes()
    p_primary = ps[0] if len(ps) == 1 else None
    q = tuple(chi[j] // chi[j - 1] for j in range(1, len(chi))) if divisive else None
    return g, l, DivisibilityClass(is_normalised(chi), weakly, divisive, p_primary, q)


# --------------------------------------------------------------------------
# normalisation and p-primary parts


def normalise(chi) -> WeightVector:
    """Reduce chi to the normalised weight vector of an isomorphic variety.

    For each prime p with sorted valuations v_(0) <= v_(1) <= ..., every
    coordinate loses p^min(v_i, v_(1)); afterwards at least two coordinates
    are prime to p, which is equivalent to the subset-gcd condition.
    """
    chi = as_weights(chi)
    out = list(chi.coords)
    for p in chi.primes():
        vals = [valuation(c, p) for c in chi.coords]
        second = sorted(vals)[1] if len(vals) > 1 else vals[0]
        for i, v in enumerate(vals):
            out[i] //= p ** min(v, second)
    return WeightVector(tuple(out))


def p_content(chi, p: int) -> WeightVector:
    chi = as_weights(chi)
    return WeightVector(tuple(p ** valuation(c, p) for c in chi))


@dataclass(frozen=True)
class PrimaryPart:
    prime: int
    content: WeightVector
    cofactor: WeightVector

    @property
    def cofactor_lcm(self) -> int:
        return lcm_all(self.cofactor)


def primary_decomposition(chi) -> dict[int, PrimaryPart]:
    """Map each prime of chi to its p-content and the prime-to-p cofactor."""
    chi = as_weights(chi)
    parts = {}
    for p in chi.primes():
        content = p_content(chi, p)
        cofactor = WeightVector(tuple(c // d for c, d in zip(chi, content)))
        parts[p] = PrimaryPart(p, content, cofactor)
    return parts


def p_primary_normal_form(pi) -> WeightVector:
    """Sort a normalised p-primary vector into the shape (1, 1, p^k2, ..., p^kn)."""
    pi = as_weights(pi)
    ps = pi.primes()
    if len(ps) > 1:
        raise WeightError(f"{pi} is not p-primary (primes {ps})")
    if not is_normalised(pi):
        raise WeightError(f"{pi} is not normalised; apply normalise() first")
    return WeightVector(tuple(sorted(pi.coords)))


def star_form(chi) -> WeightVector:
    """Divisive representative of the homotopy type of P(chi).

    Normalises, sorts every p-content into non-decreasing order and
    multiplies the sorted contents back together coordinatewise.
    """
    chi = normalise(chi)
    out = [1] * len(chi)
    for p in chi.primes():
        for i, c in enumerate(sorted(p_content(chi, p).coords)):
            out[i] *= c
    return WeightVector(tuple(out))


def is_pairwise_coprime(chi) -> bool:
    chi = as_weights(chi)
    return all(math.gcd(a, b) == 1 for a, b in combinations(chi.coords, 2))


# --------------------------------------------------------------------------
# Kawasaki invariants


@dataclass(frozen=True)
class KawasakiInvariants:
    chi: WeightVector
    g: int
    l: int
    hJ: dict[tuple[int, ...], int] = field(repr=False)
    lj: tuple[int, ...]
    mj: tuple[int, ...]

    def l_at(self, j: int) -> int:
        """l_j with the convention l_0 = 1."""
        return 1 if j == 0 else self.lj[j - 1]

    def m_at(self, j: int) -> int:
        return 1 if j == 0 else self.mj[j - 1]


def h_J(chi, J: Sequence[int]) -> int:
    chi = as_weights(chi)
    vals = [chi[j] for j in J]
    return math.prod(vals) // gcd_all(vals)


def lj_sequence(chi) -> tuple[int, ...]:
    """l_1, ..., l_n where l_j is the lcm of h_J over all (j+1)-subsets J."""
    chi = as_weights(chi)
    table = _kernels.subset_lcms(chi.coords)
    return tuple(table[j + 1] for j in range(1, len(chi)))


def kawasaki_invariants(chi) -> KawasakiInvariants:
    chi = as_weights(chi)
    g = gcd_all(chi)
    l = lcm_all(chi)
    idx = range(len(chi))
    hJ = {J: h_J(chi, J) for k in range(1, len(chi) + 1) for J in combinations(idx, k)}
    lj = lj_sequence(chi)
    mj = []
    for j, lv in enumerate(lj, start=1):
        q, r = divmod(l**j, lv)
        if r:
            raise ArithmeticError(f"l^{j} not divisible by l_{j} for {chi}")
        mj.append(q)
    return KawasakiInvariants(chi, g, l, hJ, lj, tuple(mj))


# --------------------------------------------------------------------------
# weighted lens spaces


@dataclass(frozen=True)
class LensCohomology:
    """Integral cohomology of the lens space L(chi_n; chi').

    ``torsion[k-1]`` is the order s_k of the cyclic group H^{2k}; H^{2n-1}
    is infinite cyclic and every other positive degree vanishes.
    """

    chi: WeightVector
    dimension: int
    torsion: tuple[int, ...]
    top: int = 1

    def groups(self) -> dict[int, str]:
        out = {0: "Z"}
        for k, s in enumerate(self.torsion, start=1):
            out[2 * k] = "0" if s == 1 else f"Z/{s}"
        out[self.dimension] = "Z"
        return out


def lens_cohomology(chi) -> LensCohomology:
    chi = as_weights(chi)
    if len(chi) < 2:
        raise WeightError("lens spaces need a weight vector of length at least 2")
    n = chi.n
    head = WeightVector(chi.coords[:-1])
    full = lj_sequence(chi)
    prime = lj_sequence(head)
    torsion = []
    for k in range(1, n):
        s, r = divmod(full[k - 1], prime[k - 1])
        if r:
            raise ArithmeticError(f"l_{k}({chi}) not divisible by l_{k}({head})")
        torsion.append(s)
    return LensCohomology(chi, 2 * n - 1, tuple(torsion))


# --------------------------------------------------------------------------
# the maps e(chi/omega)


@dataclass(frozen=True)
class MapDescriptor:
    """The map e(target/source): P(source) -> P(target).

    Homogeneous coordinates are raised to ``exponents``; ``s`` is the least
    positive integer with source dividing s * target.
    """

    source: WeightVector
    target: WeightVector
    s: int
    exponents: tuple[int, ...]

    @property
    def group_order(self) -> int:
        return math.prod(self.exponents)


def quotient(chi, omega) -> MapDescriptor:
    """Describe e(chi/omega) from P(omega) to P(chi)."""
    chi, omega = as_weights(chi), as_weights(omega)
    _check_lengths(chi, omega)
    s = lcm_all(w // math.gcd(w, c) for w, c in zip(omega, chi))
    exps = tuple(s * c // w for c, w in zip(chi, omega))
    return MapDescriptor(omega, chi, s, exps)


def extraction(chi, p: int) -> MapDescriptor:
    """p-extraction P(chi) -> P(_p chi)."""
    chi = as_weights(chi)
    return quotient(p_content(chi, p), chi)


def insertion(chi, p: int) -> MapDescriptor:
    """p-insertion P(_p chi) -> P(chi)."""
    chi = as_weights(chi)
    return quotient(chi, p_content(chi, p))


@dataclass(frozen=True)
class Composition:
    composite: tuple[int, ...]
    direct: tuple[int, ...]
    s_prime: int
    s_double_prime: int


def _constant_ratio(num: Sequence[int], den: Sequence[int]) -> int:
    ratios = set()
    for a, b in zip(num, den):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"exponents {num} are not integral multiples of {den}")
        ratios.add(q)
    if len(ratios) != 1:
        raise ArithmeticError(f"non-constant exponent ratio {num} / {den}")
    return ratios.pop()


def compose(omega, sigma, chi) -> Composition:
    """Factor e(chi/sigma) o e(sigma/omega) as a power map after e(chi/omega).

    The factorisation is checked on exponent vectors, so no reading of the
    argument order of s(., .) is assumed.  ``s_double_prime`` is the power
    map of the round trip e(omega/chi) o e(chi/omega).
    """
    omega, sigma, chi = as_weights(omega), as_weights(sigma), as_weights(chi)
    first = quotient(sigma, omega)
    second = quotient(chi, sigma)
    composite = tuple(a * b for a, b in zip(first.exponents, second.exponents))
    direct = quotient(chi, omega)
    s_prime = _constant_ratio(composite, direct.exponents)
    back = quotient(omega, chi)
    trip = tuple(a * b for a, b in zip(direct.exponents, back.exponents))
    s_dd = _constant_ratio(trip, (1,) * len(trip))
    if s_dd != direct.s * back.s:
        raise ArithmeticError(f"round trip power {s_dd} != s(chi,omega) s(omega,chi)")
    return Composition(composite, direct.exponents, s_prime, s_dd)
