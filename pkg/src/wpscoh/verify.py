"""Seeded property suite run by ``wpscoh verify``.

Each property takes a weight vector (or nothing, for the chi-independent
ones) and returns None on success or a short failure message.
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Optional

from wpscoh import lattice
from wpscoh.fglcore import CoefficientRing, fgl_for, r_series
from wpscoh.homology import duality_failures, dualize, index_agreement
from wpscoh.presentation import (
    build_presentation,
    kawasaki_ring,
    lj_divisibility_ok,
    rational_form,
    verify_divisive_iso,
)
from wpscoh.reassembly import (
    assemble,
    colimit_check,
    index_multiplicativity,
    integral_images,
    primary_parts,
)
from wpscoh.weights import (
    WeightVector,
    as_weights,
    is_pairwise_coprime,
    kawasaki_invariants,
    normalise,
    p_content,
    star_form,
)

DEFAULT_SEED = 20240917
PRESENTATION_MAX_N = 4

Check = Callable[[WeightVector], Optional[str]]


def random_weights(rng: random.Random, max_n: int = 5, max_coord: int = 100) -> WeightVector:
    n = rng.randint(1, max_n)
    return WeightVector(tuple(rng.randint(1, max_coord) for _ in range(n + 1)))


# --------------------------------------------------------------------------
# per-chi properties


def check_basic_invariants(chi: WeightVector) -> Optional[str]:
    inv = kawasaki_invariants(chi)
    if inv.lj[0] != inv.l or inv.mj[0] != 1:
        return f"l_1 = {inv.lj[0]}, m_1 = {inv.mj[0]}, l = {inv.l}"
    if inv.lj[-1] != math.prod(chi) // inv.g:
        return f"l_n = {inv.lj[-1]} != prod/g"
    return None


def check_mj_multiplicativity(chi: WeightVector) -> Optional[str]:
    inv = kawasaki_invariants(chi)
    lj = [1] * chi.n
    mj = [1] * chi.n
    for p in chi.primes():
        part = kawasaki_invariants(p_content(chi, p))
        lj = [a * b for a, b in zip(lj, part.lj)]
        mj = [a * b for a, b in zip(mj, part.mj)]
    if tuple(lj) != inv.lj:
        return f"l_j {inv.lj} != product over primes {tuple(lj)}"
    if tuple(mj) != inv.mj:
        return f"m_j {inv.mj} != product over primes {tuple(mj)}"
    return None


def check_lj_divisibility(chi: WeightVector) -> Optional[str]:
    return None if lj_divisibility_ok(chi) else "l_i l_j not divisible by l_{i+j}"


def _divisive_forms(chi: WeightVector) -> list[WeightVector]:
    if chi.n > PRESENTATION_MAX_N:
        return []
    return [star_form(chi)]


def check_associativity(chi: WeightVector) -> Optional[str]:
    for d in _divisive_forms(chi):
        for theory in ("integral", "ktheory"):
            bad = build_presentation(d, theory).associativity_failures()
            if bad:
                return f"{theory} table for {d} fails on {bad[0]}"
    return None


def check_duality(chi: WeightVector) -> Optional[str]:
    for d in _divisive_forms(chi):
        for theory in ("integral", "ktheory"):
            pres = build_presentation(d, theory)
            coalg = dualize(pres)
            if duality_failures(pres, coalg):
                return f"{theory} pairing fails for {d}"
            if not (coalg.counit_ok() and coalg.cocommutative() and coalg.homogeneous()):
                return f"{theory} coalgebra invariants fail for {d}"
            if coalg.coassociativity_failures():
                return f"{theory} coalgebra for {d} is not coassociative"
    kr = kawasaki_ring(chi)
    if duality_failures(kr):
        return f"Kawasaki pairing fails for {normalise(chi)}"
    if normalise(chi).n <= 3 and is_pairwise_coprime(normalise(chi)):
        if not index_agreement(chi, "ktheory").ok:
            return "K-theory homology and cohomology indices disagree"
    return None


def check_rational_form(chi: WeightVector) -> Optional[str]:
    for d in _divisive_forms(chi):
        rep = rational_form(build_presentation(d, "integral"))
        if not rep.ok:
            return "; ".join(rep.problems)
    return None


def check_iso(chi: WeightVector) -> Optional[str]:
    for d in _divisive_forms(chi):
        rep = verify_divisive_iso(d, raise_on_failure=False)
        if not rep.ok:
            return "; ".join(rep.problems)
    return None


def check_reassembly(chi: WeightVector) -> Optional[str]:
    norm = normalise(chi)
    ring = assemble(norm, "integral")
    want = kawasaki_invariants(norm).lj
    got = tuple(ring.vector_full(j)[j] for j in range(1, norm.n + 1))
    if got != want:
        return f"integral intersection {got} != l_j {want}"
    if norm.n <= 2 and len(norm.primes()) <= 3 and not colimit_check(norm).ok:
        return "colimit and limit disagree"
    return None


def check_index_multiplicativity(chi: WeightVector) -> Optional[str]:
    norm = normalise(chi)
    lats = [integral_images(pi, norm.n) for pi in primary_parts(norm).values()]
    for a, b in combinations(lats, 2):
        if not index_multiplicativity(a, b):
            return "coprime lattice indices are not multiplicative"
    return None


# --------------------------------------------------------------------------
# chi-independent properties


def check_rseries_homomorphism(_chi=None) -> Optional[str]:
    for ring in (CoefficientRing.integral(), CoefficientRing.ktheory()):
        law = fgl_for(ring)
        prec = 6
        series = {a: r_series(law, a, prec) for a in range(0, 17)}
        for a in range(1, 9):
            for b in range(1, 9):
                if law.evaluate(series[a], series[b], prec) != series[a + b]:
                    return f"[{a}+{b}] != F([{a}],[{b}]) for {ring.variant}"
    return None


def _random_lattice(rng: random.Random, dim: int) -> list[list[int]]:
    rows = [[rng.randint(-6, 6) for _ in range(dim)] for _ in range(dim)]
    for i in range(dim):
        rows[i][i] = rng.randint(1, 9) * rng.choice((1, -1))
        for j in range(i):
            rows[i][j] = 0
    return lattice.hnf(rows)


def lattice_laws(rng: random.Random, trials: int = 50) -> Optional[str]:
    for _ in range(trials):
        dim = rng.randint(1, 4)
        a, b, c = (_random_lattice(rng, dim) for _ in range(3))
        if lattice.intersect(a, a) != a:
            return f"intersection not idempotent on {a}"
        if lattice.intersect(a, b) != lattice.intersect(b, a):
            return f"intersection not commutative on {a}, {b}"
        if lattice.intersect(lattice.intersect(a, b), c) != lattice.intersect(a, lattice.intersect(b, c)):
            return "intersection not associative"
        if math.gcd(lattice.index(a), lattice.index(b)) == 1:
            if lattice.index(lattice.intersect(a, b)) != lattice.index(a) * lattice.index(b):
                return f"coprime indices not multiplicative for {a}, {b}"
    return None


PER_CHI: dict[str, Check] = {
    "basic-invariants": check_basic_invariants,
    "mj-multiplicativity": check_mj_multiplicativity,
    "lj-divisibility": check_lj_divisibility,
    "associativity": check_associativity,
    "duality": check_duality,
    "rational-form": check_rational_form,
    "thom-kawasaki-iso": check_iso,
    "integral-reassembly": check_reassembly,
    "index-multiplicativity": check_index_multiplicativity,
}
GLOBAL = ("rseries-homomorphism", "lattice-laws")
PROPERTIES = tuple(PER_CHI) + GLOBAL


@dataclass
class PropertyResult:
    name: str
    checked: int = 0
    counterexample: Optional[str] = None
    message: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.message is None


@dataclass
class VerifyReport:
    seed: int
    samples: int
    results: list[PropertyResult] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def render(self) -> str:
        noun = "weight vector" if self.samples == 1 else "weight vectors"
        lines = [f"verify: seed {self.seed}, {self.samples} {noun}"]
        for r in self.results:
            status = "pass" if r.ok else "FAIL"
            line = f"  {status}  {r.name} ({r.checked} checked)"
            if not r.ok:
                line += f": chi = {r.counterexample}: {r.message}" if r.counterexample else f": {r.message}"
            lines.append(line)
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "samples": self.samples,
            "ok": self.ok,
            "properties": [
                {"name": r.name, "ok": r.ok, "checked": r.checked,
                 "counterexample": r.counterexample, "message": r.message}
                for r in self.results
            ],
        }


def run(seed: int = DEFAULT_SEED, samples: int = 1000, only: list[str] | None = None,
        chi=None, max_n: int = 5, max_coord: int = 100) -> VerifyReport:
    names = list(PROPERTIES) if not only else list(only)
    unknown = [n for n in names if n not in PROPERTIES]
    if unknown:
        raise ValueError(f"unknown properties {unknown}; choose from {', '.join(PROPERTIES)}")
    rng = random.Random(seed)
    if chi is not None:
        vectors = [as_weights(chi)]
    else:
        vectors = [random_weights(rng, max_n, max_coord) for _ in range(samples)]
    t0 = time.perf_counter()
    report = VerifyReport(seed, len(vectors))
    for name in names:
        res = PropertyResult(name)
        if name == "rseries-homomorphism":
            res.checked = 1
            res.message = check_rseries_homomorphism()
        elif name == "lattice-laws":
            res.checked = 1
            res.message = lattice_laws(random.Random(seed))
        else:
            check = PER_CHI[name]
            for v in vectors:
                res.checked += 1
                try:
                    msg = check(v)
                except ArithmeticError as exc:
                    msg = f"{type(exc).__name__}: {exc}"
                if msg:
                    res.counterexample, res.message = str(v), msg
                    break
        report.results.append(res)
    report.seconds = time.perf_counter() - t0
    return report
