"""Command-line front end.

Exit status: 0 on success, 1 for invalid input or unsupported combinations,
2 when an internal consistency check fails.
"""
from __future__ import annotations

import argparse
import sys

from wpscoh import serialize, verify as verify_mod
from wpscoh.fglcore import THEORIES
from wpscoh.homology import assemble_homology, dualize
from wpscoh.presentation import (
    ConsistencyError,
    kawasaki_ring,
    presentation_for,
)
from wpscoh.reassembly import UnsupportedShape, assemble, colimit_check
from wpscoh.weights import (
    WeightError,
    WeightVector,
    classify,
    extraction,
    insertion,
    is_divisive,
    is_pairwise_coprime,
    kawasaki_invariants,
    lens_cohomology,
    normalise,
    p_content,
    star_form,
)

# the colimit check tensors (n+1)^m generators for m primes
COLIMIT_LIMIT = 4096

COMMANDS = ("invariants", "lens", "presentation", "kawasaki", "reassemble", "homology", "maps", "verify")


def _chi(text: str) -> WeightVector:
    try:
        return WeightVector.parse(text)
    except WeightError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wpscoh",
        description="Cohomology and homology of weighted projective spaces")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, chi_required: bool = True, theory: bool = False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--chi", type=_chi, required=chi_required,
                       help="weight vector, e.g. 3,4,5")
        if theory:
            p.add_argument("--theory", choices=THEORIES, default="integral")
            p.add_argument("--truncation", type=int, default=None,
                           help="generation bound D for the generic theory")
        p.add_argument("--format", choices=("text", "json"), default="text")
        return p

    add("invariants", "gcd, lcm, divisibility class and Kawasaki invariants")
    add("lens", "cohomology of the weighted lens space L(chi_n; chi')")
    add("presentation", "iterated Thom presentation of a divisive weight vector", theory=True)
    add("kawasaki", "Kawasaki's integral presentation")
    add("reassemble", "ring as an intersection of p-primary parts", theory=True)
    add("homology", "homology coalgebra", theory=True)
    add("maps", "p-contents and the extraction/insertion maps")
    v = add("verify", "run the property suite", chi_required=False)
    v.add_argument("--seed", type=int, default=verify_mod.DEFAULT_SEED)
    v.add_argument("--samples", type=int, default=1000)
    v.add_argument("--only", action="append", choices=verify_mod.PROPERTIES,
                   help="run only this property (repeatable)")
    return parser


# --------------------------------------------------------------------------
# commands: each returns (text, json-able object, exit status)


def cmd_invariants(args):
    chi = args.chi
    g, l, cls = classify(chi)
    inv = kawasaki_invariants(chi)
    data = {
        "chi": list(chi.coords),
        "g": g,
        "l": l,
        "normalised": cls.normalised,
        "weakly_divisive": cls.weakly_divisive,
        "divisive": cls.divisive,
        "p_primary": cls.p_primary,
        "q": list(cls.q_sequence) if cls.q_sequence is not None else None,
        "lj": list(inv.lj),
        "mj": list(inv.mj),
        "normal_form": list(normalise(chi).coords),
        "star_form": list(star_form(chi).coords),
        "primes": chi.primes(),
    }
    kinds = [k for k, on in (("normalised", cls.normalised), ("weakly divisive", cls.weakly_divisive),
                             ("divisive", cls.divisive)) if on]
    lines = [
        f"chi = ({chi})",
        f"g = {g}, l = {l}",
        "class: " + (", ".join(kinds) if kinds else "none"),
    ]
    if cls.p_primary:
        lines.append(f"{cls.p_primary}-primary")
    if cls.q_sequence is not None:
        lines.append(f"q = ({','.join(map(str, cls.q_sequence))})")
    lines += [
        "l_j = " + ", ".join(map(str, inv.lj)),
        "m_j = " + ", ".join(map(str, inv.mj)),
        f"normalised: ({normalise(chi)}), divisive form: ({star_form(chi)})",
    ]
    return "\n".join(lines), data, 0


def cmd_lens(args):
    lc = lens_cohomology(args.chi)
    groups = lc.groups()
    data = {"chi": list(args.chi.coords), "dimension": lc.dimension,
            "torsion": list(lc.torsion), "groups": {str(k): v for k, v in groups.items()}}
    lines = [f"L({args.chi[-1]}; {','.join(map(str, args.chi.coords[:-1]))}), dimension {lc.dimension}"]
    lines += [f"  H^{k} = {v}" for k, v in sorted(groups.items())]
    return "\n".join(lines), data, 0


def _presentation(args):
    pres, notice = presentation_for(args.chi, args.theory, args.truncation)
    if notice:
        print(notice, file=sys.stderr)
    return pres


def cmd_presentation(args):
    pres = _presentation(args)
    pres.check_homogeneity()
    bad = pres.associativity_failures()
    data = {
        "chi": list(pres.chi.coords),
        "theory": pres.theory.label(),
        "relations": [r.render() for r in pres.relations()],
        "table": [
            {"j": j, "k": k, "terms": [{"m": m, "coeff": str(c)} for m, c in pres.table[j][k].items()]}
            for j in range(pres.n + 1) for k in range(j, pres.n + 1)
        ],
        "associative": not bad,
    }
    text = pres.render()
    if bad and pres.theory.variant != "generic":
        raise ConsistencyError(f"multiplication table is not associative at {bad[0]}")
    if bad:
        text += f"\nnote: the generic table is not associative (first failure at {bad[0]})"
    return text, data, 0


def cmd_kawasaki(args):
    kr = kawasaki_ring(args.chi)
    data = {
        "chi": list(kr.chi.coords),
        "lj": list(kr.lj[1:]),
        "mj": list(kr.mj[1:]),
        "relations": [{"lhs": f"v1^{j}", "rhs": [{"coeff": kr.mj[j], "gen": f"v{j}"}]}
                      for j in range(2, kr.n + 1)],
    }
    return kr.render(), data, 0


def cmd_reassemble(args):
    if args.theory == "generic":
        raise UnsupportedShape("reassembly is implemented for integral and ktheory")
    ring = assemble(args.chi, args.theory)
    data = {
        "chi": list(args.chi.coords),
        "theory": args.theory,
        "generators": [{"degree": 2 * j, "vector": ring.vector_full(j)} for j in range(1, ring.lattice.n + 1)],
        "relations": [{"lhs": f"y1^{j}", "rhs": [{"coeff": c, "gen": f"y{m}"} for c, m in ring.relations[j]]}
                      for j in range(2, ring.lattice.n + 1)],
    }
    text = ring.render()
    parts = len(normalise(args.chi).primes())
    if args.theory == "integral" and (ring.lattice.n + 1) ** parts <= COLIMIT_LIMIT:
        col = colimit_check(args.chi)
        if not col.ok:
            raise ConsistencyError(col.render())
        text += "\ncolimit agrees with the intersection"
    return text, data, 0


def cmd_homology(args):
    chi = args.chi
    norm = normalise(chi)
    if args.theory == "integral" or (args.theory == "ktheory" and is_pairwise_coprime(norm)):
        hom = assemble_homology(chi, args.theory)
        return hom.render(), hom.to_json(), 0
    if args.theory == "ktheory" and not is_divisive(chi):
        raise UnsupportedShape(
            f"K-theory homology needs divisive or pairwise coprime weights; ({chi}) is neither")
    coalg = dualize(_presentation(args))
    return coalg.render(), coalg.to_json(), 0


def cmd_maps(args):
    chi = args.chi
    rows = []
    lines = [f"chi = ({chi})"]
    for p in chi.primes():
        ex, ins = extraction(chi, p), insertion(chi, p)
        rows.append({"prime": p, "content": list(p_content(chi, p).coords),
                     "extraction": {"s": ex.s, "exponents": list(ex.exponents), "order": ex.group_order},
                     "insertion": {"s": ins.s, "exponents": list(ins.exponents), "order": ins.group_order}})
        lines.append(f"  p = {p}: content ({p_content(chi, p)}), "
                     f"extraction exponents ({','.join(map(str, ex.exponents))}), "
                     f"insertion exponents ({','.join(map(str, ins.exponents))})")
    return "\n".join(lines), {"chi": list(chi.coords), "primes": rows}, 0


def cmd_verify(args):
    report = verify_mod.run(seed=args.seed, samples=args.samples, only=args.only, chi=args.chi)
    return report.render(), report.to_json(), 0 if report.ok else 2


HANDLERS = {
    "invariants": cmd_invariants,
    "lens": cmd_lens,
    "presentation": cmd_presentation,
    "kawasaki": cmd_kawasaki,
    "reassemble": cmd_reassemble,
    "homology": cmd_homology,
    "maps": cmd_maps,
    "verify": cmd_verify,
}


def dispatch(args) -> tuple[str, int]:
    """Run a parsed request and return (stdout text, exit status)."""
    try:
        text, data, status = HANDLERS[args.command](args)
    except (WeightError, ValueError) as exc:
        return f"error: {exc}", 1
    except ArithmeticError as exc:
        return f"consistency failure: {exc}", 2
    if args.format == "json":
        return serialize.dumps(data), status
    return text + "\n", status


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    out, status = dispatch(args)
    stream = sys.stdout if status == 0 or args.command == "verify" else sys.stderr
    stream.write(out if out.endswith("\n") else out + "\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
