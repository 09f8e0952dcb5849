"""Exact cohomology and homology of weighted projective spaces."""
from wpscoh.weights import (
    WeightError,
    WeightVector,
    classify,
    kawasaki_invariants,
    lens_cohomology,
    normalise,
    star_form,
)
from wpscoh.presentation import (
    ConsistencyError,
    ThomPresentation,
    build_presentation,
    kawasaki_ring,
    verify_divisive_iso,
)
from wpscoh.reassembly import assemble, colimit_check
from wpscoh.homology import assemble_homology, cpn_coalgebra, dualize, pushforward

__version__ = "0.1.0"

__all__ = [
    "WeightError", "WeightVector", "classify", "kawasaki_invariants", "lens_cohomology",
    "normalise", "star_form", "ConsistencyError", "ThomPresentation", "build_presentation",
    "kawasaki_ring", "verify_divisive_iso", "assemble", "colimit_check", "assemble_homology",
    "cpn_coalgebra", "dualize", "pushforward",
]
