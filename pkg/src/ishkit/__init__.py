"""Exact tools for Shi, Ish and nested difference arrangements.

Everything here runs over the rationals: hyperplanes, characteristic
polynomials, logarithmic derivations and chamber walks are all computed
with :class:`fractions.Fraction` coefficients, never floats.
"""

from .arrangement import (
    Arrangement,
    Graph,
    Hyperplane,
    NestSpec,
    build_deleted,
    build_n_ish,
    build_named,
    cone,
    defining_poly,
    from_spec,
    ish_nest,
    n_from_graph,
)
from .chambers import (
    Chamber,
    SignVector,
    canonical_chamber,
    chamber_of_point,
    distance_poly,
    enumerate_chambers,
    ish_base_chamber,
    wallcross_expected,
)
from .errors import CapacityError
from .exactmath import MultiPoly, UniPoly
from .freeness import (
    Derivation,
    FreenessVerdict,
    NonFreeWitness,
    basis_derivations,
    decide_free,
    is_log_derivation,
    is_nest,
    nest_exponents,
    saito_constant,
    saito_verify,
    verify_nonfree_witness,
)
from .graphs import analyze_graph, athanasiadis_condition, pairwise_condition, survey
from .lattice import char_poly, intersection_poset, is_supersolvable, nest_filtration

__version__ = "0.1.0"

__all__ = [
    "Arrangement",
    "CapacityError",
    "Chamber",
    "Derivation",
    "FreenessVerdict",
    "Graph",
    "Hyperplane",
    "MultiPoly",
    "NestSpec",
    "NonFreeWitness",
    "SignVector",
    "UniPoly",
    "analyze_graph",
    "athanasiadis_condition",
    "basis_derivations",
    "build_deleted",
    "build_n_ish",
    "build_named",
    "canonical_chamber",
    "chamber_of_point",
    "char_poly",
    "cone",
    "decide_free",
    "defining_poly",
    "distance_poly",
    "enumerate_chambers",
    "from_spec",
    "intersection_poset",
    "is_log_derivation",
    "is_nest",
    "is_supersolvable",
    "ish_base_chamber",
    "ish_nest",
    "n_from_graph",
    "nest_exponents",
    "nest_filtration",
    "pairwise_condition",
    "saito_constant",
    "saito_verify",
    "survey",
    "verify_nonfree_witness",
    "wallcross_expected",
]
