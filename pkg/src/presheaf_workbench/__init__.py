"""Finite presheaf computations for interval-based fibration theory.

Index categories, presheaves and their maps, finite limits and colimits,
generating trivial cofibrations built from an interval, a complete lifting
solver, the pullback-stability certificate for generating trivial
cofibrations, pushforward of presheaves, and independent certificate
checking.
"""

from .errors import (ConstructionError, ContractError, LiftFailure, SizeError,
                     ValidationError, WorkbenchError)
from .index import (IndexCategory, preset_cube, preset_poset, preset_simplex,
                    preset_terminal, validate_index_category)
from .presheaf import (Presheaf, PresheafContext, PresheafMap, boundary, codiscrete,
                       compose, compose_all, constant_map, enumerate_maps, find_iso,
                       from_initial, global_element, identity, image, initial, inverse,
                       is_epi, is_iso, is_mono, subpresheaf, terminal, to_terminal,
                       validate_map, validate_presheaf, yoneda, yoneda_element,
                       yoneda_morphism)
from .limits import (ConeResult, Square, check_pullback_square, coequalizer, equalizer,
                     pair, product, pullback, pushout, times, verify_universal)
from .gtc import (GtcSpec, biased_gtc, build_gtc, graph_map, interval_vertex,
                  open_prism_inclusion, prism_gtc)
from .lifting import (FibrationWitness, LiftingProblem, RetractData, all_lifts,
                      check_retract, iter_lifts, lift_via_retract, pullback_witness,
                      rlp_certificate, solve_lift)
from .frobenius import (FrobeniusCube, RetractCertificate, build_cube, construct_H,
                        frobenius_witness, left_fibration_counterexample,
                        pullback_gtc_retract, pushforward, transpose, transpose_inverse)
from .report import Report
from .search import budget_limit

__version__ = "0.1.0"

__all__ = [
    "ConstructionError",
    "ContractError",
    "LiftFailure",
    "SizeError",
    "ValidationError",
    "WorkbenchError",
    "IndexCategory",
    "preset_cube",
    "preset_poset",
    "preset_simplex",
    "preset_terminal",
    "validate_index_category",
    "Presheaf",
    "PresheafContext",
    "PresheafMap",
    "boundary",
    "codiscrete",
    "compose",
    "compose_all",
    "constant_map",
    "enumerate_maps",
    "find_iso",
    "from_initial",
    "global_element",
    "identity",
    "image",
    "initial",
    "inverse",
    "is_epi",
    "is_iso",
    "is_mono",
    "subpresheaf",
    "terminal",
    "to_terminal",
    "validate_map",
    "validate_presheaf",
    "yoneda",
    "yoneda_element",
    "yoneda_morphism",
    "ConeResult",
    "Square",
    "check_pullback_square",
    "coequalizer",
    "equalizer",
    "pair",
    "product",
    "pullback",
    "pushout",
    "times",
    "verify_universal",
    "GtcSpec",
    "biased_gtc",
    "build_gtc",
    "graph_map",
    "interval_vertex",
    "open_prism_inclusion",
    "prism_gtc",
    "FibrationWitness",
    "LiftingProblem",
    "RetractData",
    "all_lifts",
    "check_retract",
    "iter_lifts",
    "lift_via_retract",
    "pullback_witness",
    "rlp_certificate",
    "solve_lift",
    "FrobeniusCube",
    "RetractCertificate",
    "build_cube",
    "construct_H",
    "frobenius_witness",
    "left_fibration_counterexample",
    "pullback_gtc_retract",
    "pushforward",
    "transpose",
    "transpose_inverse",
    "Report",
    "budget_limit",
]
