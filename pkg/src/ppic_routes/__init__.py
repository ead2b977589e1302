"""Path-length routing analysis for programmable photonic meshes of 2x2 TBUs."""
from __future__ import annotations

from .advisor import FeasibilityReport, Verdict, check_feasibility, minimal_sizes, minimal_square_size
from .characterize import (
    MeasurementSet,
    ProcessVariation,
    demonstrate_alpha_ambiguity,
    estimate_alpha,
    estimate_length,
    simulate_measurements,
)
from .config import Configuration, TbuState, all_bar, all_cross, from_bits, from_cross_set, to_bits
from .construct import construct_extremal, construct_max_snake, construct_modified_snake, construct_single_path
from .errors import MeshRoutingError
from .mesh import Family, MeshGraph, MeshSpec, NodeId, Side, TbuId, build_mesh
from .oracle import oracle_max_simultaneous, oracle_realizable_lengths, verify_theorem_suite
from .response import PhaseSettings, TbuPhysical, bar_parity, path_response, tbu_transfer
from .theory import (
    multi_path_upper_bound,
    path_sum_spectrum,
    realizability_sets,
    single_path_realizable,
    stats_bounds,
    type_constraints,
)
from .tracer import classify_path, path_stats, trace, trace_all_paths

__version__ = "0.1.0"

__all__ = [
    "Configuration", "FeasibilityReport", "Family", "MeasurementSet", "MeshGraph", "MeshRoutingError",
    "MeshSpec", "NodeId", "PhaseSettings", "ProcessVariation", "Side", "TbuId", "TbuPhysical", "TbuState",
    "Verdict", "all_bar", "all_cross", "bar_parity", "build_mesh", "check_feasibility", "classify_path",
    "construct_extremal", "construct_max_snake", "construct_modified_snake", "construct_single_path",
    "demonstrate_alpha_ambiguity", "estimate_alpha", "estimate_length", "from_bits", "from_cross_set",
    "minimal_sizes", "minimal_square_size", "multi_path_upper_bound", "oracle_max_simultaneous",
    "oracle_realizable_lengths", "path_response", "path_stats", "path_sum_spectrum", "realizability_sets",
    "simulate_measurements", "single_path_realizable", "stats_bounds", "tbu_transfer", "to_bits", "trace",
    "trace_all_paths", "type_constraints", "verify_theorem_suite",
]
