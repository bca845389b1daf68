"""Mean-payoff games: exact evaluation, certificates, and a threshold solver.

The library decides who wins the strictly-negative limit-average objective
on finite arenas, produces positional strategies with independently
checkable certificates, embeds negative-drift graphs into a universal
ordered graph, and evaluates mean payoffs exactly.  An HTTP service and a
CLI client expose the same operations.
"""

__version__ = "0.1.0"

from .arena import (
    Arena,
    ArenaError,
    ArenaParseError,
    ArenaValidationError,
    Edge,
    UnknownVertexError,
    Vertex,
    generate_arena,
    parse_arena,
    parse_rational_arena,
    reachable_restriction,
    scale_weights,
    serialize_arena,
)
from .morphism import (
    DIVERGED,
    Morphism,
    MorphismFailure,
    MorphismVerdict,
    SlopeCertificate,
    build_morphism,
    check_morphism,
    compute_potentials,
    find_nonnegative_cycle,
    find_slope_certificate,
)
from .oracle import OracleGuardError, enumerate_strategies, oracle_winning_set
from .payoff import (
    UltimatelyPeriodicWord,
    Variant,
    max_cycle_mean,
    mp_value,
    partial_averages,
    path_avg,
    path_sum,
    satisfies,
)
from .selfcheck import run_selfcheck
from .solver import (
    TOP,
    CertificateFormatError,
    CertificateVerdict,
    ProgressMeasure,
    SimStep,
    SolveResult,
    Violation,
    check_certificate,
    prefix_bound_holds,
    result_from_obj,
    result_to_obj,
    simulate,
    solve,
    value,
)
from .universal import UVertex, lex_compare, min_source_potential, u_edge

__all__ = [
    "Arena",
    "ArenaError",
    "ArenaParseError",
    "ArenaValidationError",
    "CertificateFormatError",
    "CertificateVerdict",
    "DIVERGED",
    "Edge",
    "Morphism",
    "MorphismFailure",
    "MorphismVerdict",
    "OracleGuardError",
    "ProgressMeasure",
    "SimStep",
    "SlopeCertificate",
    "SolveResult",
    "TOP",
    "UVertex",
    "UltimatelyPeriodicWord",
    "UnknownVertexError",
    "Variant",
    "Vertex",
    "Violation",
    "build_morphism",
    "check_certificate",
    "check_morphism",
    "compute_potentials",
    "enumerate_strategies",
    "find_nonnegative_cycle",
    "find_slope_certificate",
    "generate_arena",
    "lex_compare",
    "max_cycle_mean",
    "min_source_potential",
    "mp_value",
    "oracle_winning_set",
    "parse_arena",
    "parse_rational_arena",
    "partial_averages",
    "path_avg",
    "path_sum",
    "prefix_bound_holds",
    "reachable_restriction",
    "result_from_obj",
    "result_to_obj",
    "run_selfcheck",
    "satisfies",
    "scale_weights",
    "serialize_arena",
    "simulate",
    "solve",
    "u_edge",
    "value",
]
