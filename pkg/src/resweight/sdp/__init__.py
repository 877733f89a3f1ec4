"""Built-in semidefinite solver and the resource-theory encodings."""
from .ipm import SolverOptions, StandardSdp, solve_standard, svec_space
from .problems import (
    SdpProblem,
    SolverError,
    SdpSolution,
    encode_asymmetry_weight,
    encode_asymmetry_weight_dual,
    encode_coherence_weight,
    encode_coherence_weight_dual,
    encode_robustness,
    map_apply,
    solve,
)

__all__ = [
    "SolverOptions",
    "StandardSdp",
    "solve_standard",
    "svec_space",
    "SdpProblem",
    "SolverError",
    "SdpSolution",
    "solve",
    "map_apply",
    "encode_coherence_weight",
    "encode_coherence_weight_dual",
    "encode_asymmetry_weight",
    "encode_asymmetry_weight_dual",
    "encode_robustness",
]
