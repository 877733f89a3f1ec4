"""Weight-based quantifiers of quantum coherence and asymmetry.

The package computes the weight, robustness, l1, and relative-entropy
measures of coherence (and their asymmetry analogues for finite unitary
representations) with a built-in primal-dual interior-point SDP solver,
returning certified values together with witness and decomposition
certificates.  `resweight.harness` drives reproducible batch experiments;
the `rw` console script fronts both layers.
"""

from .linalg import (assert_density_matrix, assert_hermitian, clamp_spectrum,
                     eig_hermitian, hermitianize, hs_norm_sq, is_psd, kron,
                     matrix_from_json, matrix_to_json, op_norm, partial_trace,
                     von_neumann_entropy)
from .states import (KrausChannel, UnitaryRep, XStateSpec, dephase,
                     derived_stream, generalized_x, gisin, group_average,
                     group_mixture_kraus, haar_random_mixed, haar_random_pure,
                     haar_random_unitary, maximally_coherent,
                     parse_state_spec, random_incoherent_kraus, random_x_spec,
                     rep_cyclic, rep_swap, werner)
from .sdp import (SdpProblem, SdpSolution, SolverError, SolverOptions,
                  encode_asymmetry_weight, encode_asymmetry_weight_dual,
                  encode_coherence_weight, encode_coherence_weight_dual,
                  encode_robustness, map_apply, solve)
from .measures import (MeasureReport, asymmetry_weight, coherence_weight,
                       hs_lower_bound, l1_coherence, negating_phases,
                       qubit_cw_oracle, rel_entropy_asymmetry,
                       rel_entropy_coherence, robustness_asymmetry,
                       robustness_coherence, swap_ar_oracle, swap_aw_oracle,
                       witness_evaluate)
from .harness import (ExperimentConfig, ExperimentResult, run_closed_forms,
                      run_experiment, run_property_suite, run_scatter,
                      run_violation_search)

__version__ = "0.1.0"

__all__ = [
    "assert_density_matrix", "assert_hermitian", "clamp_spectrum",
    "eig_hermitian", "hermitianize", "hs_norm_sq", "is_psd", "kron",
    "matrix_from_json", "matrix_to_json", "op_norm", "partial_trace",
    "von_neumann_entropy",
    "KrausChannel", "UnitaryRep", "XStateSpec", "dephase", "derived_stream",
    "generalized_x", "gisin", "group_average", "group_mixture_kraus",
    "haar_random_mixed", "haar_random_pure", "haar_random_unitary",
    "maximally_coherent", "parse_state_spec", "random_incoherent_kraus",
    "random_x_spec", "rep_cyclic", "rep_swap", "werner",
    "SdpProblem", "SdpSolution", "SolverError", "SolverOptions",
    "encode_asymmetry_weight", "encode_asymmetry_weight_dual",
    "encode_coherence_weight", "encode_coherence_weight_dual",
    "encode_robustness", "map_apply", "solve",
    "MeasureReport", "asymmetry_weight", "coherence_weight", "hs_lower_bound",
    "l1_coherence", "negating_phases", "qubit_cw_oracle",
    "rel_entropy_asymmetry", "rel_entropy_coherence", "robustness_asymmetry",
    "robustness_coherence", "swap_ar_oracle", "swap_aw_oracle",
    "witness_evaluate",
    "ExperimentConfig", "ExperimentResult", "run_closed_forms",
    "run_experiment", "run_property_suite", "run_scatter",
    "run_violation_search",
]
