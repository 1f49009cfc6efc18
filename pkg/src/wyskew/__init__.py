"""Wigner-Yanase skew information as an entanglement-depth witness for
multi-qubit states."""

__version__ = "0.1.0"

from .bounds import (
    bound_table,
    e_k,
    gen_ghz_detection_threshold,
    gen_ghz_value,
    lambda_bracket_check,
    lambda_threshold,
    werner_closed_form,
    werner_separability_threshold,
)
from .classify import attainment_state, classify
from .observables import local_sum_operator, pauli, spin_from_bloch
from .optimize import OptimizerConfig, evaluate_at, nonlocal_skew_information
from .skew import pure_state_skew, skew_information, skew_information_commutator
from .states import (
    DensityMatrix,
    PureState,
    WernerGhzParams,
    generalized_ghz,
    ghz_state,
    werner_ghz,
)
