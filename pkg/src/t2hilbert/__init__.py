"""Exact Hilbert series and Laurent coefficients for symplectic quotients by a 2-torus."""
from .congruence import count_congruence_solutions, count_root_pairs, smith_normal_form
from .gammas import gamma0, gamma2, gamma_off
from .hilbert import analyze, hilbert_off, hilbert_on
from .oracle import invariant_dimension, oracle_series, perturbation_gamma
from .series import HilbertSeries, LaurentExpansion, laurent_at_one
from .weights import (
    WeightMatrix,
    classify,
    faithfulness,
    minor_table,
    parse_matrix,
    shell_support,
    to_standard_form,
    try_genericize,
)

__version__ = "0.1.0"
