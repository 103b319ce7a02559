"""Exact Hilbert-Kunz density functions and multiplicities of graded rings mod p."""

from .curvehn import (
    HNData,
    RefinedHNData,
    TrinomialClassification,
    classify_trinomial,
    congruence_agreement,
    density_from_hn,
    ehk_inf_segre_curves,
    finf_from_hn,
)
from .densityfn import (
    ConvergenceReport,
    StepFunction,
    convergence_report,
    density_function,
    ehk_estimate,
    integrate,
    sup_norm_diff,
)
from .errors import *  # noqa: F401,F403
from .exactalg import PrimeFieldElement, SparseColumnMatrix, rank, reduce_integer_poly
from .gradedring import (
    GradedPresentation,
    HilbertData,
    ModPFiber,
    colength,
    find_n0,
    fit_hilbert_data,
    frobenius_power,
    graded_piece_dim,
    hilbert_function_prefix,
    polynomial_ring,
)
from .hilbertpoly import BinomialPolynomial, cokernel_hp, from_values, twist_difference_hp
from .piecewise import Piece, PiecewisePolynomial
from .polynomial import Polynomial
from .segre import (
    HSDensity,
    has_linear_generator,
    hs_density,
    hs_partial,
    segre_density_finite,
    segre_density_limit,
)

__version__ = "0.1.0"
