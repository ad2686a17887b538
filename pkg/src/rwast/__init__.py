"""Randomly weighted averages of interval beta laws and the additive
Stieltjes transform E[(1 - zX)^(-d)] used to identify their distributions."""

from .distributions import (
    CompositionSpec,
    IntervalBeta,
    PowerSemicircleParams,
    WeightVector,
    arcsine,
    dirichlet_sample,
    order_statistic_weights,
    ps_to_beta,
    uniform,
    wigner,
)
from .errors import ConvergenceError, DomainError
from .rng import make_rng
from .rwa import RwaProblem, TheoremPrediction, ast_product, predict_distribution, sample_rwa
from .transforms import (
    AstQuery,
    AstValue,
    ast,
    ast_closed_general,
    ast_closed_symmetric,
    ast_moment_series,
    ast_quadrature,
)
from .verification import VerificationReport, VerifyConfig, verify_theorem

__all__ = [
    "AstQuery",
    "AstValue",
    "CompositionSpec",
    "ConvergenceError",
    "DomainError",
    "IntervalBeta",
    "PowerSemicircleParams",
    "RwaProblem",
    "TheoremPrediction",
    "VerificationReport",
    "VerifyConfig",
    "WeightVector",
    "arcsine",
    "ast",
    "ast_closed_general",
    "ast_closed_symmetric",
    "ast_moment_series",
    "ast_product",
    "ast_quadrature",
    "dirichlet_sample",
    "make_rng",
    "order_statistic_weights",
    "predict_distribution",
    "ps_to_beta",
    "sample_rwa",
    "uniform",
    "verify_theorem",
    "wigner",
]
