"""Regression, interval estimation and resampling."""

from .design import INTERCEPT, DesignMatrix, encode_fixed_effects, intercept_only, prune_collinear
from .intervals import (
    BootstrapDifference,
    IntervalEstimate,
    binomial_ci,
    bootstrap_difference,
    bootstrap_mean_ci,
    bootstrap_means,
    odds_ratio,
)
from .regression import (
    FitResult,
    fit_logistic,
    fit_ols,
    likelihood_ratio_test,
    lr_statistic,
    standardized_coefficients,
    vif,
)
from .rng import SplitMix64, derive_seed

__all__ = [
    "INTERCEPT",
    "BootstrapDifference",
    "DesignMatrix",
    "FitResult",
    "IntervalEstimate",
    "SplitMix64",
    "binomial_ci",
    "bootstrap_difference",
    "bootstrap_mean_ci",
    "bootstrap_means",
    "derive_seed",
    "encode_fixed_effects",
    "fit_logistic",
    "fit_ols",
    "intercept_only",
    "likelihood_ratio_test",
    "lr_statistic",
    "odds_ratio",
    "prune_collinear",
    "standardized_coefficients",
    "vif",
]
