"""Weil-Petersson volume polynomials, their aggregates and inequalities."""

from ._kernel import COMPILED_AVAILABLE, COMPILED_MAX_DEGREE, default_backend, make_engine
from .asymptotics import (
    asymptotic_ratio,
    conjectured_alpha,
    estimate_alpha,
    alpha_sequence,
    log_volume,
    mz_estimate,
    volume_ratio,
)
from .cache import DEFAULT_BUDGET, VolumeCache, default_cache_path
from .core import default_cache, in_budget, set_default_cache, volume_polynomial, volume_value, w_r
from .inequalities import (
    partition_volume_sum,
    sandwich,
    sinh_upper_bound,
    verify_sandwich,
    verify_sinh_upper,
    verify_sum_vol_bound,
    verify_volume_ratios,
    wr_pair_sum,
)
from .polynomial import VolumePoly

__all__ = [
    "COMPILED_AVAILABLE",
    "COMPILED_MAX_DEGREE",
    "DEFAULT_BUDGET",
    "VolumeCache",
    "VolumePoly",
    "alpha_sequence",
    "asymptotic_ratio",
    "conjectured_alpha",
    "default_backend",
    "default_cache",
    "default_cache_path",
    "estimate_alpha",
    "in_budget",
    "log_volume",
    "make_engine",
    "mz_estimate",
    "partition_volume_sum",
    "sandwich",
    "set_default_cache",
    "sinh_upper_bound",
    "verify_sandwich",
    "verify_sinh_upper",
    "verify_sum_vol_bound",
    "verify_volume_ratios",
    "volume_polynomial",
    "volume_ratio",
    "volume_value",
    "w_r",
]
