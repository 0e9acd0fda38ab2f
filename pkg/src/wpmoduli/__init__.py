"""Exact Weil-Petersson volumes and length statistics of random hyperbolic surfaces."""

from .errors import BudgetError, DomainError, InvariantError, WPError
from .exactring import QPiNumber, from_text, qpi_eval, to_text
from .expectations import (
    ASYMPTOTIC,
    EXACT,
    ExpectationResult,
    ThresholdProfile,
    TopologySplit,
    expected_count,
    expected_pair_disjoint,
    prob_no_short_handle_bound,
    prob_upper_L1,
    threshold_L,
)
from .volumes import COMPILED_AVAILABLE, VolumeCache, VolumePoly, volume_polynomial, volume_value

__version__ = "0.1.0"

__all__ = [
    "ASYMPTOTIC",
    "COMPILED_AVAILABLE",
    "EXACT",
    "BudgetError",
    "DomainError",
    "ExpectationResult",
    "InvariantError",
    "QPiNumber",
    "ThresholdProfile",
    "TopologySplit",
    "VolumeCache",
    "VolumePoly",
    "WPError",
    "expected_count",
    "expected_pair_disjoint",
    "from_text",
    "prob_no_short_handle_bound",
    "prob_upper_L1",
    "qpi_eval",
    "threshold_L",
    "to_text",
    "volume_polynomial",
    "volume_value",
]
