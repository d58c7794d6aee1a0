"""
Core package containing configuration, logging, errors and shared numerics.
"""

from .config import settings  # noqa
from .logger import get_logger, setup_logging  # noqa
from .stats import (
    ArmLedger,
    ArmStats,
    BetaParams,
    beta,
    beta_array,
    clamp_plus,
    empirical_means,
)  # noqa
from .rng import bernoulli, rng_stream  # noqa

__all__ = [
    "settings",
    "get_logger",
    "setup_logging",
    "ArmLedger",
    "ArmStats",
    "BetaParams",
    "beta",
    "beta_array",
    "clamp_plus",
    "empirical_means",
    "bernoulli",
    "rng_stream",
]
