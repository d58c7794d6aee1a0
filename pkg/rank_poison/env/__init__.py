"""
Ground-truth click environments.
"""

from .click_models import (
    build_env,
    check_action,
    default_kappa,
    draw_feedback,
    feasible,
    observed_count,
)

__all__ = [
    "build_env",
    "check_action",
    "default_kappa",
    "draw_feedback",
    "feasible",
    "observed_count",
]
