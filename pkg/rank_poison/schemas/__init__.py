"""
Schemas package containing the domain types of the simulator.
"""

from .enums import (
    AttackStrategy,
    ClickModel,
    LearnerKind,
    OutputFormat,
    SweepParam,
)
from .env import EnvModel, Feedback
from .attack import AttackConfig
from .experiment import (
    AttackSpec,
    EnvSpec,
    ExperimentSpec,
    InlineMeans,
    MovieLensMeans,
    SweepSpec,
    UniformMeans,
)
from .results import (
    AttackAudit,
    BoundChecks,
    BoundSnapshot,
    InstanceInfo,
    Metrics,
    RoundRecord,
    RunFinal,
    Summary,
)

__all__ = [
    # Enums
    "AttackStrategy",
    "ClickModel",
    "LearnerKind",
    "OutputFormat",
    "SweepParam",

    # Environment
    "EnvModel",
    "Feedback",

    # Attack
    "AttackConfig",

    # Experiment
    "AttackSpec",
    "EnvSpec",
    "ExperimentSpec",
    "InlineMeans",
    "MovieLensMeans",
    "SweepSpec",
    "UniformMeans",

    # Results
    "AttackAudit",
    "BoundChecks",
    "BoundSnapshot",
    "InstanceInfo",
    "Metrics",
    "RoundRecord",
    "RunFinal",
    "Summary",
]
