from enum import Enum


class ClickModel(str, Enum):
    """Enum for click model kinds."""
    SINGLE_ARM = "single_arm"
    POSITION_BASED = "pbm"
    CASCADE = "cascade"


class LearnerKind(str, Enum):
    """Enum for victim learners."""
    UCB = "ucb"
    PBM_UCB = "pbm_ucb"
    CASCADE_UCB = "cascade_ucb"


class AttackStrategy(str, Enum):
    """Enum for attacker strategies."""
    UCB_ATTACK = "ucb_attack"
    PBM_ATTACK = "pbm_attack"
    CASCADE_ATTACK = "cascade_attack"
    GENERAL_ATTACK = "general_attack"
    TRIVIAL1 = "trivial1"
    TRIVIAL_K = "trivialK"
    MODIFIED_JUN = "modified_jun"
    NONE = "none"


class SweepParam(str, Enum):
    """Enum for one-dimensional sweep parameters."""
    MU_TARGET = "mu_target"
    DELTA0 = "delta0"
    MEAN_RANGE = "x"
    EPSILON = "epsilon"


class OutputFormat(str, Enum):
    """Enum for result file formats."""
    CSV = "csv"
    JSON = "json"
    PLOT = "plot"


LEARNER_FOR_MODEL = {
    ClickModel.SINGLE_ARM: LearnerKind.UCB,
    ClickModel.POSITION_BASED: LearnerKind.PBM_UCB,
    ClickModel.CASCADE: LearnerKind.CASCADE_UCB,
}

ALL_MODELS = frozenset(ClickModel)

# Click models each strategy can attack.
STRATEGY_MODELS = {
    AttackStrategy.UCB_ATTACK: frozenset({ClickModel.SINGLE_ARM}),
    AttackStrategy.PBM_ATTACK: frozenset({ClickModel.POSITION_BASED}),
    AttackStrategy.CASCADE_ATTACK: frozenset({ClickModel.CASCADE}),
    AttackStrategy.MODIFIED_JUN: frozenset({ClickModel.SINGLE_ARM}),
    AttackStrategy.GENERAL_ATTACK: ALL_MODELS,
    AttackStrategy.TRIVIAL1: ALL_MODELS,
    AttackStrategy.TRIVIAL_K: ALL_MODELS,
    AttackStrategy.NONE: ALL_MODELS,
}

# Strategies whose conservative inequality is audited.
CONSERVATIVE_STRATEGIES = frozenset({
    AttackStrategy.UCB_ATTACK,
    AttackStrategy.PBM_ATTACK,
    AttackStrategy.CASCADE_ATTACK,
})
