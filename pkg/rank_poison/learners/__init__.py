"""
Victim learners: UCB, PBM-UCB and CascadeUCB behind one choose/update interface.
"""
from typing import Optional

import numpy as np

from ..schemas.enums import LearnerKind
from .base import Learner, LearnerState, init_action, init_rounds, learner_update, top_k
from .cascade_ucb import CascadeUCBLearner, cascade_ucb_choose
from .pbm_ucb import BIAS_CORRECTED, PLAIN, PBMUCBLearner, pbm_ucb_choose, pbm_ucb_index
from .ucb import UCBLearner, ucb_choose, ucb_index

LEARNERS = {
    LearnerKind.UCB: UCBLearner,
    LearnerKind.PBM_UCB: PBMUCBLearner,
    LearnerKind.CASCADE_UCB: CascadeUCBLearner,
}


def build_learner(
    kind: LearnerKind,
    num_items: int,
    list_len: int = 1,
    epsilon: float = 0.0,
    kappa: Optional[np.ndarray] = None,
    pbm_mean: str = BIAS_CORRECTED,
) -> Learner:
    """Instantiate a fresh learner of the given kind."""
    if kind == LearnerKind.PBM_UCB:
        return PBMUCBLearner(num_items, list_len, epsilon=epsilon, kappa=kappa, mean_estimator=pbm_mean)
    return LEARNERS[kind](num_items, list_len, epsilon=epsilon, kappa=kappa)


__all__ = [
    "BIAS_CORRECTED",
    "PLAIN",
    "CascadeUCBLearner",
    "Learner",
    "LearnerState",
    "LEARNERS",
    "PBMUCBLearner",
    "UCBLearner",
    "build_learner",
    "cascade_ucb_choose",
    "init_action",
    "init_rounds",
    "learner_update",
    "pbm_ucb_choose",
    "pbm_ucb_index",
    "top_k",
    "ucb_choose",
    "ucb_index",
]
