import math
from typing import Optional

import numpy as np

from ..schemas.enums import ClickModel
from .base import Learner, LearnerState, init_action, init_rounds, top_k

BIAS_CORRECTED = "bias_corrected"
PLAIN = "plain"


def pbm_ucb_index(state: LearnerState, mean_estimator: str = BIAS_CORRECTED) -> np.ndarray:
    """Index mu_hat_a + sqrt(N_a (1 + eps) log t / (2 Ntilde_a^2)).

    With ``mean_estimator="bias_corrected"`` the mean is S_a / Ntilde_a, the unbiased
    attractiveness estimate of PBM-UCB; ``"plain"`` uses S_a / N_a, the same average the
    attacker's ledger keeps. Items never shown get +inf.
    """
    ledger = state.ledger
    pulls = ledger.pulls.astype(np.float64)
    weighted = ledger.kappa_pulls
    log_t = math.log(state.round)
    index = np.full(ledger.num_items, np.inf)
    seen = weighted > 0
    denominator = weighted[seen] if mean_estimator == BIAS_CORRECTED else pulls[seen]
    mean = ledger.post_sum[seen] / denominator
    bonus = np.sqrt(pulls[seen] * (1.0 + state.epsilon) * log_t / (2.0 * weighted[seen] ** 2))
    index[seen] = mean + bonus
    return index


def pbm_ucb_choose(
    state: LearnerState,
    kappa: np.ndarray,
    mean_estimator: str = BIAS_CORRECTED,
) -> np.ndarray:
    """List of round ``state.round``, best index at position 0.

    ``kappa`` only fixes K here; the examination probabilities reach the index through the
    bias-corrected counts the update rule accumulates.
    """
    list_len = len(kappa)
    num_items = state.ledger.num_items
    t = state.round
    if t <= init_rounds(num_items, list_len):
        return init_action(num_items, list_len, t)
    return top_k(pbm_ucb_index(state, mean_estimator), list_len)


class PBMUCBLearner(Learner):
    """PBM-UCB with known examination probabilities"""
    kind = ClickModel.POSITION_BASED

    def __init__(self, num_items: int, list_len: int, epsilon: float = 0.0,
                 kappa: Optional[np.ndarray] = None, mean_estimator: str = BIAS_CORRECTED):
        if kappa is None:
            kappa = np.ones(list_len)
        super().__init__(num_items, list_len, epsilon=epsilon, kappa=kappa)
        self.mean_estimator = mean_estimator

    def _choose(self) -> np.ndarray:
        return pbm_ucb_choose(self.state, self.kappa, self.mean_estimator)
